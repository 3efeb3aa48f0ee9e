#pragma once

#include "scenetext/charmodel.hpp"
#include "scenetext/config.hpp"
#include "scenetext/image.hpp"
#include "scenetext/imgproc.hpp"
#include "scenetext/labeling.hpp"
#include "scenetext/regions.hpp"

#include <array>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace scenetext;

struct Rgb {
    std::uint8_t r, g, b;
};

// ---- synthetic scenes ------------------------------------------------------

ImageU8 canvas(int w, int h, Rgb color);

/// 5x7 bitmap for one of A-Z, 0-9; every glyph is one 8-connected component.
const std::array<const char*, 7>& glyph_rows(char c);
bool has_glyph(char c);

/// Draws one glyph at integer scale; reports ink into `ink` when given.
/// Returns the glyph's tight bbox.
Rect draw_glyph(ImageU8& img, char c, int x, int y, int scale, Rgb color, PixelMask* ink);

struct Scene {
    ImageU8 rgb;
    PixelMask ink;                       // ground-truth text mask (pre-blur)
    std::vector<PixelMask> glyph_masks;  // one per rendered glyph
    std::vector<Rect> word_boxes;        // one per rendered word
};

struct WordSpec {
    std::string text;
    int x = 0;
    int y = 0;
    Rgb color{0, 0, 0};
    bool use_color = false;  // otherwise SceneOptions.fg
};

struct SceneOptions {
    int width = 320;
    int height = 200;
    int scale = 6;  // pixels per font cell; stroke width == scale
    int advance = 0;  // glyph-to-glyph advance in pixels; 0 = 6*scale
    Rgb fg{40, 40, 40};
    Rgb bg{215, 215, 215};
    double blur_sigma = 0.0;
    double noise_sigma = 0.0;  // additive Gaussian after the blur
    unsigned noise_seed = 1;
    double post_blur = 0.0;    // mild smoothing after the noise
    int clutter = 0;           // number of non-text shapes
    unsigned clutter_seed = 1;
    // A sharp checkerboard block drawn after the blur; anchors the gradient
    // normalization the way sharp structure in a real photo does.
    bool sharp_anchor = false;
};

Scene render_scene(const std::vector<WordSpec>& words, const SceneOptions& opt);

/// Text-free image with the same kinds of clutter shapes.
ImageU8 texture_image(unsigned seed, int w = 320, int h = 200, int shapes = 8);

ImageU8 gaussian_blur(const ImageU8& img, double sigma);

ImageU8 replicate3(const ImageU8& gray);
ImageU8 invert(const ImageU8& img);

// ---- independent oracles ---------------------------------------------------

namespace oracle {

/// O(N^2) nearest-non-member scan; pixels outside the image are non-members.
ImageF brute_distance(const PixelMask& mask);

/// Exhaustive minimum of the labeling energy over all 2^n labelings.
double brute_min_energy(const RegionGraph& graph, std::vector<int>* best = nullptr);

/// Literal sliding-window evaluation of the self-guided filter equations.
ImageF naive_guided(const ImageF& img, int radius, double epsilon);

/// 8-connected components of the level set {pixel <= t}.
std::vector<std::vector<std::int32_t>> level_components(const ImageU8& img, int t);

/// Smoothed histogram exactly as the library defines it, recomputed by hand.
std::vector<double> hand_smoothed(const std::vector<long>& counts);

}  // namespace oracle

/// Deterministic RNG for property tests.
inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

PixelMask random_mask(std::mt19937& gen, int w, int h, double density);

/// Region wrapper around a mask (for feeding cue computations directly).
Region make_region(const PixelMask& mask);

/// A deterministic two-word training/eval scene with clutter shapes.
Scene training_scene(unsigned seed);

/// Pipeline settings tuned for the rendered fixture dataset (documented
/// deviations from the defaults: area bounds, stability and harvest windows
/// sized for 6px-scale glyphs).
scenetext::PipelineConfig fixture_config();

/// Harvests `n_images` deterministic scenes and trains a characterness model
/// with fixture_config().
scenetext::CharacternessModel train_fixture_model(int n_images, unsigned seed0);

}  // namespace testutil
