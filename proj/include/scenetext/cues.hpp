#pragma once

#include "scenetext/image.hpp"
#include "scenetext/imgproc.hpp"
#include "scenetext/regions.hpp"

#include <array>
#include <optional>
#include <vector>

namespace scenetext {

struct StrokeWidthStats {
    double mean = 0;      // E(l) over skeleton samples
    double variance = 0;  // population Var(l)
    int samples = 0;
};

/// The per-region cue triple. sw >= 0, pd >= 0, ehog in [0,1].
struct CueVector {
    double sw = 0;
    double pd = 0;
    double ehog = 0;
};

/// Per-channel color histogram, normalized to sum 1 after smoothing.
struct ColorHistogram {
    int bins = 0;
    std::array<std::vector<double>, 3> p;
};

/// Smoothed normalized histogram over [lo, hi].
struct Histogram {
    double lo = 0;
    double hi = 0;
    std::vector<double> p;
};

/// Edge-pixel counts per quantized orientation type.
/// Type 1: theta <= pi/4 or theta > 7pi/4; Type 2: (pi/4, 3pi/4];
/// Type 3: (3pi/4, 5pi/4]; Type 4: (5pi/4, 7pi/4].
struct EdgeTypeCounts {
    long w1 = 0, w2 = 0, w3 = 0, w4 = 0;
    long total() const { return w1 + w2 + w3 + w4; }
};

struct CueParams {
    int pd_bins = 16;
    int swd_bins = 16;
    double beta = 0.5;      // SWD weight in the unified divergence
    double cd_scale = 1.0;  // CD divisor before combining; 1 = raw LAB distance
};

/// Stroke widths sampled at skeleton pixels: distance-transform values of
/// the region mask at its skeleton. Empty skeleton -> nullopt (the region
/// is degenerate and is scored as background).
std::optional<StrokeWidthStats> stroke_width_stats(const Region& region);

/// SW(r) = Var(l) / E(l)^2. Throws when mean <= 0.
double cue_sw(const StrokeWidthStats& stats);

/// Smoothed per-channel histogram of the region's colors. Counts get +eps
/// with eps = 1/(total+bins) before normalization.
ColorHistogram color_histogram(const ImageU8& rgb, const std::vector<std::int32_t>& pixels, int bins);

/// Perceptual divergence: summed per-channel KLD between the region's color
/// histogram and its bounding-box surround. A region filling its box falls
/// back to a 1-pixel box dilation; a region filling the image scores 0.
double cue_pd(const ImageU8& rgb, const Region& region, int bins);

EdgeTypeCounts edge_type_counts(const Region& region, const EdgeMap& edges);

/// eHOG = sqrt((w1-w3)^2 + (w2-w4)^2) / sum(w). Throws on a zero total.
double cue_ehog(const EdgeTypeCounts& counts);

/// Regions with no edge pixels are degenerate -> nullopt.
std::optional<double> cue_ehog(const Region& region, const EdgeMap& edges);

/// Distance-transform values over all region pixels (not just the skeleton).
std::vector<double> stroke_width_values(const Region& region);

/// Histogram of values over [0, hi], smoothed and normalized.
Histogram make_histogram(const std::vector<double>& values, int bins, double hi);

Histogram stroke_width_histogram(const Region& region, int bins, double hi);

/// Discrete KLD(a || b) of two smoothed histograms with the same layout.
/// Throws on a bin-layout mismatch. >= 0, and 0 iff identical.
double divergence_kld(const Histogram& a, const Histogram& b);
double divergence_swd(const Histogram& a, const Histogram& b);

/// SWD of two regions with a shared bin layout over [0, max(l) of the pair].
double pairwise_swd(const Region& a, const Region& b, int bins);

/// L2 distance of the regions' average colors in LAB (D65).
double divergence_cd(const ImageU8& rgb, const Region& a, const Region& b);

/// UD = beta*swd + (1-beta)*cd. Inputs are expected to be pre-scaled to
/// comparable ranges.
double divergence_ud(double swd, double cd, double beta);

/// sRGB (8-bit) to CIELAB under D65.
std::array<double, 3> srgb_to_lab(double r, double g, double b);

/// Everything later stages need per candidate region.
struct RegionFeatures {
    std::optional<CueVector> cues;       // nullopt for degenerate regions
    std::vector<double> stroke_widths;   // dt over all region pixels
    std::array<double, 3> mean_lab{};
    double skeleton_len = 0;             // skeleton pixel count
};

RegionFeatures compute_region_features(const ImageU8& rgb, const Region& region,
                                       const EdgeMap& edges, const CueParams& params);

}  // namespace scenetext
