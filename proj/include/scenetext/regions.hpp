#pragma once

#include "scenetext/image.hpp"
#include "scenetext/imgproc.hpp"

#include <cstdint>
#include <vector>

namespace scenetext {

enum class Polarity { DarkOnBright, BrightOnDark };

struct MserParams {
    int delta = 10;               // stability window in intensity units
    int min_area = 30;            // absolute pixels
    double max_area_frac = 0.25;  // fraction of image area
    double max_variation = 0.5;
    double min_diversity = 0.2;   // nested emissions closer in size than this keep only the stabler
    double gamma = 0.5;           // weight on the gradient map in preprocessing
};

/// A connected extremal region selected by the detector.
struct Region {
    Polarity polarity = Polarity::DarkOnBright;
    /// Threshold at which the region was selected, in the detection image
    /// (already inverted for BrightOnDark passes).
    int source_threshold = 0;
    std::vector<std::int32_t> pixels;  // linear indices, ascending
    Rect bbox;
    RegionGeometry geometry;
    int image_width = 0;
    int image_height = 0;

    PixelMask make_mask() const;
    /// Mask cropped to the bounding box, optionally padded by `pad`
    /// non-member pixels on every side.
    PixelMask make_local_mask(int pad = 0) const;
};

/// I* = I + gamma * grad (DarkOnBright) or I - gamma * grad (BrightOnDark),
/// clamped to [0,255]. grad must be normalized to [0,255] and match img's
/// dimensions.
ImageU8 emser_preprocess(const ImageU8& img, const ImageF& grad, double gamma, Polarity pol);

/// Maximally stable extremal regions of the 256-level component tree
/// (union-find flooding, 8-connected regions). Stability of a region at
/// threshold t is |R(t+delta) \ R(t-delta)| / |R(t)|; a region is emitted at
/// a local minimum of that quantity, subject to max_variation and the area
/// bounds. BrightOnDark runs on the inverted image.
std::vector<Region> mser_detect(const ImageU8& img, const MserParams& params, Polarity pol);

struct ExtractParams {
    MserParams mser;
    int guided_radius = 1;
    double guided_epsilon = 650.25;  // (0.1 * 255)^2
    double dedup_iou = 0.9;
};

/// Full candidate extraction: intensity conversion, guided filtering,
/// gradient map, both preprocessed polarity passes, then cross-polarity
/// dedup (the later of two regions with mask IoU > dedup_iou is dropped).
/// Results are sorted by area, then centroid.
std::vector<Region> extract_candidates(const ImageU8& rgb, const ExtractParams& params);

}  // namespace scenetext
