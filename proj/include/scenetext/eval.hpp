#pragma once

#include "scenetext/image.hpp"

#include <array>
#include <vector>

namespace scenetext {

struct PRPoint {
    double precision = 1;
    double recall = 0;
};

/// One (precision, recall) pair per threshold T in 0..255.
struct PRCurve {
    std::array<PRPoint, 256> points;
};

struct PRF {
    double precision = 0;
    double recall = 0;
    double fmeasure = 0;
};

/// Segmentation mask {pixel >= T} of an 8-bit map.
PixelMask binarize(const ImageU8& map, double threshold);

/// Precision/recall of {map >= T} against gt for every T in 0..255.
/// An empty mask has precision 1 by convention. Throws on empty gt or a
/// dimension mismatch.
PRCurve pr_curve(const ImageU8& map, const PixelMask& gt);

struct AdaptiveResult {
    PRF prf;
    double threshold = 0;   // 2 * mean(map), clamped to 255
    PixelMask segmentation;
};

/// F-measure at the adaptive threshold T = 2 * mean saliency, with
/// F = (beta2+1)PR / (beta2*P + R).
AdaptiveResult adaptive_fmeasure(const ImageU8& map, const PixelMask& gt, double beta2 = 0.3);

/// |a n b| / |a u b|. Throws when both masks are empty.
double voc_overlap(const PixelMask& a, const PixelMask& b);

struct Box {
    int x = 0, y = 0, w = 0, h = 0;
    bool operator==(const Box&) const = default;
};

double box_iou(const Box& a, const Box& b);

/// Greedy one-to-one best matching at IoU >= threshold.
/// P = matches/|pred|, R = matches/|gt|, F = harmonic mean. An empty pred
/// set has precision 1; an empty gt set has recall 1.
PRF box_prf(const std::vector<Box>& pred, const std::vector<Box>& gt, double iou_threshold);

/// Pointwise arithmetic mean of per-image curves. Requires >= 1 curve.
PRCurve mean_curve(const std::vector<PRCurve>& curves);

/// Fieldwise arithmetic mean. Requires >= 1 entry.
PRF mean_prf(const std::vector<PRF>& values);

}  // namespace scenetext
