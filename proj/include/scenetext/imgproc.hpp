#pragma once

#include "scenetext/image.hpp"

namespace scenetext {

/// Self-guided He-style guided filter on a 1-channel image in [0,255].
/// radius is the local window radius; epsilon the regularizer on the
/// [0,255] intensity scale. Constant images are fixed points.
/// Throws if the window cannot fit the image at all.
ImageF guided_filter(const ImageF& img, int radius, double epsilon);

/// Central-difference gradient magnitude (one-sided at borders), linearly
/// rescaled so the maximum maps to 255. An all-zero map stays zero.
ImageF gradient_magnitude(const ImageF& img);

/// Raw central-difference gradient magnitude, no rescaling.
ImageF gradient_magnitude_raw(const ImageF& img);

struct EdgeMap {
    PixelMask mask;
    /// Edge-pixel orientation in [0, 2*pi): direction of steepest intensity
    /// descent (points from a bright region toward its dark surround).
    /// Only meaningful where mask is set.
    ImageF theta;
};

/// Canny edges: Sobel gradient, 4-direction non-maximum suppression,
/// hysteresis with strong >= high and weak >= low (8-connected linking).
/// Requires 0 < low < high.
EdgeMap canny_edges(const ImageF& img, double low, double high);

/// Otsu threshold of a nonnegative real map, computed over a 256-bin
/// histogram spanning [0, max]. Returns 0 for a constant map.
double otsu_threshold(const ImageF& img);

/// Exact Euclidean distance from each member pixel to the nearest
/// non-member pixel center; pixels outside the image count as non-members.
/// Non-member pixels get 0.
ImageF distance_transform(const PixelMask& mask);

/// Zhang-Suen iterative thinning. The result is a subset of the input and
/// is stable under a second application.
PixelMask skeletonize(const PixelMask& mask);

}  // namespace scenetext
