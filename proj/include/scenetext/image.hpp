#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scenetext {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    int area() const { return w * h; }
    bool operator==(const Rect&) const = default;
};

/// Union of two rects (empty rects are absorbed).
Rect rect_union(const Rect& a, const Rect& b);

/// Intersection-over-union of two axis-aligned rects.
double rect_iou(const Rect& a, const Rect& b);

/// Row-major interleaved raster. channels is 1 (intensity) or 3 (RGB).
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels = 1, T fill = T{})
        : width_(width), height_(height), channels_(channels),
          data_(static_cast<size_t>(width) * height * channels, fill) {
        if (width < 0 || height < 0 || (channels != 1 && channels != 3))
            throw std::invalid_argument("Image: bad dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& at(int x, int y, int c = 0) {
        return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
    }
    const T& at(int x, int y, int c = 0) const {
        return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_size(int w, int h) const { return width_ == w && height_ == h; }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<T> data_;
};

using ImageU8 = Image<std::uint8_t>;
using ImageF = Image<float>;

/// Boolean raster with the same dimensions as its source image.
class PixelMask {
public:
    PixelMask() = default;
    PixelMask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          bits_(static_cast<size_t>(width) * height, fill ? 1 : 0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return bits_.empty(); }

    bool at(int x, int y) const { return bits_[static_cast<size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool v = true) { bits_[static_cast<size_t>(y) * width_ + x] = v ? 1 : 0; }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

    /// Number of member pixels.
    int count() const;

    bool operator==(const PixelMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Moment-equivalent ellipse summary of a pixel set.
/// major_axis_len >= minor_axis_len >= 0, orientation in [0, pi).
struct RegionGeometry {
    int area = 0;
    double centroid_x = 0;
    double centroid_y = 0;
    Rect bbox;
    double major_axis_len = 0;
    double minor_axis_len = 0;
    double orientation = 0;

    /// Major + minor axis length; used as the proximity scale between regions.
    double characteristic_scale() const { return major_axis_len + minor_axis_len; }
};

/// ITU-R BT.601 weighted intensity, rounded to nearest.
ImageU8 to_intensity(const ImageU8& rgb);

ImageF to_float(const ImageU8& img);

/// Quantize a real map to 8 bits. When rescale is set, [min,max] maps to
/// [0,255] (constant maps go to 0); otherwise values are clamped.
ImageU8 to_u8(const ImageF& img, bool rescale = false);

/// Centroid, bounding box and ellipse axes from second-order central moments.
/// Throws on an empty mask.
RegionGeometry region_geometry(const PixelMask& mask);

/// 8-connected components of the mask, as per-component masks.
std::vector<std::vector<std::int32_t>> connected_components(const PixelMask& mask);

/// Mask from a list of linear pixel indices.
PixelMask mask_from_pixels(const std::vector<std::int32_t>& pixels, int width, int height);

/// Mask intersection-over-union. Throws if both are empty.
double mask_iou(const PixelMask& a, const PixelMask& b);

}  // namespace scenetext
