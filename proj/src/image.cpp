#include "scenetext/image.hpp"

#include <algorithm>
#include <cmath>

namespace scenetext {

Rect rect_union(const Rect& a, const Rect& b) {
    if (a.w <= 0 || a.h <= 0) return b;
    if (b.w <= 0 || b.h <= 0) return a;
    const int x0 = std::min(a.x, b.x);
    const int y0 = std::min(a.y, b.y);
    const int x1 = std::max(a.x + a.w, b.x + b.w);
    const int y1 = std::max(a.y + a.h, b.y + b.h);
    return {x0, y0, x1 - x0, y1 - y0};
}

double rect_iou(const Rect& a, const Rect& b) {
    const int ix0 = std::max(a.x, b.x);
    const int iy0 = std::max(a.y, b.y);
    const int ix1 = std::min(a.x + a.w, b.x + b.w);
    const int iy1 = std::min(a.y + a.h, b.y + b.h);
    const long inter = std::max(0, ix1 - ix0) * static_cast<long>(std::max(0, iy1 - iy0));
    const long uni = static_cast<long>(a.area()) + b.area() - inter;
    return uni > 0 ? static_cast<double>(inter) / uni : 0.0;
}

int PixelMask::count() const {
    int n = 0;
    for (auto b : bits_) n += b;
    return n;
}

ImageU8 to_intensity(const ImageU8& rgb) {
    if (rgb.channels() != 3) throw std::invalid_argument("to_intensity: 3-channel input required");
    ImageU8 out(rgb.width(), rgb.height(), 1);
    for (int y = 0; y < rgb.height(); ++y) {
        for (int x = 0; x < rgb.width(); ++x) {
            // ITU-R BT.601
            const double v = 0.299 * rgb.at(x, y, 0) + 0.587 * rgb.at(x, y, 1) + 0.114 * rgb.at(x, y, 2);
            out.at(x, y) = static_cast<std::uint8_t>(std::lround(v));
        }
    }
    return out;
}

ImageF to_float(const ImageU8& img) {
    ImageF out(img.width(), img.height(), img.channels());
    for (size_t i = 0; i < img.size(); ++i) out.data()[i] = img.data()[i];
    return out;
}

ImageU8 to_u8(const ImageF& img, bool rescale) {
    ImageU8 out(img.width(), img.height(), img.channels());
    float lo = 0, hi = 255;
    if (rescale) {
        lo = hi = img.empty() ? 0.f : img.data()[0];
        for (size_t i = 0; i < img.size(); ++i) {
            lo = std::min(lo, img.data()[i]);
            hi = std::max(hi, img.data()[i]);
        }
    }
    const double span = hi > lo ? hi - lo : 1.0;
    for (size_t i = 0; i < img.size(); ++i) {
        double v = img.data()[i];
        v = rescale ? (v - lo) / span * 255.0 : v;
        out.data()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
    return out;
}

RegionGeometry region_geometry(const PixelMask& mask) {
    long n = 0;
    double sx = 0, sy = 0;
    int x0 = mask.width(), y0 = mask.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            ++n;
            sx += x;
            sy += y;
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
        }
    }
    if (n == 0) throw std::invalid_argument("region_geometry: empty mask");

    RegionGeometry g;
    g.area = static_cast<int>(n);
    g.centroid_x = sx / n;
    g.centroid_y = sy / n;
    g.bbox = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};

    double mxx = 0, myy = 0, mxy = 0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (!mask.at(x, y)) continue;
            const double dx = x - g.centroid_x;
            const double dy = y - g.centroid_y;
            mxx += dx * dx;
            myy += dy * dy;
            mxy += dx * dy;
        }
    }
    mxx /= n;
    myy /= n;
    mxy /= n;

    // Eigenvalues of the covariance; axes as the moment-equivalent ellipse.
    const double tr = mxx + myy;
    const double det = mxx * myy - mxy * mxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    const double l1 = tr / 2 + disc;
    const double l2 = std::max(0.0, tr / 2 - disc);
    g.major_axis_len = 4.0 * std::sqrt(std::max(0.0, l1));
    g.minor_axis_len = 4.0 * std::sqrt(l2);

    double angle = 0.5 * std::atan2(2 * mxy, mxx - myy);
    if (angle < 0) angle += M_PI;
    if (angle >= M_PI) angle -= M_PI;
    g.orientation = angle;
    return g;
}

std::vector<std::vector<std::int32_t>> connected_components(const PixelMask& mask) {
    const int w = mask.width(), h = mask.height();
    std::vector<std::int32_t> label(static_cast<size_t>(w) * h, -1);
    std::vector<std::vector<std::int32_t>> comps;
    std::vector<std::int32_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t start = y * w + x;
            if (!mask.at(x, y) || label[start] >= 0) continue;
            const auto id = static_cast<std::int32_t>(comps.size());
            comps.emplace_back();
            stack.assign(1, start);
            label[start] = id;
            while (!stack.empty()) {
                const std::int32_t p = stack.back();
                stack.pop_back();
                comps[id].push_back(p);
                const int px = p % w, py = p / w;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int qx = px + dx, qy = py + dy;
                        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                        const std::int32_t q = qy * w + qx;
                        if (mask.at(qx, qy) && label[q] < 0) {
                            label[q] = id;
                            stack.push_back(q);
                        }
                    }
                }
            }
            std::sort(comps[id].begin(), comps[id].end());
        }
    }
    return comps;
}

PixelMask mask_from_pixels(const std::vector<std::int32_t>& pixels, int width, int height) {
    PixelMask m(width, height);
    for (auto p : pixels) m.set(p % width, p / width);
    return m;
}

double mask_iou(const PixelMask& a, const PixelMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("mask_iou: dimension mismatch");
    long inter = 0, uni = 0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            const bool pa = a.at(x, y), pb = b.at(x, y);
            inter += pa && pb;
            uni += pa || pb;
        }
    }
    if (uni == 0) throw std::invalid_argument("mask_iou: both masks empty");
    return static_cast<double>(inter) / uni;
}

}  // namespace scenetext
