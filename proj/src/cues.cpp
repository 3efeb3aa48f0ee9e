#include "scenetext/cues.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scenetext {

std::optional<StrokeWidthStats> stroke_width_stats(const Region& region) {
    if (region.pixels.empty()) return std::nullopt;
    const PixelMask local = region.make_local_mask();
    const PixelMask skel = skeletonize(local);
    const ImageF dt = distance_transform(local);

    double sum = 0, sum2 = 0;
    int count = 0;
    for (int y = 0; y < skel.height(); ++y) {
        for (int x = 0; x < skel.width(); ++x) {
            if (!skel.at(x, y)) continue;
            const double l = dt.at(x, y);
            sum += l;
            sum2 += l * l;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;

    StrokeWidthStats s;
    s.samples = count;
    s.mean = sum / count;
    s.variance = std::max(0.0, sum2 / count - s.mean * s.mean);
    return s;
}

double cue_sw(const StrokeWidthStats& stats) {
    if (stats.mean <= 0) throw std::invalid_argument("cue_sw: mean stroke width must be positive");
    return stats.variance / (stats.mean * stats.mean);
}

namespace {

// Counts plus eps, eps = 1/(total+bins), then normalized.
std::vector<double> smooth_normalize(const std::vector<long>& counts) {
    const long total = std::accumulate(counts.begin(), counts.end(), 0l);
    const auto bins = static_cast<long>(counts.size());
    const double eps = 1.0 / static_cast<double>(total + bins);
    std::vector<double> p(counts.size());
    const double denom = static_cast<double>(total) + bins * eps;
    for (size_t j = 0; j < counts.size(); ++j) p[j] = (counts[j] + eps) / denom;
    return p;
}

double kld(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0;
    for (size_t j = 0; j < p.size(); ++j) d += p[j] * std::log(p[j] / q[j]);
    return d;
}

}  // namespace

ColorHistogram color_histogram(const ImageU8& rgb, const std::vector<std::int32_t>& pixels,
                               int bins) {
    if (rgb.channels() != 3) throw std::invalid_argument("color_histogram: 3-channel input");
    ColorHistogram h;
    h.bins = bins;
    const int w = rgb.width();
    for (int c = 0; c < 3; ++c) {
        std::vector<long> counts(bins, 0);
        for (auto p : pixels) {
            const int v = rgb.at(p % w, p / w, c);
            counts[std::min(v * bins / 256, bins - 1)]++;
        }
        h.p[c] = smooth_normalize(counts);
    }
    return h;
}

double cue_pd(const ImageU8& rgb, const Region& region, int bins) {
    if (rgb.channels() != 3) throw std::invalid_argument("cue_pd: 3-channel input");
    const int w = rgb.width(), h = rgb.height();

    PixelMask member(region.bbox.w, region.bbox.h);
    for (auto p : region.pixels)
        member.set(p % w - region.bbox.x, p / w - region.bbox.y);

    auto surround_of = [&](const Rect& box) {
        std::vector<std::int32_t> out;
        for (int y = box.y; y < box.y + box.h; ++y) {
            for (int x = box.x; x < box.x + box.w; ++x) {
                const bool inside = region.bbox.contains(x, y) &&
                                    member.at(x - region.bbox.x, y - region.bbox.y);
                if (!inside) out.push_back(y * w + x);
            }
        }
        return out;
    };

    std::vector<std::int32_t> surround = surround_of(region.bbox);
    if (surround.empty()) {
        // Region fills its box: widen by one pixel (clamped to the image).
        Rect box = region.bbox;
        box.x = std::max(0, box.x - 1);
        box.y = std::max(0, box.y - 1);
        box.w = std::min(w, region.bbox.x + region.bbox.w + 1) - box.x;
        box.h = std::min(h, region.bbox.y + region.bbox.h + 1) - box.y;
        surround = surround_of(box);
        if (surround.empty()) return 0.0;  // region covers the whole image
    }

    const ColorHistogram hr = color_histogram(rgb, region.pixels, bins);
    const ColorHistogram hs = color_histogram(rgb, surround, bins);
    double pd = 0;
    for (int c = 0; c < 3; ++c) pd += kld(hr.p[c], hs.p[c]);
    return pd;
}

EdgeTypeCounts edge_type_counts(const Region& region, const EdgeMap& edges) {
    // An edge pixel belongs to the region when it lies on the (1-dilated)
    // region mask; Canny localizes edges a pixel off the extremal boundary.
    EdgeTypeCounts counts;
    const int w = edges.mask.width(), h = edges.mask.height();
    PixelMask near(region.bbox.w + 2, region.bbox.h + 2);
    for (auto p : region.pixels) {
        const int lx = p % w - region.bbox.x + 1, ly = p / w - region.bbox.y + 1;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) near.set(lx + dx, ly + dy);
    }
    // Sector boundaries compared at the map's own (float) precision so an
    // orientation stored as float(pi/4) still lands in type 1.
    const float q1 = static_cast<float>(M_PI / 4);
    const float q2 = static_cast<float>(3 * M_PI / 4);
    const float q3 = static_cast<float>(5 * M_PI / 4);
    const float q4 = static_cast<float>(7 * M_PI / 4);
    for (int ly = 0; ly < near.height(); ++ly) {
        for (int lx = 0; lx < near.width(); ++lx) {
            if (!near.at(lx, ly)) continue;
            const int x = lx + region.bbox.x - 1, y = ly + region.bbox.y - 1;
            if (x < 0 || x >= w || y < 0 || y >= h || !edges.mask.at(x, y)) continue;
            const float t = edges.theta.at(x, y);
            if (t <= q1 || t > q4)
                counts.w1++;
            else if (t <= q2)
                counts.w2++;
            else if (t <= q3)
                counts.w3++;
            else
                counts.w4++;
        }
    }
    return counts;
}

double cue_ehog(const EdgeTypeCounts& counts) {
    const long total = counts.total();
    if (total == 0) throw std::invalid_argument("cue_ehog: no edge pixels");
    const double d1 = static_cast<double>(counts.w1 - counts.w3);
    const double d2 = static_cast<double>(counts.w2 - counts.w4);
    return std::sqrt(d1 * d1 + d2 * d2) / static_cast<double>(total);
}

std::optional<double> cue_ehog(const Region& region, const EdgeMap& edges) {
    const EdgeTypeCounts c = edge_type_counts(region, edges);
    if (c.total() == 0) return std::nullopt;
    return cue_ehog(c);
}

std::vector<double> stroke_width_values(const Region& region) {
    const PixelMask local = region.make_local_mask();
    const ImageF dt = distance_transform(local);
    std::vector<double> out;
    out.reserve(region.pixels.size());
    for (int y = 0; y < local.height(); ++y)
        for (int x = 0; x < local.width(); ++x)
            if (local.at(x, y)) out.push_back(dt.at(x, y));
    return out;
}

Histogram make_histogram(const std::vector<double>& values, int bins, double hi) {
    Histogram h;
    h.lo = 0;
    h.hi = hi;
    std::vector<long> counts(bins, 0);
    const double span = hi > 0 ? hi : 1.0;
    for (double v : values) {
        int b = static_cast<int>(v / span * bins);
        counts[std::clamp(b, 0, bins - 1)]++;
    }
    h.p = smooth_normalize(counts);
    return h;
}

Histogram stroke_width_histogram(const Region& region, int bins, double hi) {
    return make_histogram(stroke_width_values(region), bins, hi);
}

double divergence_kld(const Histogram& a, const Histogram& b) {
    if (a.p.size() != b.p.size() || a.lo != b.lo || a.hi != b.hi)
        throw std::invalid_argument("divergence_kld: bin layout mismatch");
    return kld(a.p, b.p);
}

double divergence_swd(const Histogram& a, const Histogram& b) { return divergence_kld(a, b); }

double pairwise_swd(const Region& a, const Region& b, int bins) {
    const auto va = stroke_width_values(a);
    const auto vb = stroke_width_values(b);
    double hi = 0;
    for (double v : va) hi = std::max(hi, v);
    for (double v : vb) hi = std::max(hi, v);
    return divergence_kld(make_histogram(va, bins, hi), make_histogram(vb, bins, hi));
}

std::array<double, 3> srgb_to_lab(double r, double g, double b) {
    auto linear = [](double c) {
        c /= 255.0;
        return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    };
    const double rl = linear(r), gl = linear(g), bl = linear(b);
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    // D65 reference white.
    auto f = [](double t) {
        constexpr double eps = 216.0 / 24389.0;
        constexpr double kappa = 24389.0 / 27.0;
        return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
    };
    const double fx = f(x / 0.95047), fy = f(y / 1.0), fz = f(z / 1.08883);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

namespace {

std::array<double, 3> mean_lab(const ImageU8& rgb, const std::vector<std::int32_t>& pixels) {
    double r = 0, g = 0, b = 0;
    for (auto p : pixels) {
        const int x = p % rgb.width(), y = p / rgb.width();
        r += rgb.at(x, y, 0);
        g += rgb.at(x, y, 1);
        b += rgb.at(x, y, 2);
    }
    const double n = pixels.empty() ? 1.0 : static_cast<double>(pixels.size());
    return srgb_to_lab(r / n, g / n, b / n);
}

}  // namespace

double divergence_cd(const ImageU8& rgb, const Region& a, const Region& b) {
    const auto la = mean_lab(rgb, a.pixels);
    const auto lb = mean_lab(rgb, b.pixels);
    const double d0 = la[0] - lb[0], d1 = la[1] - lb[1], d2 = la[2] - lb[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

double divergence_ud(double swd, double cd, double beta) {
    if (beta < 0 || beta > 1) throw std::invalid_argument("divergence_ud: beta outside [0,1]");
    return beta * swd + (1 - beta) * cd;
}

RegionFeatures compute_region_features(const ImageU8& rgb, const Region& region,
                                       const EdgeMap& edges, const CueParams& params) {
    RegionFeatures f;
    f.stroke_widths = stroke_width_values(region);
    f.mean_lab = mean_lab(rgb, region.pixels);
    f.skeleton_len = skeletonize(region.make_local_mask()).count();

    const auto stats = stroke_width_stats(region);
    const auto ehog = cue_ehog(region, edges);
    if (!stats || !ehog || stats->mean <= 0) return f;  // degenerate: cues absent

    CueVector c;
    c.sw = cue_sw(*stats);
    c.pd = cue_pd(rgb, region, params.pd_bins);
    c.ehog = *ehog;
    f.cues = c;
    return f;
}

}  // namespace scenetext
