#include "scenetext/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scenetext {

PixelMask binarize(const ImageU8& map, double threshold) {
    PixelMask m(map.width(), map.height());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            if (map.at(x, y) >= threshold) m.set(x, y);
    return m;
}

PRCurve pr_curve(const ImageU8& map, const PixelMask& gt) {
    if (map.channels() != 1 || map.width() != gt.width() || map.height() != gt.height())
        throw std::invalid_argument("pr_curve: dimension mismatch");
    const long gt_count = gt.count();
    if (gt_count == 0) throw std::invalid_argument("pr_curve: empty ground truth");

    // One histogram pass; mask at threshold T is the suffix sum over levels >= T.
    std::array<long, 256> level_total{}, level_hit{};
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const int v = map.at(x, y);
            level_total[v]++;
            if (gt.at(x, y)) level_hit[v]++;
        }
    }
    PRCurve curve;
    long total = 0, hit = 0;
    for (int t = 255; t >= 0; --t) {
        total += level_total[t];
        hit += level_hit[t];
        curve.points[t].precision = total > 0 ? static_cast<double>(hit) / total : 1.0;
        curve.points[t].recall = static_cast<double>(hit) / gt_count;
    }
    return curve;
}

namespace {

double weighted_f(double p, double r, double beta2) {
    const double denom = beta2 * p + r;
    return denom > 0 ? (beta2 + 1.0) * p * r / denom : 0.0;
}

}  // namespace

AdaptiveResult adaptive_fmeasure(const ImageU8& map, const PixelMask& gt, double beta2) {
    if (map.channels() != 1 || map.width() != gt.width() || map.height() != gt.height())
        throw std::invalid_argument("adaptive_fmeasure: dimension mismatch");
    const long gt_count = gt.count();
    if (gt_count == 0) throw std::invalid_argument("adaptive_fmeasure: empty ground truth");

    double mean = 0;
    for (size_t i = 0; i < map.size(); ++i) mean += map.data()[i];
    mean /= map.empty() ? 1.0 : static_cast<double>(map.size());

    AdaptiveResult res;
    res.threshold = std::min(2.0 * mean, 255.0);
    res.segmentation = binarize(map, res.threshold);

    long inter = 0;
    const long picked = res.segmentation.count();
    for (int y = 0; y < gt.height(); ++y)
        for (int x = 0; x < gt.width(); ++x)
            if (res.segmentation.at(x, y) && gt.at(x, y)) inter++;

    res.prf.precision = picked > 0 ? static_cast<double>(inter) / picked : 1.0;
    res.prf.recall = static_cast<double>(inter) / gt_count;
    res.prf.fmeasure = weighted_f(res.prf.precision, res.prf.recall, beta2);
    return res;
}

double voc_overlap(const PixelMask& a, const PixelMask& b) {
    return mask_iou(a, b);  // throws when both masks are empty
}

double box_iou(const Box& a, const Box& b) {
    return rect_iou({a.x, a.y, a.w, a.h}, {b.x, b.y, b.w, b.h});
}

PRF box_prf(const std::vector<Box>& pred, const std::vector<Box>& gt, double iou_threshold) {
    struct Pair {
        double iou;
        int p, g;
    };
    std::vector<Pair> pairs;
    for (size_t p = 0; p < pred.size(); ++p) {
        for (size_t g = 0; g < gt.size(); ++g) {
            const double iou = box_iou(pred[p], gt[g]);
            if (iou >= iou_threshold) pairs.push_back({iou, static_cast<int>(p), static_cast<int>(g)});
        }
    }
    // Greedy best match, one-to-one.
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.p != b.p) return a.p < b.p;
        return a.g < b.g;
    });
    std::vector<bool> used_p(pred.size(), false), used_g(gt.size(), false);
    long matches = 0;
    for (const auto& pr : pairs) {
        if (used_p[pr.p] || used_g[pr.g]) continue;
        used_p[pr.p] = used_g[pr.g] = true;
        matches++;
    }

    PRF out;
    out.precision = pred.empty() ? 1.0 : static_cast<double>(matches) / pred.size();
    out.recall = gt.empty() ? 1.0 : static_cast<double>(matches) / gt.size();
    const double denom = out.precision + out.recall;
    out.fmeasure = denom > 0 ? 2.0 * out.precision * out.recall / denom : 0.0;
    return out;
}

PRCurve mean_curve(const std::vector<PRCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("mean_curve: no curves");
    PRCurve out;
    for (int t = 0; t < 256; ++t) {
        double p = 0, r = 0;
        for (const auto& c : curves) {
            p += c.points[t].precision;
            r += c.points[t].recall;
        }
        out.points[t].precision = p / curves.size();
        out.points[t].recall = r / curves.size();
    }
    return out;
}

PRF mean_prf(const std::vector<PRF>& values) {
    if (values.empty()) throw std::invalid_argument("mean_prf: no values");
    PRF out;
    for (const auto& v : values) {
        out.precision += v.precision;
        out.recall += v.recall;
        out.fmeasure += v.fmeasure;
    }
    out.precision /= values.size();
    out.recall /= values.size();
    out.fmeasure /= values.size();
    return out;
}

}  // namespace scenetext
