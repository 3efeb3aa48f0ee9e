#include "scenetext/lines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace scenetext {

namespace {

double sq_dist(const LineFeature& a, const LineFeature& b) {
    const double ds = a.scale - b.scale;
    const double da = a.angle - b.angle;
    return ds * ds + da * da;
}

}  // namespace

std::vector<int> mean_shift(const std::vector<LineFeature>& points, double bandwidth) {
    if (bandwidth <= 0) throw std::invalid_argument("mean_shift: bandwidth must be positive");
    const size_t n = points.size();
    if (n == 0) return {};

    // Deterministic in input order: iterate over a sorted copy.
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (points[a].scale != points[b].scale) return points[a].scale < points[b].scale;
        return points[a].angle < points[b].angle;
    });

    const double bw2 = bandwidth * bandwidth;
    constexpr double kTol2 = 1e-12;
    constexpr int kMaxIter = 200;

    std::vector<LineFeature> modes(n);
    for (size_t k = 0; k < n; ++k) {
        LineFeature x = points[order[k]];
        for (int it = 0; it < kMaxIter; ++it) {
            double ss = 0, sa = 0;
            int cnt = 0;
            for (size_t m = 0; m < n; ++m) {
                if (sq_dist(points[order[m]], x) <= bw2) {
                    ss += points[order[m]].scale;
                    sa += points[order[m]].angle;
                    ++cnt;
                }
            }
            const LineFeature next{ss / cnt, sa / cnt};
            const double moved = sq_dist(next, x);
            x = next;
            if (moved < kTol2) break;
        }
        modes[k] = x;
    }

    // Modes within bandwidth/2 collapse into one cluster.
    const double merge2 = bw2 / 4.0;
    std::vector<int> sorted_assign(n, -1);
    std::vector<LineFeature> centers;
    for (size_t k = 0; k < n; ++k) {
        int hit = -1;
        for (size_t c = 0; c < centers.size(); ++c) {
            if (sq_dist(modes[k], centers[c]) <= merge2) {
                hit = static_cast<int>(c);
                break;
            }
        }
        if (hit < 0) {
            hit = static_cast<int>(centers.size());
            centers.push_back(modes[k]);
        }
        sorted_assign[k] = hit;
    }

    std::vector<int> assign(n, -1);
    for (size_t k = 0; k < n; ++k) assign[order[k]] = sorted_assign[k];
    return assign;
}

namespace {

double join_angle(const GroupableRegion& a, const GroupableRegion& b) {
    double ang = std::atan2(b.cy - a.cy, b.cx - a.cx);
    if (ang < 0) ang += M_PI;
    if (ang >= M_PI) ang -= M_PI;
    return ang;
}

double angle_diff(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, M_PI);
    return std::min(d, M_PI - d);
}

bool nearby(const GroupableRegion& a, const GroupableRegion& b) {
    const double dx = a.cx - b.cx, dy = a.cy - b.cy;
    return std::sqrt(dx * dx + dy * dy) < (a.skeleton_len + b.skeleton_len) / 2.0;
}

// Running circular mean over the join angles, on the pi-periodic circle.
struct LineAccum {
    std::vector<int> members;  // indices into the sorted working array
    double cos2 = 0;
    double sin2 = 0;

    void add_angle(double a) {
        cos2 += std::cos(2 * a);
        sin2 += std::sin(2 * a);
    }
    double angle() const {
        double a = 0.5 * std::atan2(sin2, cos2);
        if (a < 0) a += M_PI;
        if (a >= M_PI) a -= M_PI;
        return a;
    }
};

}  // namespace

std::vector<TextLine> group_lines(const std::vector<GroupableRegion>& regions,
                                  double angle_limit_deg) {
    const double limit = angle_limit_deg * M_PI / 180.0;

    // Reading order: left to right, ties top to bottom.
    std::vector<size_t> order(regions.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (regions[a].cx != regions[b].cx) return regions[a].cx < regions[b].cx;
        if (regions[a].cy != regions[b].cy) return regions[a].cy < regions[b].cy;
        return regions[a].id < regions[b].id;
    });

    std::vector<int> line_of(regions.size(), -1);
    std::vector<LineAccum> lines;

    auto dist = [&](size_t a, size_t b) {
        const double dx = regions[a].cx - regions[b].cx;
        const double dy = regions[a].cy - regions[b].cy;
        return std::sqrt(dx * dx + dy * dy);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t oi = 0; oi < order.size(); ++oi) {
            const size_t i = order[oi];
            // Among eligible unlabeled partners, the closest one is taken;
            // scan position only decides who acts first.
            int pick = -1;
            double pick_dist = 0;
            for (size_t oj = 0; oj < order.size(); ++oj) {
                if (oi == oj) continue;
                const size_t j = order[oj];
                if (line_of[j] != -1) continue;
                const auto& ri = regions[i];
                const auto& rj = regions[j];
                if (!nearby(ri, rj)) continue;
                if (line_of[i] != -1 &&
                    angle_diff(join_angle(ri, rj), lines[line_of[i]].angle()) >= limit)
                    continue;
                const double d = dist(i, j);
                if (pick < 0 || d < pick_dist) {
                    pick = static_cast<int>(j);
                    pick_dist = d;
                }
            }
            if (pick < 0) continue;
            const auto j = static_cast<size_t>(pick);
            if (line_of[i] == -1) {
                const int id = static_cast<int>(lines.size());
                lines.emplace_back();
                lines[id].members = {static_cast<int>(i), static_cast<int>(j)};
                lines[id].add_angle(join_angle(regions[i], regions[j]));
                line_of[i] = line_of[j] = id;
            } else {
                const int id = line_of[i];
                lines[id].members.push_back(static_cast<int>(j));
                lines[id].add_angle(join_angle(regions[i], regions[j]));
                line_of[j] = id;
            }
            changed = true;
        }
    }

    std::vector<TextLine> out;
    for (const auto& acc : lines) {
        if (acc.members.size() < 2) continue;
        TextLine tl;
        tl.angle = acc.angle();
        Rect box;
        for (int m : acc.members) {
            tl.members.push_back(regions[m].id);
            box = rect_union(box, regions[m].bbox);
        }
        std::sort(tl.members.begin(), tl.members.end());
        tl.bbox = box;
        out.push_back(std::move(tl));
    }
    return out;
}

DetectResult detect(const ImageU8& rgb_in, const CharacternessModel& model,
                    const PipelineConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    DetectResult res;
    res.characterness_map = ImageF(rgb_in.width(), rgb_in.height(), 1, 0.0f);
    if (rgb_in.empty()) return res;

    // Grayscale inputs are replicated into three channels for the color cues.
    ImageU8 rgb = rgb_in;
    if (rgb_in.channels() == 1) {
        rgb = ImageU8(rgb_in.width(), rgb_in.height(), 3);
        for (int y = 0; y < rgb_in.height(); ++y)
            for (int x = 0; x < rgb_in.width(); ++x)
                for (int c = 0; c < 3; ++c) rgb.at(x, y, c) = rgb_in.at(x, y);
    }

    auto t0 = clock::now();
    res.candidates = extract_candidates(rgb, cfg.extract_params());
    res.stats.extract_ms = ms_since(t0);
    res.stats.candidates = static_cast<int>(res.candidates.size());

    t0 = clock::now();
    const ImageU8 intensity = to_intensity(rgb);
    const ImageF smooth = guided_filter(to_float(intensity), cfg.guided_radius, cfg.guided_epsilon);
    const ImageF grad_raw = gradient_magnitude_raw(smooth);
    const double high = std::max(1e-6, otsu_threshold(grad_raw) * cfg.canny_high_scale);
    const EdgeMap edges = canny_edges(smooth, high * cfg.canny_low_ratio, high);

    const CueParams cue_params = cfg.cue_params();
    std::vector<RegionFeatures> features;
    features.reserve(res.candidates.size());
    res.scores.reserve(res.candidates.size());
    for (const auto& r : res.candidates) {
        features.push_back(compute_region_features(rgb, r, edges, cue_params));
        const auto& f = features.back();
        res.cues.push_back(f.cues);
        if (f.cues) {
            res.scores.push_back(posterior(model, *f.cues));
        } else {
            res.scores.push_back(0.0);  // degenerate regions are background
            res.stats.degenerate++;
        }
    }
    res.stats.cues_ms = ms_since(t0);

    t0 = clock::now();
    res.graph = build_graph(res.candidates, features, res.scores, cue_params);
    res.labels = min_cut_label(res.graph);
    res.stats.label_ms = ms_since(t0);

    t0 = clock::now();
    std::vector<int> char_idx;
    for (size_t i = 0; i < res.labels.size(); ++i)
        if (res.labels[i] == 1) char_idx.push_back(static_cast<int>(i));
    res.stats.characters = static_cast<int>(char_idx.size());

    const double diag = std::sqrt(static_cast<double>(rgb.width()) * rgb.width() +
                                  static_cast<double>(rgb.height()) * rgb.height());
    std::vector<LineFeature> feats;
    feats.reserve(char_idx.size());
    for (int i : char_idx) {
        const auto& g = res.candidates[i].geometry;
        feats.push_back({g.characteristic_scale() / diag * cfg.line_scale_feature_gain,
                         g.orientation * 180.0 / M_PI / cfg.line_angle_feature_div});
    }
    const std::vector<int> cluster = mean_shift(feats, cfg.line_bandwidth);
    int nclusters = 0;
    for (int c : cluster) nclusters = std::max(nclusters, c + 1);
    for (int c = 0; c < nclusters; ++c) {
        std::vector<GroupableRegion> members;
        for (size_t k = 0; k < char_idx.size(); ++k) {
            if (cluster[k] != c) continue;
            const int i = char_idx[k];
            const auto& g = res.candidates[i].geometry;
            members.push_back({i, g.centroid_x, g.centroid_y, features[i].skeleton_len, g.bbox});
        }
        auto lines = group_lines(members, cfg.line_angle_limit_deg);
        res.lines.insert(res.lines.end(), std::make_move_iterator(lines.begin()),
                         std::make_move_iterator(lines.end()));
    }
    res.stats.lines = static_cast<int>(res.lines.size());
    res.stats.group_ms = ms_since(t0);

    // Per-pixel max posterior over covering candidates; background stays 0.
    for (size_t i = 0; i < res.candidates.size(); ++i) {
        const float s = static_cast<float>(res.scores[i]);
        for (auto p : res.candidates[i].pixels) {
            float& v = res.characterness_map.data()[p];
            v = std::max(v, s);
        }
    }
    return res;
}

}  // namespace scenetext
