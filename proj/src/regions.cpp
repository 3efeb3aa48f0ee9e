#include "scenetext/regions.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace scenetext {

PixelMask Region::make_mask() const {
    return mask_from_pixels(pixels, image_width, image_height);
}

PixelMask Region::make_local_mask(int pad) const {
    PixelMask m(bbox.w + 2 * pad, bbox.h + 2 * pad);
    for (auto p : pixels) {
        const int x = p % image_width, y = p / image_width;
        m.set(x - bbox.x + pad, y - bbox.y + pad);
    }
    return m;
}

ImageU8 emser_preprocess(const ImageU8& img, const ImageF& grad, double gamma, Polarity pol) {
    if (img.channels() != 1 || grad.channels() != 1)
        throw std::invalid_argument("emser_preprocess: 1-channel inputs required");
    if (!grad.same_size(img.width(), img.height()))
        throw std::invalid_argument("emser_preprocess: dimension mismatch");
    const double sign = pol == Polarity::DarkOnBright ? 1.0 : -1.0;
    ImageU8 out(img.width(), img.height(), 1);
    for (size_t i = 0; i < img.size(); ++i) {
        const double v = img.data()[i] + sign * gamma * grad.data()[i];
        out.data()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
    return out;
}

namespace {

// Component tree node. A node is the maximal extremal region living over
// thresholds [birth, death); its children all merged into it at `birth`.
struct TreeNode {
    int birth = 0;
    int death = 256;
    int parent = -1;
    std::vector<int> children;
    std::vector<std::int32_t> own;  // pixels added directly, level-ordered
    long size = 0;
    std::vector<std::pair<int, long>> history;  // (level, size after that level)
    bool coalesced = false;
    int last_touch = -1;
};

struct TreeBuilder {
    const std::uint8_t* img;
    int w, h;
    std::vector<std::int32_t> uf;       // union-find over activated pixels
    std::vector<std::int32_t> node_of;  // node id per UF root, -1 = pending
    std::vector<TreeNode> nodes;
    std::vector<int> touched;

    std::int32_t find(std::int32_t p) {
        std::int32_t r = p;
        while (uf[r] != r) r = uf[r];
        while (uf[p] != r) {
            const std::int32_t next = uf[p];
            uf[p] = r;
            p = next;
        }
        return r;
    }

    void touch(int n, int level) {
        if (nodes[n].last_touch != level) {
            nodes[n].last_touch = level;
            touched.push_back(n);
        }
    }

    int fresh_node(int level) {
        nodes.push_back(TreeNode{});
        nodes.back().birth = level;
        return static_cast<int>(nodes.size()) - 1;
    }

    // Union the components of roots a and b at `level`; returns the new root.
    std::int32_t union_roots(std::int32_t a, std::int32_t b, int level) {
        int na = node_of[a], nb = node_of[b];
        int keep_node;
        if (na == -1) {
            // a is the just-activated pixel with no node yet.
            if (nodes[nb].birth == level) {
                keep_node = nb;
            } else {
                keep_node = fresh_node(level);
                attach_child(keep_node, nb, level);
            }
        } else {
            assert(nodes[na].birth == level);  // the active pixel's side is always level-born
            if (nodes[nb].birth == level) {
                keep_node = coalesce(na, nb);
            } else {
                keep_node = na;
                attach_child(na, nb, level);
            }
        }
        touch(keep_node, level);
        // Union by size over pixel counts.
        std::int32_t ra = a, rb = b;
        if (rb < ra) std::swap(ra, rb);
        uf[rb] = ra;
        node_of[ra] = keep_node;
        return ra;
    }

    void attach_child(int parent, int child, int level) {
        nodes[child].death = level;
        nodes[child].parent = parent;
        nodes[parent].children.push_back(child);
        nodes[parent].size += nodes[child].size;
    }

    // Merge two nodes born at the same level into one region.
    int coalesce(int a, int b) {
        if (nodes[a].own.size() + nodes[a].children.size() <
            nodes[b].own.size() + nodes[b].children.size())
            std::swap(a, b);
        auto& A = nodes[a];
        auto& B = nodes[b];
        A.own.insert(A.own.end(), B.own.begin(), B.own.end());
        for (int c : B.children) {
            nodes[c].parent = a;
            A.children.push_back(c);
        }
        A.size += B.size;
        B.coalesced = true;
        B.own.clear();
        B.children.clear();
        return a;
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TreeQuery {
    const std::vector<TreeNode>& nodes;
    std::vector<int> designated;  // largest child per node, -1 if leaf

    explicit TreeQuery(const std::vector<TreeNode>& n) : nodes(n) {
        designated.assign(nodes.size(), -1);
        for (size_t i = 0; i < nodes.size(); ++i) {
            long best = -1;
            for (int c : nodes[i].children) {
                if (nodes[c].size > best) {
                    best = nodes[c].size;
                    designated[i] = c;
                }
            }
        }
    }

    // Size of the region at threshold s, s within [birth, death).
    long size_at(int n, int s) const {
        const auto& hist = nodes[n].history;
        long sz = 0;
        for (const auto& [lvl, v] : hist) {
            if (lvl > s) break;
            sz = v;
        }
        return sz;
    }

    // Size of the enclosing region at s >= death(n): climb parents.
    long size_up(int n, int s) const {
        while (s >= nodes[n].death) n = nodes[n].parent;
        return size_at(n, s);
    }

    // Size of the contained region at s < birth(n): follow largest children.
    long size_down(int n, int s) const {
        while (s < nodes[n].birth) {
            n = designated[n];
            if (n < 0) return 0;
        }
        return size_at(n, s);
    }

    double variation(int n, int t, int delta) const {
        const long cur = size_at(n, t);
        if (cur <= 0) return kInf;
        const long up = size_up(n, std::min(t + delta, 255));
        long down = 0;
        const int s = t - delta;
        if (s >= 0) down = s >= nodes[n].birth ? size_at(n, s) : size_down(n, s);
        return static_cast<double>(up - down) / cur;
    }

    // Variation of whichever region on this node's chain owns threshold s.
    double chain_variation(int n, int s, int delta) const {
        if (s < 0 || s > 255) return kInf;
        while (s >= nodes[n].death) n = nodes[n].parent;
        while (s < nodes[n].birth) {
            n = designated[n];
            if (n < 0) return kInf;
        }
        return variation(n, s, delta);
    }
};

// All subtree pixels with image level <= t.
std::vector<std::int32_t> collect_pixels(const std::vector<TreeNode>& nodes, int root, int t,
                                         const std::uint8_t* img) {
    std::vector<std::int32_t> out;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        const int n = stack.back();
        stack.pop_back();
        for (auto p : nodes[n].own) {
            if (n == root && img[p] > t) break;  // own list is level-ordered
            out.push_back(p);
        }
        for (int c : nodes[n].children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Same moments as region_geometry, computed from a pixel list directly so we
// never materialize full-size masks per candidate.
RegionGeometry geometry_of_pixels(const std::vector<std::int32_t>& pixels, int width) {
    const long n = static_cast<long>(pixels.size());
    double sx = 0, sy = 0;
    int x0 = std::numeric_limits<int>::max(), y0 = x0, x1 = -1, y1 = -1;
    for (auto p : pixels) {
        const int x = p % width, y = p / width;
        sx += x;
        sy += y;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
    }
    RegionGeometry g;
    g.area = static_cast<int>(n);
    g.centroid_x = sx / n;
    g.centroid_y = sy / n;
    g.bbox = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
    double mxx = 0, myy = 0, mxy = 0;
    for (auto p : pixels) {
        const double dx = p % width - g.centroid_x;
        const double dy = p / width - g.centroid_y;
        mxx += dx * dx;
        myy += dy * dy;
        mxy += dx * dy;
    }
    mxx /= n;
    myy /= n;
    mxy /= n;
    const double tr = mxx + myy;
    const double det = mxx * myy - mxy * mxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    g.major_axis_len = 4.0 * std::sqrt(std::max(0.0, tr / 2 + disc));
    g.minor_axis_len = 4.0 * std::sqrt(std::max(0.0, tr / 2 - disc));
    double angle = 0.5 * std::atan2(2 * mxy, mxx - myy);
    if (angle < 0) angle += M_PI;
    if (angle >= M_PI) angle -= M_PI;
    g.orientation = angle;
    return g;
}

}  // namespace

std::vector<Region> mser_detect(const ImageU8& img, const MserParams& params, Polarity pol) {
    if (img.channels() != 1) throw std::invalid_argument("mser_detect: 1-channel input required");
    if (params.delta < 1) throw std::invalid_argument("mser_detect: delta must be >= 1");
    if (img.empty()) return {};

    const int w = img.width(), h = img.height();
    const size_t n = static_cast<size_t>(w) * h;

    // Bright regions are detected as dark regions of the inverted image.
    std::vector<std::uint8_t> work(n);
    for (size_t i = 0; i < n; ++i)
        work[i] = pol == Polarity::DarkOnBright ? img.data()[i]
                                                : static_cast<std::uint8_t>(255 - img.data()[i]);

    // Pixels bucketed by level for the flooding sweep.
    std::array<std::vector<std::int32_t>, 256> buckets;
    for (size_t i = 0; i < n; ++i) buckets[work[i]].push_back(static_cast<std::int32_t>(i));

    TreeBuilder tb;
    tb.img = work.data();
    tb.w = w;
    tb.h = h;
    tb.uf.assign(n, -1);
    tb.node_of.assign(n, -1);

    static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    for (int level = 0; level < 256; ++level) {
        for (auto p : buckets[level]) {
            tb.uf[p] = p;
            const int x = p % w, y = p / w;
            for (int k = 0; k < 8; ++k) {
                const int qx = x + kDx[k], qy = y + kDy[k];
                if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                const std::int32_t q = qy * w + qx;
                if (tb.uf[q] < 0) continue;  // not activated yet
                const std::int32_t rp = tb.find(p), rq = tb.find(q);
                if (rp != rq) tb.union_roots(rp, rq, level);
            }
            // The pixel itself lands in whatever node its root now carries.
            const std::int32_t r = tb.find(p);
            if (tb.node_of[r] == -1) tb.node_of[r] = tb.fresh_node(level);
            const int nd = tb.node_of[r];
            tb.nodes[nd].own.push_back(p);
            tb.nodes[nd].size += 1;
            tb.touch(nd, level);
        }
        for (int nd : tb.touched) {
            auto& node = tb.nodes[nd];
            if (node.coalesced) continue;
            if (node.history.empty() || node.history.back().second != node.size)
                node.history.emplace_back(level, node.size);
        }
        tb.touched.clear();
    }

    TreeQuery tq(tb.nodes);
    const long max_area = static_cast<long>(params.max_area_frac * static_cast<double>(n));

    struct Emission {
        int node;
        int threshold;
        double variation;
        long area;
        bool dropped = false;
    };
    std::vector<Emission> emissions;
    std::vector<int> emission_of(tb.nodes.size(), -1);

    for (size_t id = 0; id < tb.nodes.size(); ++id) {
        const auto& node = tb.nodes[id];
        if (node.coalesced) continue;

        int best_t = -1;
        double best_v = kInf;
        for (int t = node.birth; t < std::min(node.death, 256); ++t) {
            const double v = tq.variation(static_cast<int>(id), t, params.delta);
            if (v < best_v) {
                best_v = v;
                best_t = t;
            }
        }
        if (best_t < 0 || best_v > params.max_variation) continue;
        if (best_v > tq.chain_variation(static_cast<int>(id), best_t - 1, params.delta)) continue;
        if (best_v > tq.chain_variation(static_cast<int>(id), best_t + 1, params.delta)) continue;
        const long area = tq.size_at(static_cast<int>(id), best_t);
        if (area < params.min_area || area > max_area) continue;

        emission_of[id] = static_cast<int>(emissions.size());
        emissions.push_back({static_cast<int>(id), best_t, best_v, area});
    }

    // Diversity pruning: nested stable regions whose sizes differ by less
    // than min_diversity keep only the more stable one (ties keep the inner,
    // sharper region). An emitted ancestor always contains the descendant.
    if (params.min_diversity > 0) {
        for (auto& e : emissions) {
            if (e.dropped) continue;
            const double limit = static_cast<double>(e.area) / (1.0 - params.min_diversity);
            for (int up = tb.nodes[e.node].parent; up >= 0; up = tb.nodes[up].parent) {
                const int fi = emission_of[up];
                if (fi < 0) continue;
                auto& f = emissions[fi];
                if (static_cast<double>(f.area) > limit) break;  // areas only grow upward
                if (f.dropped) continue;
                if (f.variation < e.variation)
                    e.dropped = true;
                else
                    f.dropped = true;
                if (e.dropped) break;
            }
        }
    }

    std::vector<Region> out;
    for (const auto& e : emissions) {
        if (e.dropped) continue;
        Region r;
        r.polarity = pol;
        r.source_threshold = e.threshold;
        r.pixels = collect_pixels(tb.nodes, e.node, e.threshold, work.data());
        r.image_width = w;
        r.image_height = h;
        r.geometry = geometry_of_pixels(r.pixels, w);
        r.bbox = r.geometry.bbox;
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

long sorted_intersection_count(const std::vector<std::int32_t>& a,
                               const std::vector<std::int32_t>& b) {
    long cnt = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else {
            ++cnt;
            ++i;
            ++j;
        }
    }
    return cnt;
}

double pixel_iou(const Region& a, const Region& b) {
    const long inter = sorted_intersection_count(a.pixels, b.pixels);
    const long uni = static_cast<long>(a.pixels.size()) + static_cast<long>(b.pixels.size()) - inter;
    return uni > 0 ? static_cast<double>(inter) / uni : 0.0;
}

}  // namespace

std::vector<Region> extract_candidates(const ImageU8& rgb, const ExtractParams& params) {
    if (rgb.empty()) return {};
    const ImageU8 intensity = rgb.channels() == 3 ? to_intensity(rgb) : rgb;
    const ImageF smooth = guided_filter(to_float(intensity), params.guided_radius, params.guided_epsilon);
    const ImageF grad = gradient_magnitude(smooth);
    const ImageU8 base = to_u8(smooth);

    std::vector<Region> all;
    for (const Polarity pol : {Polarity::DarkOnBright, Polarity::BrightOnDark}) {
        const ImageU8 star = emser_preprocess(base, grad, params.mser.gamma, pol);
        auto found = mser_detect(star, params.mser, pol);
        all.insert(all.end(), std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
    }

    std::sort(all.begin(), all.end(), [](const Region& a, const Region& b) {
        if (a.geometry.area != b.geometry.area) return a.geometry.area < b.geometry.area;
        if (a.geometry.centroid_x != b.geometry.centroid_x)
            return a.geometry.centroid_x < b.geometry.centroid_x;
        if (a.geometry.centroid_y != b.geometry.centroid_y)
            return a.geometry.centroid_y < b.geometry.centroid_y;
        return a.polarity == Polarity::DarkOnBright && b.polarity == Polarity::BrightOnDark;
    });

    // Cross-polarity dedup: the later region of a near-identical pair loses.
    std::vector<Region> kept;
    for (auto& r : all) {
        bool dup = false;
        for (const auto& k : kept) {
            // IoU is bounded by the area ratio, so mismatched sizes can't collide.
            const double lo = std::min(r.geometry.area, k.geometry.area);
            const double hi = std::max(r.geometry.area, k.geometry.area);
            if (lo / hi <= params.dedup_iou) continue;
            if (rect_iou(r.bbox, k.bbox) <= 0) continue;
            if (pixel_iou(r, k) > params.dedup_iou) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(std::move(r));
    }
    return kept;
}

}  // namespace scenetext
