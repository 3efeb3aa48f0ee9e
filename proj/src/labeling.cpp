#include "scenetext/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>

namespace scenetext {

RegionGraph build_graph(const std::vector<Region>& regions,
                        const std::vector<RegionFeatures>& features,
                        const std::vector<double>& scores, const CueParams& params) {
    if (regions.size() != scores.size() || regions.size() != features.size())
        throw std::invalid_argument("build_graph: size mismatch");

    RegionGraph g;
    g.vertices.resize(regions.size());
    for (size_t i = 0; i < regions.size(); ++i) {
        g.vertices[i].u0 = scores[i];
        g.vertices[i].u1 = 1.0 - scores[i];
    }

    for (size_t i = 0; i < regions.size(); ++i) {
        for (size_t j = i + 1; j < regions.size(); ++j) {
            const auto& a = regions[i].geometry;
            const auto& b = regions[j].geometry;
            const double dx = a.centroid_x - b.centroid_x;
            const double dy = a.centroid_y - b.centroid_y;
            const double dist = std::sqrt(dx * dx + dy * dy);
            const double scale = std::min(a.characteristic_scale(), b.characteristic_scale());
            if (!(dist < scale)) continue;

            Histogram ha, hb;
            double hi = 0;
            for (double v : features[i].stroke_widths) hi = std::max(hi, v);
            for (double v : features[j].stroke_widths) hi = std::max(hi, v);
            ha = make_histogram(features[i].stroke_widths, params.swd_bins, hi);
            hb = make_histogram(features[j].stroke_widths, params.swd_bins, hi);
            const double swd = divergence_kld(ha, hb);

            const auto& la = features[i].mean_lab;
            const auto& lb = features[j].mean_lab;
            const double cd = std::sqrt((la[0] - lb[0]) * (la[0] - lb[0]) +
                                        (la[1] - lb[1]) * (la[1] - lb[1]) +
                                        (la[2] - lb[2]) * (la[2] - lb[2]));

            const double ud = divergence_ud(swd, cd / params.cd_scale, params.beta);
            g.edges.push_back({static_cast<int>(i), static_cast<int>(j), 1.0 - std::tanh(ud)});
        }
    }
    return g;
}

namespace {

// Dinic max-flow on the standard s/t construction:
//   s -> i with capacity u_i(0), i -> t with capacity u_i(1),
//   i <-> j with capacity w_ij each way.
// After max-flow, vertices that cannot reach t in the residual graph sit on
// the source side and take label 1; this picks the largest-source-side
// minimum cut, so energy ties resolve toward label 1.
class Dinic {
public:
    explicit Dinic(int n) : head_(n, -1) {}

    void add_edge(int a, int b, double cap_ab, double cap_ba) {
        edges_.push_back({b, head_[a], cap_ab});
        head_[a] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({a, head_[b], cap_ba});
        head_[b] = static_cast<int>(edges_.size()) - 1;
    }

    void run(int s, int t) {
        while (bfs(s, t)) {
            iter_ = head_;
            while (dfs(s, t, kInfCap) > kEps) {
            }
        }
    }

    // True when v can still reach t through positive residual capacity.
    std::vector<bool> reaches_sink(int t) const {
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> q;
        q.push(t);
        seen[t] = true;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                // Edge into v with residual left = edges_[e^1].cap on (u -> v).
                const int u = edges_[e].to;
                if (!seen[u] && edges_[e ^ 1].cap > kEps) {
                    seen[u] = true;
                    q.push(u);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        int next;
        double cap;
    };

    static constexpr double kEps = 1e-12;
    static constexpr double kInfCap = 1e100;

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                if (edges_[e].cap > kEps && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[v] + 1;
                    q.push(edges_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    double dfs(int v, int t, double limit) {
        if (v == t) return limit;
        for (int& e = iter_[v]; e >= 0; e = edges_[e].next) {
            const int to = edges_[e].to;
            if (edges_[e].cap > kEps && level_[to] == level_[v] + 1) {
                const double got = dfs(to, t, std::min(limit, edges_[e].cap));
                if (got > kEps) {
                    edges_[e].cap -= got;
                    edges_[e ^ 1].cap += got;
                    return got;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace

std::vector<int> min_cut_label(const RegionGraph& graph) {
    for (const auto& e : graph.edges)
        if (e.w < 0) throw std::invalid_argument("min_cut_label: negative edge weight");

    const int n = static_cast<int>(graph.vertices.size());
    if (n == 0) return {};
    const int s = n, t = n + 1;
    Dinic flow(n + 2);
    for (int i = 0; i < n; ++i) {
        flow.add_edge(s, i, graph.vertices[i].u0, 0.0);
        flow.add_edge(i, t, graph.vertices[i].u1, 0.0);
    }
    for (const auto& e : graph.edges) flow.add_edge(e.a, e.b, e.w, e.w);
    flow.run(s, t);

    const auto to_sink = flow.reaches_sink(t);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = to_sink[i] ? 0 : 1;
    return labels;
}

double labeling_energy(const RegionGraph& graph, const std::vector<int>& labels) {
    if (labels.size() != graph.vertices.size())
        throw std::invalid_argument("labeling_energy: labeling does not cover all vertices");
    double e = 0;
    for (size_t i = 0; i < graph.vertices.size(); ++i)
        e += labels[i] == 0 ? graph.vertices[i].u0 : graph.vertices[i].u1;
    for (const auto& edge : graph.edges)
        if (labels[edge.a] != labels[edge.b]) e += edge.w;
    return e;
}

void dump_graph(const RegionGraph& graph, std::ostream& out) {
    out << "vertices " << graph.vertices.size() << '\n';
    for (size_t i = 0; i < graph.vertices.size(); ++i)
        out << i << ' ' << graph.vertices[i].u0 << ' ' << graph.vertices[i].u1 << '\n';
    out << "edges " << graph.edges.size() << '\n';
    for (const auto& e : graph.edges) out << e.a << ' ' << e.b << ' ' << e.w << '\n';
}

}  // namespace scenetext
