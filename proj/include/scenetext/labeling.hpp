#pragma once

#include "scenetext/cues.hpp"
#include "scenetext/regions.hpp"

#include <iosfwd>
#include <vector>

namespace scenetext {

/// Binary MRF over candidate regions. Vertex i carries the cost pair
/// (u0, u1) of labeling it 0 or 1; an edge carries the cost paid when the
/// endpoint labels differ.
struct RegionGraph {
    struct Vertex {
        double u0 = 0;  // cost of label 0 (non-character)
        double u1 = 0;  // cost of label 1 (character)
    };
    struct Edge {
        int a = 0;
        int b = 0;
        double w = 0;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

/// Unary costs u0 = score, u1 = 1 - score. An edge joins two regions when
/// their centroid distance is strictly below the minimum of their
/// characteristic scales; its weight is 1 - tanh(UD).
RegionGraph build_graph(const std::vector<Region>& regions,
                        const std::vector<RegionFeatures>& features,
                        const std::vector<double>& scores,
                        const CueParams& params);

/// Globally optimal labeling by s/t min-cut (Dinic max-flow). Ties between
/// equal-energy labelings break toward label 1. Throws on a negative edge
/// weight.
std::vector<int> min_cut_label(const RegionGraph& graph);

/// E(L) = sum of unary costs + sum of edge weights across label boundaries.
double labeling_energy(const RegionGraph& graph, const std::vector<int>& labels);

/// Plain-text edge list with unaries, for external verification.
void dump_graph(const RegionGraph& graph, std::ostream& out);

}  // namespace scenetext
