#pragma once

#include "scenetext/charmodel.hpp"
#include "scenetext/config.hpp"
#include "scenetext/labeling.hpp"

#include <cstdint>
#include <vector>

namespace scenetext {

/// Clustering features of one character region, already normalized.
struct LineFeature {
    double scale = 0;  // characteristic scale, normalized per image
    double angle = 0;  // major orientation, normalized
};

/// An ordered group of character regions forming one line of text.
struct TextLine {
    std::vector<int> members;  // candidate indices, >= 2 of them
    double angle = 0;          // radians in [0, pi)
    Rect bbox;                 // tight over member pixels
};

/// Flat-kernel mean shift: every point iterates to its mode; points whose
/// modes lie within bandwidth/2 of each other share a cluster. Returns a
/// cluster id per input point. Deterministic in the input order (points are
/// sorted internally).
std::vector<int> mean_shift(const std::vector<LineFeature>& points, double bandwidth);

/// One region's view of the grouping step.
struct GroupableRegion {
    int id = 0;  // caller's index for this region
    double cx = 0;
    double cy = 0;
    double skeleton_len = 0;
    Rect bbox;
};

/// Bottom-up same-line labeling within one cluster: two unlabeled regions
/// closer than the average of their skeleton lengths start a line at the
/// angle of their centroid join; an unlabeled region near a labeled one
/// joins its line when the join angle is within angle_limit_deg of the line
/// angle, which is then updated (running circular mean of the join angles).
/// Lines with at least two members are returned.
std::vector<TextLine> group_lines(const std::vector<GroupableRegion>& regions,
                                  double angle_limit_deg);

struct StageStats {
    int candidates = 0;
    int degenerate = 0;
    int characters = 0;
    int lines = 0;
    double extract_ms = 0;
    double cues_ms = 0;
    double label_ms = 0;
    double group_ms = 0;
};

struct DetectResult {
    std::vector<TextLine> lines;
    ImageF characterness_map;  // per-pixel max posterior over covering regions
    std::vector<Region> candidates;
    std::vector<std::optional<CueVector>> cues;  // nullopt for degenerate regions
    std::vector<double> scores;  // posterior per candidate
    std::vector<int> labels;     // MRF label per candidate
    RegionGraph graph;
    StageStats stats;
};

/// Full pipeline: candidates -> cues -> posterior -> min-cut labeling ->
/// mean shift on (scale, orientation) -> per-cluster grouping.
DetectResult detect(const ImageU8& rgb, const CharacternessModel& model,
                    const PipelineConfig& cfg);

}  // namespace scenetext
