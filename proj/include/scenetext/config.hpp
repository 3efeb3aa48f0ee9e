#pragma once

#include "scenetext/charmodel.hpp"
#include "scenetext/cues.hpp"
#include "scenetext/regions.hpp"

#include <string>
#include <vector>

namespace scenetext {

/// Every pipeline tunable, with defaults. Flat key=value files plus
/// command-line overrides; unknown keys are rejected.
struct PipelineConfig {
    // candidate extraction
    int mser_delta = 10;
    int mser_min_area = 30;
    double mser_max_area_frac = 0.25;
    double mser_max_variation = 0.5;
    double mser_min_diversity = 0.2;
    double mser_gamma = 0.5;
    int guided_radius = 1;
    double guided_epsilon = 650.25;
    double dedup_iou = 0.9;

    // edges for the eHOG cue: high = otsu * high_scale, low = high * low_ratio
    double canny_high_scale = 1.0;
    double canny_low_ratio = 0.4;

    // cues and pairwise divergences
    int pd_bins = 16;
    int swd_bins = 16;
    double beta = 0.5;
    double cd_scale = 1.0;

    // characterness model
    int model_bins = 50;
    double model_sw_max = 2.0;
    double model_pd_max = 12.0;
    double model_ehog_max = 1.0;
    double harvest_erase_iou = 0.5;

    // text lines
    double line_bandwidth = 2.2;
    double line_angle_limit_deg = 30.0;
    double line_scale_feature_gain = 100.0;  // char_scale / image_diagonal * gain
    double line_angle_feature_div = 10.0;    // orientation degrees / div

    // evaluation and execution
    double eval_match_iou = 0.5;
    int jobs = 0;  // 0 = hardware concurrency

    ExtractParams extract_params() const;
    CueParams cue_params() const;
    TrainParams train_params() const;
    HarvestParams harvest_params() const;
};

struct ConfigKey {
    std::string name;
    std::string describe;
    double (*get)(const PipelineConfig&);
    void (*set)(PipelineConfig&, double);
};

/// Registry of every config key; the single source for parse/dump.
const std::vector<ConfigKey>& config_registry();

/// Parse a flat key=value file ('#' comments, blank lines ignored).
/// Unknown keys or malformed values throw.
PipelineConfig load_config(const std::string& path);

/// Apply one "key=value" override string.
void apply_override(PipelineConfig& cfg, const std::string& assignment);

/// Dump in the same key=value format load_config accepts.
std::string dump_config(const PipelineConfig& cfg);

}  // namespace scenetext
