#include "scenetext/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scenetext {

ExtractParams PipelineConfig::extract_params() const {
    ExtractParams p;
    p.mser.delta = mser_delta;
    p.mser.min_area = mser_min_area;
    p.mser.max_area_frac = mser_max_area_frac;
    p.mser.max_variation = mser_max_variation;
    p.mser.min_diversity = mser_min_diversity;
    p.mser.gamma = mser_gamma;
    p.guided_radius = guided_radius;
    p.guided_epsilon = guided_epsilon;
    p.dedup_iou = dedup_iou;
    return p;
}

CueParams PipelineConfig::cue_params() const {
    CueParams p;
    p.pd_bins = pd_bins;
    p.swd_bins = swd_bins;
    p.beta = beta;
    p.cd_scale = cd_scale;
    return p;
}

TrainParams PipelineConfig::train_params() const {
    TrainParams p;
    p.bins = model_bins;
    p.sw_max = model_sw_max;
    p.pd_max = model_pd_max;
    p.ehog_max = model_ehog_max;
    return p;
}

HarvestParams PipelineConfig::harvest_params() const {
    HarvestParams p;
    p.extract = extract_params();
    p.cues = cue_params();
    p.erase_iou = harvest_erase_iou;
    p.canny_high_scale = canny_high_scale;
    p.canny_low_ratio = canny_low_ratio;
    return p;
}

#define SCENETEXT_KEY(field, name, describe)                           \
    ConfigKey {                                                        \
        name, describe,                                                \
            +[](const PipelineConfig& c) -> double {                   \
                return static_cast<double>(c.field);                   \
            },                                                         \
            +[](PipelineConfig& c, double v) {                         \
                c.field = static_cast<decltype(c.field)>(v);           \
            }                                                          \
    }

const std::vector<ConfigKey>& config_registry() {
    static const std::vector<ConfigKey> keys = {
        SCENETEXT_KEY(mser_delta, "mser.delta", "stability window in intensity levels"),
        SCENETEXT_KEY(mser_min_area, "mser.min_area", "minimum region area in pixels"),
        SCENETEXT_KEY(mser_max_area_frac, "mser.max_area_frac", "maximum region area as image fraction"),
        SCENETEXT_KEY(mser_max_variation, "mser.max_variation", "maximum stability variation"),
        SCENETEXT_KEY(mser_min_diversity, "mser.min_diversity",
                      "minimum size diversity between nested regions"),
        SCENETEXT_KEY(mser_gamma, "mser.gamma", "gradient weight in the preprocessed image"),
        SCENETEXT_KEY(guided_radius, "guided.radius", "guided filter window radius"),
        SCENETEXT_KEY(guided_epsilon, "guided.epsilon", "guided filter regularizer on [0,255]"),
        SCENETEXT_KEY(dedup_iou, "dedup.iou", "cross-polarity duplicate IoU threshold"),
        SCENETEXT_KEY(canny_high_scale, "canny.high_scale", "high threshold as a multiple of Otsu"),
        SCENETEXT_KEY(canny_low_ratio, "canny.low_ratio", "low threshold as a fraction of high"),
        SCENETEXT_KEY(pd_bins, "pd.bins", "color histogram bins per channel"),
        SCENETEXT_KEY(swd_bins, "swd.bins", "stroke width histogram bins"),
        SCENETEXT_KEY(beta, "cues.beta", "SWD weight in the unified divergence"),
        SCENETEXT_KEY(cd_scale, "cues.cd_scale", "divisor aligning CD with SWD"),
        SCENETEXT_KEY(model_bins, "model.bins", "likelihood histogram bins"),
        SCENETEXT_KEY(model_sw_max, "model.sw_max", "SW likelihood range upper bound"),
        SCENETEXT_KEY(model_pd_max, "model.pd_max", "PD likelihood range upper bound"),
        SCENETEXT_KEY(model_ehog_max, "model.ehog_max", "eHOG likelihood range upper bound"),
        SCENETEXT_KEY(harvest_erase_iou, "harvest.erase_iou", "IoU above which a candidate is erased"),
        SCENETEXT_KEY(line_bandwidth, "lines.bandwidth", "mean shift bandwidth"),
        SCENETEXT_KEY(line_angle_limit_deg, "lines.angle_limit_deg", "text line angle agreement limit"),
        SCENETEXT_KEY(line_scale_feature_gain, "lines.scale_feature_gain",
                      "characteristic scale feature gain (per image diagonal)"),
        SCENETEXT_KEY(line_angle_feature_div, "lines.angle_feature_div",
                      "orientation feature divisor (degrees)"),
        SCENETEXT_KEY(eval_match_iou, "eval.match_iou", "box match IoU threshold"),
        SCENETEXT_KEY(jobs, "cli.jobs", "worker threads (0 = hardware)"),
    };
    return keys;
}

#undef SCENETEXT_KEY

namespace {

const ConfigKey& key_by_name(const std::string& name) {
    for (const auto& k : config_registry())
        if (k.name == name) return k;
    throw std::invalid_argument("unknown config key: " + name);
}

void validate(const PipelineConfig& c) {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("config: " + what);
    };
    if (c.mser_delta < 1) fail("mser.delta must be >= 1");
    if (c.mser_min_area < 1) fail("mser.min_area must be >= 1");
    if (c.mser_max_area_frac <= 0 || c.mser_max_area_frac > 1) fail("mser.max_area_frac outside (0,1]");
    if (c.mser_gamma < 0) fail("mser.gamma must be >= 0");
    if (c.mser_min_diversity < 0 || c.mser_min_diversity >= 1)
        fail("mser.min_diversity outside [0,1)");
    if (c.guided_radius < 1) fail("guided.radius must be >= 1");
    if (c.canny_low_ratio <= 0 || c.canny_low_ratio >= 1) fail("canny.low_ratio outside (0,1)");
    if (c.pd_bins < 2 || c.swd_bins < 2 || c.model_bins < 2) fail("histogram bins must be >= 2");
    if (c.beta < 0 || c.beta > 1) fail("cues.beta outside [0,1]");
    if (c.line_bandwidth <= 0) fail("lines.bandwidth must be positive");
    if (c.eval_match_iou <= 0 || c.eval_match_iou > 1) fail("eval.match_iou outside (0,1]");
    if (c.jobs < 0) fail("cli.jobs must be >= 0");
}

}  // namespace

void apply_override(PipelineConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value, got: " + assignment);
    const std::string name = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + name + ": " + value);
    }
    if (used != value.size())
        throw std::invalid_argument("bad numeric value for " + name + ": " + value);
    // Validate on a copy; a rejected override must leave cfg untouched.
    PipelineConfig trial = cfg;
    key_by_name(name).set(trial, v);
    validate(trial);
    cfg = trial;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    PipelineConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        std::string item = line.substr(b, e - b + 1);
        // allow "key = value"
        std::string squeezed;
        for (char ch : item)
            if (ch != ' ' && ch != '\t') squeezed += ch;
        try {
            apply_override(cfg, squeezed);
        } catch (const std::invalid_argument& ex) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + ex.what());
        }
    }
    validate(cfg);
    return cfg;
}

std::string dump_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    for (const auto& k : config_registry()) {
        const double v = k.get(cfg);
        out << k.name << " = ";
        if (v == std::floor(v) && std::fabs(v) < 1e15) {
            out << static_cast<long long>(v);
        } else {
            out.precision(17);  // round-trips any double
            out << v;
        }
        out << "  # " << k.describe << '\n';
    }
    return out.str();
}

}  // namespace scenetext
