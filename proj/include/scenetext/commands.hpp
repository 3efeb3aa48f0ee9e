#pragma once

#include "scenetext/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace scenetext::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitData = 3;

/// Harvest samples over a manifest with masks, train, write the model file.
int cmd_train(const std::string& manifest_path, const PipelineConfig& cfg,
              const std::string& out_model_path, std::ostream& log);

/// Optional debug artifacts for cmd_detect (empty paths are skipped).
struct DetectDumps {
    std::string candidates_png;  // indexed overlay, one color per candidate
    std::string cues_csv;        // region id, cues, geometry
    std::string graph_txt;       // labeling graph as an edge list
};

/// Detect text lines in one image; writes a boxes JSON array and the
/// characterness map PNG. Exit 0 even when nothing is found.
int cmd_detect(const std::string& image_path, const std::string& model_path,
               const PipelineConfig& cfg, const std::string& out_boxes_path,
               const std::string& out_map_path, std::ostream& log,
               const DetectDumps& dumps = {});

/// Characterness map only.
int cmd_saliency(const std::string& image_path, const std::string& model_path,
                 const PipelineConfig& cfg, const std::string& out_map_path,
                 std::ostream& log);

/// Per-image and aggregate saliency metrics over matching filenames in the
/// two directories; writes pr_curve.csv and summary.txt under out_dir.
int cmd_eval_saliency(const std::string& maps_dir, const std::string& gt_dir,
                      const std::string& out_dir, const PipelineConfig& cfg,
                      std::ostream& log);

/// Detection-box precision/recall/f-measure over matching filenames.
int cmd_eval_boxes(const std::string& pred_dir, const std::string& gt_dir,
                   double iou_threshold, const PipelineConfig& cfg,
                   std::ostream& out, std::ostream& log);

int cmd_config_dump(const PipelineConfig& cfg, std::ostream& out);

}  // namespace scenetext::cli
