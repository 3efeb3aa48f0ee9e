#include "scenetext/commands.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

// Shared --config/--set handling; overrides apply after the file.
struct ConfigArgs {
    std::string config_path;
    std::vector<std::string> overrides;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "flat key=value config file");
        app->add_option("--set", overrides, "override, e.g. --set mser.delta=12")
            ->take_all();
    }

    scenetext::PipelineConfig resolve() const {
        scenetext::PipelineConfig cfg;
        if (!config_path.empty()) cfg = scenetext::load_config(config_path);
        for (const auto& o : overrides) scenetext::apply_override(cfg, o);
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene text detection via characterness scoring"};
    app.require_subcommand(1);

    ConfigArgs train_cfg, detect_cfg, saliency_cfg, evals_cfg, evalb_cfg, dump_cfg;

    auto* train = app.add_subcommand("train", "learn cue likelihoods from a manifest with masks");
    std::string train_manifest, train_out;
    train->add_option("--manifest", train_manifest, "dataset manifest")->required();
    train->add_option("--out", train_out, "output model path")->required();
    train_cfg.attach(train);

    auto* detect = app.add_subcommand("detect", "detect text lines in one image");
    std::string det_image, det_model, det_boxes, det_map;
    scenetext::cli::DetectDumps det_dumps;
    detect->add_option("--image", det_image)->required();
    detect->add_option("--model", det_model)->required();
    detect->add_option("--out-boxes", det_boxes, "boxes JSON path")->required();
    detect->add_option("--out-map", det_map, "characterness map PNG path");
    detect->add_option("--dump-candidates", det_dumps.candidates_png,
                       "debug: candidate masks as a colored overlay PNG");
    detect->add_option("--dump-cues", det_dumps.cues_csv, "debug: per-region cue CSV");
    detect->add_option("--dump-graph", det_dumps.graph_txt, "debug: labeling graph edge list");
    detect_cfg.attach(detect);

    auto* saliency = app.add_subcommand("saliency", "write the characterness map only");
    std::string sal_image, sal_model, sal_map;
    saliency->add_option("--image", sal_image)->required();
    saliency->add_option("--model", sal_model)->required();
    saliency->add_option("--out-map", sal_map)->required();
    saliency_cfg.attach(saliency);

    auto* evals = app.add_subcommand("eval-saliency", "saliency metrics over map/mask directories");
    std::string es_maps, es_gt, es_out;
    evals->add_option("--maps", es_maps)->required();
    evals->add_option("--gt", es_gt)->required();
    evals->add_option("--out-dir", es_out, "where pr_curve.csv and summary.txt go")->required();
    evals_cfg.attach(evals);

    auto* evalb = app.add_subcommand("eval-boxes", "box precision/recall over directories");
    std::string eb_pred, eb_gt;
    double eb_iou = -1;
    evalb->add_option("--pred", eb_pred)->required();
    evalb->add_option("--gt", eb_gt)->required();
    evalb->add_option("--iou", eb_iou, "match IoU threshold (default eval.match_iou)");
    evalb_cfg.attach(evalb);

    auto* dump = app.add_subcommand("config-dump", "print the effective configuration");
    dump_cfg.attach(dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : scenetext::cli::kExitUsage;
    }

    try {
        if (*train) {
            return scenetext::cli::cmd_train(train_manifest, train_cfg.resolve(), train_out,
                                             std::cerr);
        }
        if (*detect) {
            return scenetext::cli::cmd_detect(det_image, det_model, detect_cfg.resolve(),
                                              det_boxes, det_map, std::cerr, det_dumps);
        }
        if (*saliency) {
            return scenetext::cli::cmd_saliency(sal_image, sal_model, saliency_cfg.resolve(),
                                                sal_map, std::cerr);
        }
        if (*evals) {
            return scenetext::cli::cmd_eval_saliency(es_maps, es_gt, es_out, evals_cfg.resolve(),
                                                     std::cerr);
        }
        if (*evalb) {
            const auto cfg = evalb_cfg.resolve();
            const double iou = eb_iou > 0 ? eb_iou : cfg.eval_match_iou;
            return scenetext::cli::cmd_eval_boxes(eb_pred, eb_gt, iou, cfg, std::cout, std::cerr);
        }
        if (*dump) {
            return scenetext::cli::cmd_config_dump(dump_cfg.resolve(), std::cout);
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return scenetext::cli::kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return scenetext::cli::kExitIo;
    }
    return scenetext::cli::kExitUsage;
}
