#include "scenetext/commands.hpp"

#include "scenetext/charmodel.hpp"
#include "scenetext/dataset.hpp"
#include "scenetext/eval.hpp"
#include "scenetext/io.hpp"
#include "scenetext/labeling.hpp"
#include "scenetext/lines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <thread>

#include "json.hpp"

namespace scenetext::cli {

namespace fs = std::filesystem;

namespace {

int worker_count(const PipelineConfig& cfg, size_t items) {
    int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, jobs);
    return static_cast<int>(std::min<size_t>(jobs, std::max<size_t>(items, 1)));
}

// Runs fn(i) for i in [0, n) on a bounded pool; results are indexable by i,
// so output order never depends on scheduling.
template <typename Fn>
void parallel_for(size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// Files in dir keyed by stem, sorted for determinism.
std::map<std::string, fs::path> by_stem(const std::string& dir) {
    std::map<std::string, fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        out[entry.path().stem().string()] = entry.path();
    }
    return out;
}

nlohmann::json lines_to_json(const DetectResult& result) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& line : result.lines) {
        nlohmann::json item;
        item["x"] = line.bbox.x;
        item["y"] = line.bbox.y;
        item["w"] = line.bbox.w;
        item["h"] = line.bbox.h;
        item["angle"] = line.angle;
        item["region_ids"] = line.members;
        arr.push_back(std::move(item));
    }
    return arr;
}

void log_stats(std::ostream& log, const StageStats& s) {
    log << "extract: " << s.candidates << " candidates in " << std::fixed << std::setprecision(1)
        << s.extract_ms << " ms\n";
    log << "cues: " << s.degenerate << " degenerate in " << s.cues_ms << " ms\n";
    log << "label: " << s.characters << " characters in " << s.label_ms << " ms\n";
    log << "group: " << s.lines << " lines in " << s.group_ms << " ms\n";
    log.unsetf(std::ios::fixed);
}

}  // namespace

int cmd_train(const std::string& manifest_path, const PipelineConfig& cfg,
              const std::string& out_model_path, std::ostream& log) {
    DatasetManifest manifest;
    try {
        manifest = load_manifest(manifest_path);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitIo;
    }

    std::vector<const ManifestEntry*> rows;
    for (const auto& e : manifest.entries) {
        if (e.mask.empty()) {
            log << "warning: no mask for " << e.image << ", skipped\n";
            continue;
        }
        rows.push_back(&e);
    }
    if (rows.empty()) {
        log << "error: manifest has no rows with masks\n";
        return kExitData;
    }

    const HarvestParams params = cfg.harvest_params();
    std::vector<std::vector<TrainingSample>> harvested(rows.size());
    std::vector<std::string> failures(rows.size());
    parallel_for(rows.size(), worker_count(cfg, rows.size()), [&](size_t i) {
        try {
            const ImageU8 img = read_image(rows[i]->image);
            const PixelMask gt = mask_from_u8(read_image(rows[i]->mask));
            harvested[i] = harvest_image_samples(img, gt, params);
        } catch (const std::exception& ex) {
            failures[i] = ex.what();
        }
    });

    std::vector<TrainingSample> samples;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!failures[i].empty()) {
            log << "error: " << rows[i]->image << ": " << failures[i] << '\n';
            return kExitIo;
        }
        samples.insert(samples.end(), harvested[i].begin(), harvested[i].end());
    }

    long nc = 0, nb = 0;
    for (const auto& s : samples) (s.label == SampleLabel::Character ? nc : nb)++;
    log << "harvested " << samples.size() << " samples (" << nc << " character, " << nb
        << " background) from " << rows.size() << " images\n";
    if (nc == 0 || nb == 0) {
        log << "error: need at least one sample of each class\n";
        return kExitData;
    }

    const CharacternessModel model = train(samples, cfg.train_params());
    log << "priors: character " << model.prior_char << ", background " << model.prior_bg << '\n';
    try {
        save_model(model, out_model_path);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitIo;
    }
    log << "model written to " << out_model_path << '\n';
    return kExitOk;
}

namespace {

void write_candidate_overlay(const std::string& path, const DetectResult& result) {
    ImageU8 overlay(result.characterness_map.width(), result.characterness_map.height(), 3);
    // A fixed palette, indexed by candidate id.
    static constexpr std::uint8_t kPalette[12][3] = {
        {230, 25, 75},  {60, 180, 75},   {255, 225, 25}, {0, 130, 200},
        {245, 130, 48}, {145, 30, 180},  {70, 240, 240}, {240, 50, 230},
        {210, 245, 60}, {250, 190, 190}, {0, 128, 128},  {170, 110, 40}};
    for (size_t i = 0; i < result.candidates.size(); ++i) {
        const auto& color = kPalette[i % 12];
        for (const auto p : result.candidates[i].pixels) {
            overlay.data()[3 * p] = color[0];
            overlay.data()[3 * p + 1] = color[1];
            overlay.data()[3 * p + 2] = color[2];
        }
    }
    write_png(path, overlay);
}

void write_cue_csv(const std::string& path, const DetectResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "id,sw,pd,ehog,score,label,area,cx,cy,bbox_x,bbox_y,bbox_w,bbox_h\n";
    out << std::setprecision(10);
    for (size_t i = 0; i < result.candidates.size(); ++i) {
        const auto& g = result.candidates[i].geometry;
        out << i << ',';
        if (result.cues[i])
            out << result.cues[i]->sw << ',' << result.cues[i]->pd << ',' << result.cues[i]->ehog;
        else
            out << ",,";
        out << ',' << result.scores[i] << ',' << result.labels[i] << ',' << g.area << ','
            << g.centroid_x << ',' << g.centroid_y << ',' << g.bbox.x << ',' << g.bbox.y << ','
            << g.bbox.w << ',' << g.bbox.h << '\n';
    }
}

int run_detect(const std::string& image_path, const std::string& model_path,
               const PipelineConfig& cfg, const std::string& out_boxes_path,
               const std::string& out_map_path, std::ostream& log,
               const DetectDumps& dumps = {}) {
    ImageU8 img;
    CharacternessModel model;
    try {
        img = read_image(image_path);
        model = load_model(model_path);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitIo;
    }

    const DetectResult result = detect(img, model, cfg);
    log_stats(log, result.stats);

    try {
        if (!out_map_path.empty()) {
            ImageF scaled(result.characterness_map.width(), result.characterness_map.height(), 1);
            for (size_t i = 0; i < scaled.size(); ++i)
                scaled.data()[i] = result.characterness_map.data()[i] * 255.0f;
            write_png(out_map_path, to_u8(scaled));
        }
        if (!out_boxes_path.empty()) {
            std::ofstream out(out_boxes_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + out_boxes_path + " for writing");
            out << lines_to_json(result).dump(2) << '\n';
        }
        if (!dumps.candidates_png.empty()) write_candidate_overlay(dumps.candidates_png, result);
        if (!dumps.cues_csv.empty()) write_cue_csv(dumps.cues_csv, result);
        if (!dumps.graph_txt.empty()) {
            std::ofstream out(dumps.graph_txt, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + dumps.graph_txt + " for writing");
            dump_graph(result.graph, out);
        }
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int cmd_detect(const std::string& image_path, const std::string& model_path,
               const PipelineConfig& cfg, const std::string& out_boxes_path,
               const std::string& out_map_path, std::ostream& log, const DetectDumps& dumps) {
    return run_detect(image_path, model_path, cfg, out_boxes_path, out_map_path, log, dumps);
}

int cmd_saliency(const std::string& image_path, const std::string& model_path,
                 const PipelineConfig& cfg, const std::string& out_map_path, std::ostream& log) {
    return run_detect(image_path, model_path, cfg, "", out_map_path, log);
}

int cmd_eval_saliency(const std::string& maps_dir, const std::string& gt_dir,
                      const std::string& out_dir, const PipelineConfig& cfg, std::ostream& log) {
    if (!fs::is_directory(maps_dir) || !fs::is_directory(gt_dir)) {
        log << "error: maps and gt must be directories\n";
        return kExitIo;
    }
    const auto maps = by_stem(maps_dir);
    const auto gts = by_stem(gt_dir);

    struct Item {
        fs::path map, gt;
    };
    std::vector<Item> items;
    for (const auto& [stem, path] : maps) {
        const auto it = gts.find(stem);
        if (it == gts.end()) {
            log << "warning: no ground truth for " << path.filename().string() << ", skipped\n";
            continue;
        }
        items.push_back({path, it->second});
    }
    if (items.empty()) {
        log << "error: no map/ground-truth pairs found\n";
        return kExitData;
    }

    std::vector<PRCurve> curves(items.size());
    std::vector<PRF> prfs(items.size());
    std::vector<double> vocs(items.size());
    std::vector<std::string> failures(items.size());
    parallel_for(items.size(), worker_count(cfg, items.size()), [&](size_t i) {
        try {
            const ImageU8 map = read_image(items[i].map.string());
            const PixelMask gt = mask_from_u8(read_image(items[i].gt.string()));
            curves[i] = pr_curve(map, gt);
            const AdaptiveResult ad = adaptive_fmeasure(map, gt);
            prfs[i] = ad.prf;
            vocs[i] = voc_overlap(ad.segmentation, gt);
        } catch (const std::exception& ex) {
            failures[i] = ex.what();
        }
    });
    for (size_t i = 0; i < items.size(); ++i) {
        if (!failures[i].empty()) {
            log << "error: " << items[i].map.string() << ": " << failures[i] << '\n';
            return kExitData;
        }
    }

    const PRCurve mean = mean_curve(curves);
    const PRF prf = mean_prf(prfs);
    double voc = 0;
    for (double v : vocs) voc += v;
    voc /= static_cast<double>(vocs.size());

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream csv(fs::path(out_dir) / "pr_curve.csv");
    if (!csv) {
        log << "error: cannot write to " << out_dir << '\n';
        return kExitIo;
    }
    csv << "threshold,precision,recall\n" << std::setprecision(10);
    for (int t = 0; t < 256; ++t)
        csv << t << ',' << mean.points[t].precision << ',' << mean.points[t].recall << '\n';

    std::ofstream summary(fs::path(out_dir) / "summary.txt");
    summary << std::setprecision(6);
    summary << "images " << items.size() << '\n';
    summary << "precision " << prf.precision << '\n';
    summary << "recall " << prf.recall << '\n';
    summary << "fmeasure " << prf.fmeasure << '\n';
    summary << "voc " << voc << '\n';
    log << "evaluated " << items.size() << " images: F " << prf.fmeasure << ", VOC " << voc << '\n';
    return kExitOk;
}

int cmd_eval_boxes(const std::string& pred_dir, const std::string& gt_dir, double iou_threshold,
                   const PipelineConfig& cfg, std::ostream& out, std::ostream& log) {
    if (!fs::is_directory(pred_dir) || !fs::is_directory(gt_dir)) {
        log << "error: pred and gt must be directories\n";
        return kExitIo;
    }
    const auto preds = by_stem(pred_dir);
    const auto gts = by_stem(gt_dir);

    struct Item {
        fs::path pred, gt;
    };
    std::vector<Item> items;
    for (const auto& [stem, path] : preds) {
        const auto it = gts.find(stem);
        if (it == gts.end()) {
            log << "warning: no ground truth for " << path.filename().string() << ", skipped\n";
            continue;
        }
        items.push_back({path, it->second});
    }
    if (items.empty()) {
        log << "error: no prediction/ground-truth pairs found\n";
        return kExitData;
    }

    std::vector<PRF> prfs(items.size());
    std::vector<std::string> failures(items.size());
    parallel_for(items.size(), worker_count(cfg, items.size()), [&](size_t i) {
        try {
            const auto pred = read_boxes(items[i].pred.string());
            const auto gt = read_boxes(items[i].gt.string());
            prfs[i] = box_prf(pred, gt, iou_threshold);
        } catch (const std::exception& ex) {
            failures[i] = ex.what();
        }
    });
    for (size_t i = 0; i < items.size(); ++i) {
        if (!failures[i].empty()) {
            log << "error: " << items[i].pred.string() << ": " << failures[i] << '\n';
            return kExitData;
        }
    }

    const PRF prf = mean_prf(prfs);
    out << std::fixed << std::setprecision(2);
    out << "images " << items.size() << '\n';
    out << "precision " << prf.precision << '\n';
    out << "recall " << prf.recall << '\n';
    out << "fmeasure " << prf.fmeasure << '\n';
    out.unsetf(std::ios::fixed);
    return kExitOk;
}

int cmd_config_dump(const PipelineConfig& cfg, std::ostream& out) {
    out << dump_config(cfg);
    return kExitOk;
}

}  // namespace scenetext::cli
