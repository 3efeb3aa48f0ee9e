// Python surface for the scene text pipeline: images move as numpy arrays
// (HxW uint8 gray, HxWx3 uint8 color, HxW float32 maps).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scenetext/charmodel.hpp"
#include "scenetext/config.hpp"
#include "scenetext/eval.hpp"
#include "scenetext/imgproc.hpp"
#include "scenetext/io.hpp"
#include "scenetext/labeling.hpp"
#include "scenetext/lines.hpp"

namespace py = pybind11;
using namespace scenetext;

namespace {

ImageU8 u8_from_array(const py::array_t<std::uint8_t>& arr) {
    const auto info = arr.request();
    if (info.ndim == 2) {
        ImageU8 img(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]), 1);
        auto view = arr.unchecked<2>();
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) img.at(x, y) = view(y, x);
        return img;
    }
    if (info.ndim == 3 && info.shape[2] == 3) {
        ImageU8 img(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]), 3);
        auto view = arr.unchecked<3>();
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                for (int c = 0; c < 3; ++c) img.at(x, y, c) = view(y, x, c);
        return img;
    }
    throw std::invalid_argument("expected a HxW or HxWx3 uint8 array");
}

py::array_t<std::uint8_t> u8_to_array(const ImageU8& img) {
    if (img.channels() == 1) {
        py::array_t<std::uint8_t> out({img.height(), img.width()});
        auto view = out.mutable_unchecked<2>();
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) view(y, x) = img.at(x, y);
        return out;
    }
    py::array_t<std::uint8_t> out({img.height(), img.width(), 3});
    auto view = out.mutable_unchecked<3>();
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < 3; ++c) view(y, x, c) = img.at(x, y, c);
    return out;
}

py::array_t<float> f_to_array(const ImageF& img) {
    py::array_t<float> out({img.height(), img.width()});
    auto view = out.mutable_unchecked<2>();
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) view(y, x) = img.at(x, y);
    return out;
}

ImageF f_from_array(const py::array_t<float>& arr) {
    const auto info = arr.request();
    if (info.ndim != 2) throw std::invalid_argument("expected a HxW float32 array");
    ImageF img(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]), 1);
    auto view = arr.unchecked<2>();
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) img.at(x, y) = view(y, x);
    return img;
}

PixelMask mask_from_array(const py::array_t<bool>& arr) {
    const auto info = arr.request();
    if (info.ndim != 2) throw std::invalid_argument("expected a HxW bool array");
    PixelMask m(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]));
    auto view = arr.unchecked<2>();
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (view(y, x)) m.set(x, y);
    return m;
}

py::array_t<bool> mask_to_array(const PixelMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    auto view = out.mutable_unchecked<2>();
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) view(y, x) = m.at(x, y);
    return out;
}

PipelineConfig config_from_dict(const py::dict& overrides) {
    PipelineConfig cfg;
    for (auto item : overrides) {
        const auto name = py::cast<std::string>(item.first);
        const auto value = py::cast<double>(item.second);
        apply_override(cfg, name + "=" + py::str(py::float_(value)).cast<std::string>());
    }
    return cfg;
}

py::dict region_to_dict(const Region& r) {
    py::dict d;
    d["polarity"] = r.polarity == Polarity::DarkOnBright ? "dark" : "bright";
    d["threshold"] = r.source_threshold;
    d["area"] = r.geometry.area;
    d["bbox"] = py::make_tuple(r.bbox.x, r.bbox.y, r.bbox.w, r.bbox.h);
    d["centroid"] = py::make_tuple(r.geometry.centroid_x, r.geometry.centroid_y);
    d["orientation"] = r.geometry.orientation;
    d["characteristic_scale"] = r.geometry.characteristic_scale();
    d["mask"] = mask_to_array(r.make_mask());
    return d;
}

}  // namespace

PYBIND11_MODULE(scenetext, m) {
    m.doc() = "scene text detection via characterness scoring";

    // ---- raster building blocks
    m.def("to_intensity",
          [](const py::array_t<std::uint8_t>& rgb) {
              return u8_to_array(to_intensity(u8_from_array(rgb)));
          },
          py::arg("rgb"));
    m.def("guided_filter",
          [](const py::array_t<float>& img, int radius, double epsilon) {
              return f_to_array(guided_filter(f_from_array(img), radius, epsilon));
          },
          py::arg("image"), py::arg("radius") = 1, py::arg("epsilon") = 650.25);
    m.def("gradient_magnitude",
          [](const py::array_t<float>& img) {
              return f_to_array(gradient_magnitude(f_from_array(img)));
          },
          py::arg("image"));
    m.def("canny_edges",
          [](const py::array_t<float>& img, double low, double high) {
              const EdgeMap em = canny_edges(f_from_array(img), low, high);
              return py::make_tuple(mask_to_array(em.mask), f_to_array(em.theta));
          },
          py::arg("image"), py::arg("low"), py::arg("high"));
    m.def("distance_transform",
          [](const py::array_t<bool>& mask) {
              return f_to_array(distance_transform(mask_from_array(mask)));
          },
          py::arg("mask"));
    m.def("skeletonize",
          [](const py::array_t<bool>& mask) {
              return mask_to_array(skeletonize(mask_from_array(mask)));
          },
          py::arg("mask"));

    // ---- candidate extraction
    m.def("extract_candidates",
          [](const py::array_t<std::uint8_t>& rgb, const py::dict& config) {
              const PipelineConfig cfg = config_from_dict(config);
              const auto regions = extract_candidates(u8_from_array(rgb), cfg.extract_params());
              py::list out;
              for (const auto& r : regions) out.append(region_to_dict(r));
              return out;
          },
          py::arg("rgb"), py::arg("config") = py::dict());

    // ---- characterness model
    py::class_<CharacternessModel>(m, "Model")
        .def_property_readonly("prior_char",
                               [](const CharacternessModel& m_) { return m_.prior_char; })
        .def("posterior",
             [](const CharacternessModel& m_, double sw, double pd, double ehog) {
                 return posterior(m_, CueVector{sw, pd, ehog});
             },
             py::arg("sw"), py::arg("pd"), py::arg("ehog"))
        .def("save",
             [](const CharacternessModel& m_, const std::string& path) { save_model(m_, path); });

    m.def("load_model", &load_model, py::arg("path"));
    m.def("train",
          [](const std::vector<std::tuple<double, double, double, int>>& samples,
             const py::dict& config) {
              std::vector<TrainingSample> converted;
              for (const auto& [sw, pd, ehog, label] : samples)
                  converted.push_back({CueVector{sw, pd, ehog},
                                       label ? SampleLabel::Character : SampleLabel::Background});
              return train(converted, config_from_dict(config).train_params());
          },
          py::arg("samples"), py::arg("config") = py::dict(),
          "samples: list of (sw, pd, ehog, label) with label 1 = character");
    m.def("harvest_samples",
          [](const py::array_t<std::uint8_t>& rgb, const py::array_t<bool>& gt,
             const py::dict& config) {
              const auto got = harvest_image_samples(u8_from_array(rgb), mask_from_array(gt),
                                                     config_from_dict(config).harvest_params());
              py::list out;
              for (const auto& s : got)
                  out.append(py::make_tuple(s.cues.sw, s.cues.pd, s.cues.ehog,
                                            s.label == SampleLabel::Character ? 1 : 0));
              return out;
          },
          py::arg("rgb"), py::arg("gt"), py::arg("config") = py::dict());

    // ---- labeling
    m.def("min_cut_label",
          [](const std::vector<std::pair<double, double>>& unaries,
             const std::vector<std::tuple<int, int, double>>& edges) {
              RegionGraph g;
              for (const auto& [u0, u1] : unaries) g.vertices.push_back({u0, u1});
              for (const auto& [a, b, w] : edges) g.edges.push_back({a, b, w});
              return min_cut_label(g);
          },
          py::arg("unaries"), py::arg("edges"),
          "unaries: list of (cost_label0, cost_label1); edges: list of (i, j, weight)");
    m.def("labeling_energy",
          [](const std::vector<std::pair<double, double>>& unaries,
             const std::vector<std::tuple<int, int, double>>& edges,
             const std::vector<int>& labels) {
              RegionGraph g;
              for (const auto& [u0, u1] : unaries) g.vertices.push_back({u0, u1});
              for (const auto& [a, b, w] : edges) g.edges.push_back({a, b, w});
              return labeling_energy(g, labels);
          });

    // ---- text lines
    m.def("mean_shift",
          [](const std::vector<std::pair<double, double>>& points, double bandwidth) {
              std::vector<LineFeature> feats;
              for (const auto& [s, a] : points) feats.push_back({s, a});
              return mean_shift(feats, bandwidth);
          },
          py::arg("points"), py::arg("bandwidth") = 2.2);
    m.def("detect",
          [](const py::array_t<std::uint8_t>& rgb, const CharacternessModel& model,
             const py::dict& config) {
              const DetectResult res = detect(u8_from_array(rgb), model, config_from_dict(config));
              py::list lines;
              for (const auto& line : res.lines) {
                  py::dict d;
                  d["x"] = line.bbox.x;
                  d["y"] = line.bbox.y;
                  d["w"] = line.bbox.w;
                  d["h"] = line.bbox.h;
                  d["angle"] = line.angle;
                  d["region_ids"] = line.members;
                  lines.append(d);
              }
              py::dict out;
              out["lines"] = lines;
              out["map"] = f_to_array(res.characterness_map);
              out["scores"] = res.scores;
              out["labels"] = res.labels;
              py::list cands;
              for (const auto& r : res.candidates)
                  cands.append(py::make_tuple(r.bbox.x, r.bbox.y, r.bbox.w, r.bbox.h));
              out["candidate_boxes"] = cands;
              return out;
          },
          py::arg("rgb"), py::arg("model"), py::arg("config") = py::dict());

    // ---- evaluation
    m.def("pr_curve",
          [](const py::array_t<std::uint8_t>& map, const py::array_t<bool>& gt) {
              const PRCurve c = pr_curve(u8_from_array(map), mask_from_array(gt));
              py::array_t<double> out({256, 2});
              auto view = out.mutable_unchecked<2>();
              for (int t = 0; t < 256; ++t) {
                  view(t, 0) = c.points[t].precision;
                  view(t, 1) = c.points[t].recall;
              }
              return out;
          },
          py::arg("map"), py::arg("gt"));
    m.def("adaptive_fmeasure",
          [](const py::array_t<std::uint8_t>& map, const py::array_t<bool>& gt, double beta2) {
              const AdaptiveResult r =
                  adaptive_fmeasure(u8_from_array(map), mask_from_array(gt), beta2);
              py::dict out;
              out["precision"] = r.prf.precision;
              out["recall"] = r.prf.recall;
              out["fmeasure"] = r.prf.fmeasure;
              out["threshold"] = r.threshold;
              return out;
          },
          py::arg("map"), py::arg("gt"), py::arg("beta2") = 0.3);
    m.def("voc_overlap",
          [](const py::array_t<bool>& a, const py::array_t<bool>& b) {
              return voc_overlap(mask_from_array(a), mask_from_array(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("box_prf",
          [](const std::vector<std::tuple<int, int, int, int>>& pred,
             const std::vector<std::tuple<int, int, int, int>>& gt, double iou) {
              auto conv = [](const std::vector<std::tuple<int, int, int, int>>& v) {
                  std::vector<Box> out;
                  for (const auto& [x, y, w, h] : v) out.push_back({x, y, w, h});
                  return out;
              };
              const PRF r = box_prf(conv(pred), conv(gt), iou);
              return py::make_tuple(r.precision, r.recall, r.fmeasure);
          },
          py::arg("pred"), py::arg("gt"), py::arg("iou") = 0.5);

    // ---- configuration and io
    m.def("default_config", []() {
        py::dict out;
        PipelineConfig cfg;
        for (const auto& key : config_registry()) out[py::str(key.name)] = key.get(cfg);
        return out;
    });
    m.def("read_image", [](const std::string& path) { return u8_to_array(read_image(path)); });
    m.def("write_png", [](const std::string& path, const py::array_t<std::uint8_t>& img) {
        write_png(path, u8_from_array(img));
    });
}
