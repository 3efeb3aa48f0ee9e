#include "scenetext/charmodel.hpp"

#include "scenetext/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace scenetext {

int CueLikelihood::bin_of(double value) const {
    const auto bins = static_cast<int>(p_char.size());
    if (hi <= lo) return 0;
    const int b = static_cast<int>((value - lo) / (hi - lo) * bins);
    return std::clamp(b, 0, bins - 1);  // out-of-range cues clamp to the extreme bins
}

namespace {

CueLikelihood learn_likelihood(const std::string& name, double lo, double hi, int bins,
                               const std::vector<TrainingSample>& samples,
                               double CueVector::* field) {
    CueLikelihood lk;
    lk.name = name;
    lk.lo = lo;
    lk.hi = hi;
    lk.p_char.assign(bins, 0.0);
    lk.p_bg.assign(bins, 0.0);

    std::vector<long> cc(bins, 0), cb(bins, 0);
    long nc = 0, nb = 0;
    for (const auto& s : samples) {
        const int b = lk.bin_of(s.cues.*field);
        if (s.label == SampleLabel::Character) {
            cc[b]++;
            nc++;
        } else {
            cb[b]++;
            nb++;
        }
    }
    // Add-one smoothing keeps every bin positive.
    for (int j = 0; j < bins; ++j) {
        lk.p_char[j] = (cc[j] + 1.0) / (nc + bins);
        lk.p_bg[j] = (cb[j] + 1.0) / (nb + bins);
    }
    return lk;
}

}  // namespace

CharacternessModel train(const std::vector<TrainingSample>& samples, const TrainParams& params) {
    long nc = 0, nb = 0;
    for (const auto& s : samples) (s.label == SampleLabel::Character ? nc : nb)++;
    if (nc == 0 || nb == 0)
        throw std::invalid_argument("train: need at least one sample of each class");

    CharacternessModel m;
    m.prior_char = static_cast<double>(nc) / static_cast<double>(nc + nb);
    m.prior_bg = static_cast<double>(nb) / static_cast<double>(nc + nb);
    m.sw = learn_likelihood("sw", 0.0, params.sw_max, params.bins, samples, &CueVector::sw);
    m.pd = learn_likelihood("pd", 0.0, params.pd_max, params.bins, samples, &CueVector::pd);
    m.ehog = learn_likelihood("ehog", 0.0, params.ehog_max, params.bins, samples, &CueVector::ehog);
    return m;
}

namespace {

double joint(const CharacternessModel& m, const CueVector& c, bool character) {
    const double prior = character ? m.prior_char : m.prior_bg;
    auto pick = [&](const CueLikelihood& lk, double v) {
        const int b = lk.bin_of(v);
        return character ? lk.p_char[b] : lk.p_bg[b];
    };
    return prior * pick(m.sw, c.sw) * pick(m.pd, c.pd) * pick(m.ehog, c.ehog);
}

}  // namespace

double posterior(const CharacternessModel& model, const CueVector& cues) {
    const double jc = joint(model, cues, true);
    const double jb = joint(model, cues, false);
    return jc / (jc + jb);
}

double posterior_bg(const CharacternessModel& model, const CueVector& cues) {
    const double jc = joint(model, cues, true);
    const double jb = joint(model, cues, false);
    return jb / (jc + jb);
}

namespace {

constexpr const char* kMagic = "characterness-model v1";

void write_probs(std::ostream& out, const char* tag, const std::vector<double>& p) {
    out << tag;
    out << std::setprecision(17);
    for (double v : p) out << ' ' << v;
    out << '\n';
}

std::vector<double> read_probs(std::istream& in, const std::string& tag, size_t bins, int line_no) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("model file: unexpected end of file at line " +
                                 std::to_string(line_no));
    std::istringstream ss(line);
    std::string got;
    ss >> got;
    if (got != tag)
        throw std::runtime_error("model file line " + std::to_string(line_no) + ": expected '" +
                                 tag + "', got '" + got + "'");
    std::vector<double> p;
    double v;
    while (ss >> v) p.push_back(v);
    if (p.size() != bins)
        throw std::runtime_error("model file line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(bins) + " probabilities, got " +
                                 std::to_string(p.size()));
    return p;
}

}  // namespace

void write_model(const CharacternessModel& model, std::ostream& out) {
    out << kMagic << '\n';
    out << std::setprecision(17) << "prior " << model.prior_char << '\n';
    for (const CueLikelihood* lk : {&model.sw, &model.pd, &model.ehog}) {
        out << "cue " << lk->name << ' ' << std::setprecision(17) << lk->lo << ' ' << lk->hi << ' '
            << lk->p_char.size() << '\n';
        write_probs(out, "charprobs", lk->p_char);
        write_probs(out, "bgprobs", lk->p_bg);
    }
}

CharacternessModel read_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("model file: empty");
    if (line != kMagic) {
        if (line.rfind("characterness-model", 0) == 0)
            throw std::runtime_error("model file: unsupported version '" + line + "'");
        throw std::runtime_error("model file line 1: bad magic '" + line + "'");
    }

    CharacternessModel m;
    if (!std::getline(in, line)) throw std::runtime_error("model file: missing prior at line 2");
    {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag >> m.prior_char;
        if (tag != "prior" || !ss)
            throw std::runtime_error("model file line 2: expected 'prior <p>'");
        if (!(m.prior_char > 0 && m.prior_char < 1))
            throw std::runtime_error("model file line 2: prior outside (0,1)");
        m.prior_bg = 1.0 - m.prior_char;
    }

    int line_no = 3;
    for (CueLikelihood* lk : {&m.sw, &m.pd, &m.ehog}) {
        if (!std::getline(in, line))
            throw std::runtime_error("model file: unexpected end of file at line " +
                                     std::to_string(line_no));
        std::istringstream ss(line);
        std::string tag;
        size_t bins = 0;
        ss >> tag >> lk->name >> lk->lo >> lk->hi >> bins;
        if (tag != "cue" || !ss || bins == 0 || lk->hi <= lk->lo)
            throw std::runtime_error("model file line " + std::to_string(line_no) +
                                     ": expected 'cue <name> <lo> <hi> <bins>'");
        lk->p_char = read_probs(in, "charprobs", bins, line_no + 1);
        lk->p_bg = read_probs(in, "bgprobs", bins, line_no + 2);
        line_no += 3;
    }
    return m;
}

void save_model(const CharacternessModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    write_model(model, out);
    if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

CharacternessModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    return read_model(in);
}

std::vector<TrainingSample> harvest_image_samples(const ImageU8& rgb, const PixelMask& gt,
                                                  const HarvestParams& params) {
    if (!gt.empty() && (gt.width() != rgb.width() || gt.height() != rgb.height()))
        throw std::invalid_argument("harvest_image_samples: mask dimensions mismatch");

    const ImageU8 intensity = rgb.channels() == 3 ? to_intensity(rgb) : rgb;
    const ImageF smooth =
        guided_filter(to_float(intensity), params.extract.guided_radius, params.extract.guided_epsilon);
    const ImageF grad_raw = gradient_magnitude_raw(smooth);
    const double high = std::max(1e-6, otsu_threshold(grad_raw) * params.canny_high_scale);
    const EdgeMap edges = canny_edges(smooth, high * params.canny_low_ratio, high);

    std::vector<TrainingSample> samples;

    // Positives: the cues computed directly on ground-truth components.
    const auto gt_comps = connected_components(gt);
    std::vector<Region> gt_regions;
    for (const auto& pixels : gt_comps) {
        Region r;
        r.pixels = pixels;
        r.image_width = rgb.width();
        r.image_height = rgb.height();
        r.geometry = region_geometry(mask_from_pixels(pixels, rgb.width(), rgb.height()));
        r.bbox = r.geometry.bbox;
        gt_regions.push_back(std::move(r));
    }
    for (const auto& r : gt_regions) {
        const auto f = compute_region_features(rgb, r, edges, params.cues);
        if (f.cues) samples.push_back({*f.cues, SampleLabel::Character});
    }

    // Negatives: extracted candidates left after erasing ground truth.
    const auto candidates = extract_candidates(rgb, params.extract);
    for (const auto& cand : candidates) {
        bool erased = false;
        for (const auto& g : gt_regions) {
            if (rect_iou(cand.bbox, g.bbox) <= 0) continue;
            long inter = 0;
            size_t i = 0, j = 0;
            while (i < cand.pixels.size() && j < g.pixels.size()) {
                if (cand.pixels[i] < g.pixels[j])
                    ++i;
                else if (cand.pixels[i] > g.pixels[j])
                    ++j;
                else {
                    ++inter;
                    ++i;
                    ++j;
                }
            }
            const long uni =
                static_cast<long>(cand.pixels.size()) + static_cast<long>(g.pixels.size()) - inter;
            if (uni > 0 && static_cast<double>(inter) / uni > params.erase_iou) {
                erased = true;
                break;
            }
        }
        if (erased) continue;
        const auto f = compute_region_features(rgb, cand, edges, params.cues);
        if (f.cues) samples.push_back({*f.cues, SampleLabel::Background});
    }
    return samples;
}

}  // namespace scenetext
