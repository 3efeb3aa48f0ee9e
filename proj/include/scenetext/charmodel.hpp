#pragma once

#include "scenetext/cues.hpp"
#include "scenetext/regions.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace scenetext {

enum class SampleLabel { Background = 0, Character = 1 };

/// Binned likelihoods p(cue|character) and p(cue|background) over a fixed
/// range. Values outside the range clamp to the extreme bins. All entries
/// are positive (add-one smoothed) and each vector sums to 1.
struct CueLikelihood {
    std::string name;
    double lo = 0;
    double hi = 1;
    std::vector<double> p_char;
    std::vector<double> p_bg;

    int bin_of(double value) const;
};

struct CharacternessModel {
    double prior_char = 0.5;
    double prior_bg = 0.5;
    CueLikelihood sw;
    CueLikelihood pd;
    CueLikelihood ehog;
};

struct TrainParams {
    int bins = 50;
    double sw_max = 2.0;
    double pd_max = 12.0;
    double ehog_max = 1.0;
};

struct TrainingSample {
    CueVector cues;
    SampleLabel label = SampleLabel::Background;
};

/// Histogram likelihoods per cue per class (add-one smoothing) and priors
/// from class relative frequency. Throws if either class is empty.
CharacternessModel train(const std::vector<TrainingSample>& samples,
                         const TrainParams& params = {});

/// Naive-Bayes posterior p(character | cues) in [0,1].
double posterior(const CharacternessModel& model, const CueVector& cues);

/// Same formula with the classes swapped; posterior + posterior_bg == 1.
double posterior_bg(const CharacternessModel& model, const CueVector& cues);

/// Line-oriented text format, version tagged. Round-trips exactly.
void save_model(const CharacternessModel& model, const std::string& path);
CharacternessModel load_model(const std::string& path);
void write_model(const CharacternessModel& model, std::ostream& out);
CharacternessModel read_model(std::istream& in);

struct HarvestParams {
    ExtractParams extract;
    CueParams cues;
    double erase_iou = 0.5;  // candidates above this IoU vs ground truth are not negatives
    double canny_high_scale = 1.0;
    double canny_low_ratio = 0.4;
};

/// Positive samples from the connected components of the ground-truth mask,
/// negatives from extracted candidates that do not overlap ground truth
/// (mask IoU <= erase_iou against every component). Degenerate regions are
/// skipped. Returns samples for one image.
std::vector<TrainingSample> harvest_image_samples(const ImageU8& rgb, const PixelMask& gt,
                                                  const HarvestParams& params);

}  // namespace scenetext
