#include "scenetext/cues.hpp"

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace scenetext;
using namespace testutil;

namespace {

PixelMask bar_mask(int w, int h, int x0, int y0, int bw, int bh) {
    PixelMask m(w, h);
    for (int y = y0; y < y0 + bh; ++y)
        for (int x = x0; x < x0 + bw; ++x) m.set(x, y);
    return m;
}

// EdgeMap with given orientation samples placed inside the region's box.
EdgeMap synthetic_edges(const Region& r, const std::vector<std::pair<int, double>>& count_theta) {
    EdgeMap em;
    em.mask = PixelMask(r.image_width, r.image_height);
    em.theta = ImageF(r.image_width, r.image_height, 1, 0.0f);
    size_t k = 0;
    for (const auto& [count, theta] : count_theta) {
        for (int i = 0; i < count; ++i) {
            // March through region pixels; they're all inside the dilated box.
            const auto p = r.pixels[k++ % r.pixels.size()];
            int x = p % r.image_width, y = p / r.image_width;
            while (em.mask.at(x, y)) {
                ++x;
                if (x >= r.image_width) {
                    x = 0;
                    ++y;
                }
            }
            em.mask.set(x, y);
            em.theta.at(x, y) = static_cast<float>(theta);
        }
    }
    return em;
}

double hand_kld(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0;
    for (size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(p[i] / q[i]);
    return d;
}

}  // namespace

TEST_CASE("stroke_width_stats of a 1-pixel line") {
    const PixelMask line = bar_mask(30, 7, 3, 3, 24, 1);
    const auto stats = stroke_width_stats(make_region(line));
    REQUIRE(stats.has_value());
    CHECK(stats->mean == doctest::Approx(1.0));
    CHECK(stats->variance == doctest::Approx(0.0));
    CHECK(stats->samples == 24);
}

TEST_CASE("stroke_width_stats of a 3x40 bar") {
    const PixelMask bar = bar_mask(50, 9, 4, 3, 40, 3);
    const Region region = make_region(bar);

    // The exhaustive oracle says interior center-row pixels sit at depth 2.
    const ImageF dt = oracle::brute_distance(bar);
    for (int x = 6; x < 42; ++x) CHECK(dt.at(x, 4) == doctest::Approx(2.0));

    const auto stats = stroke_width_stats(region);
    REQUIRE(stats.has_value());
    CHECK(stats->mean == doctest::Approx(2.0).epsilon(0.1));
    CHECK(stats->variance < 0.15);  // only the bar ends deviate
}

TEST_CASE("stroke_width_stats of a filled disk") {
    const int R = 10;
    PixelMask disk(31, 31);
    for (int y = 0; y < 31; ++y)
        for (int x = 0; x < 31; ++x)
            if ((x - 15) * (x - 15) + (y - 15) * (y - 15) <= R * R) disk.set(x, y);
    const auto stats = stroke_width_stats(make_region(disk));
    REQUIRE(stats.has_value());
    // The skeleton collapses toward the center, where the analytic distance
    // to the outside is R..R+1.
    CHECK(stats->mean > 0.6 * R);
    CHECK(stats->mean < R + 1.5);
    CHECK(stats->variance < 2.0);
}

TEST_CASE("stroke_width_stats degenerates on a 2x2 blob") {
    // Thinning erases a 2x2 square entirely; the region scores as background.
    const PixelMask blob = bar_mask(8, 8, 3, 3, 2, 2);
    CHECK(!stroke_width_stats(make_region(blob)).has_value());
}

TEST_CASE("cue_sw is Var/E^2") {
    CHECK(cue_sw({2.0, 0.0, 10}) == 0.0);
    CHECK(cue_sw({2.0, 1.0, 10}) == doctest::Approx(0.25));
    CHECK_THROWS(cue_sw({0.0, 1.0, 10}));
    // Exact scale invariance on the statistics.
    CHECK(cue_sw({3.7, 1.3, 9}) == doctest::Approx(cue_sw({7.4, 5.2, 9})).epsilon(1e-12));
}

TEST_CASE("cue_sw survives 2x nearest-neighbor region scaling within 15%") {
    ImageU8 img_small = canvas(70, 70, {255, 255, 255});
    PixelMask ink_small(70, 70);
    draw_glyph(img_small, 'H', 10, 10, 4, {0, 0, 0}, &ink_small);
    ImageU8 img_big = canvas(140, 140, {255, 255, 255});
    PixelMask ink_big(140, 140);
    draw_glyph(img_big, 'H', 20, 20, 8, {0, 0, 0}, &ink_big);

    const auto small = stroke_width_stats(make_region(ink_small));
    const auto big = stroke_width_stats(make_region(ink_big));
    REQUIRE(small.has_value());
    REQUIRE(big.has_value());
    const double sw_small = cue_sw(*small);
    const double sw_big = cue_sw(*big);
    CHECK(sw_big == doctest::Approx(sw_small).epsilon(0.15));
}

TEST_CASE("cue_pd of a region matching its surround is near zero") {
    const ImageU8 img = canvas(20, 20, {120, 80, 60});
    const Region r = make_region(bar_mask(20, 20, 5, 5, 8, 8));
    CHECK(cue_pd(img, r, 16) >= 0.0);
    CHECK(cue_pd(img, r, 16) < 0.02);  // only count-dependent smoothing remains
}

TEST_CASE("cue_pd of red on blue equals the hand-computed smoothed KLD") {
    // A diamond leaves its bounding-box corners as the surround.
    ImageU8 img = canvas(12, 10, {0, 0, 255});
    PixelMask diamond(12, 10);
    const int cx = 6, cy = 5;
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 12; ++x)
            if (std::abs(x - cx) + std::abs(y - cy) <= 2) diamond.set(x, y);
    const Region r = make_region(diamond);
    for (auto p : r.pixels) {
        img.data()[3 * p] = 255;
        img.data()[3 * p + 2] = 0;
    }

    const long n_region = static_cast<long>(r.pixels.size());     // 13
    const long n_surround = 5l * 5l - n_region;                   // box corners
    REQUIRE(n_region == 13);
    auto one_hot = [](long total, int bin) {
        std::vector<long> c(16, 0);
        c[bin] = total;
        return c;
    };
    // R: region mass in bin 15, surround in bin 0. B: the reverse. G: both 0.
    const double expect =
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 15)), oracle::hand_smoothed(one_hot(n_surround, 0))) +
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 0)), oracle::hand_smoothed(one_hot(n_surround, 0))) +
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 0)), oracle::hand_smoothed(one_hot(n_surround, 15)));
    CHECK(cue_pd(img, r, 16) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("cue_pd uses the 1-pixel dilated ring when the region fills its box") {
    ImageU8 img = canvas(12, 10, {0, 0, 255});
    const Region r = make_region(bar_mask(12, 10, 4, 3, 4, 4));
    for (auto p : r.pixels) {
        img.data()[3 * p] = 255;
        img.data()[3 * p + 2] = 0;
    }
    const long n_region = 16, n_ring = 6 * 6 - 16;  // dilated box minus region
    auto one_hot = [](long total, int bin) {
        std::vector<long> c(16, 0);
        c[bin] = total;
        return c;
    };
    const double expect =
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 15)), oracle::hand_smoothed(one_hot(n_ring, 0))) +
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 0)), oracle::hand_smoothed(one_hot(n_ring, 0))) +
        hand_kld(oracle::hand_smoothed(one_hot(n_region, 0)), oracle::hand_smoothed(one_hot(n_ring, 15)));
    CHECK(cue_pd(img, r, 16) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("cue_pd is nonnegative on random scenes and falls back when the box is full") {
    auto gen = rng(42);
    std::uniform_int_distribution<int> u8v(0, 255);
    for (int trial = 0; trial < 20; ++trial) {
        ImageU8 img(16, 12, 3);
        for (size_t i = 0; i < img.size(); ++i) img.data()[i] = static_cast<std::uint8_t>(u8v(gen));
        PixelMask m = random_mask(gen, 16, 12, 0.3);
        if (m.count() == 0) m.set(4, 4);
        CHECK(cue_pd(img, make_region(m), 16) >= 0.0);
    }

    // Region exactly fills its bounding box: the surround comes from the
    // 1-pixel dilation.
    ImageU8 img = canvas(10, 10, {10, 200, 30});
    const Region full_box = make_region(bar_mask(10, 10, 2, 2, 5, 5));
    CHECK(cue_pd(img, full_box, 16) >= 0.0);

    // Region covering the whole image has no surround anywhere.
    const Region whole = make_region(bar_mask(6, 6, 0, 0, 6, 6));
    CHECK(cue_pd(canvas(6, 6, {1, 2, 3}), whole, 16) == 0.0);
}

TEST_CASE("cue_ehog formula cases") {
    const Region r = make_region(bar_mask(40, 30, 5, 5, 30, 20));

    // All edge pixels in one sector -> 1.
    const EdgeMap one_type = synthetic_edges(r, {{25, 0.1}});
    CHECK(cue_ehog(r, one_type) == doctest::Approx(1.0));

    // Counts (10, 4, 8, 4): sqrt((10-8)^2 + 0) / 26.
    const EdgeMap mixed = synthetic_edges(
        r, {{10, 0.1}, {4, M_PI / 2}, {8, M_PI}, {4, 3 * M_PI / 2}});
    CHECK(cue_ehog(r, mixed) == doctest::Approx(2.0 / 26.0).epsilon(1e-9));

    // No edge pixels -> degenerate.
    const EdgeMap none = synthetic_edges(r, {});
    CHECK(!cue_ehog(r, none).has_value());
}

TEST_CASE("cue_ehog sector boundaries follow the quarter-plane split") {
    const Region r = make_region(bar_mask(40, 30, 5, 5, 30, 20));
    // theta = 0 belongs to type 1 (as 2pi does); pi/4 is still type 1,
    // just above it is type 2.
    const EdgeMap em = synthetic_edges(r, {{3, 0.0}, {3, M_PI / 4}, {3, M_PI / 4 + 1e-4}});
    const EdgeTypeCounts c = edge_type_counts(r, em);
    CHECK(c.w1 == 6);
    CHECK(c.w2 == 3);
}

TEST_CASE("cue_ehog is near zero for a ring and invariant under the pi swap") {
    // A ring's opposing gradients cancel.
    ImageU8 img = canvas(90, 90, {230, 230, 230});
    PixelMask ink(90, 90);
    draw_glyph(img, 'O', 15, 10, 9, {25, 25, 25}, &ink);
    const ImageU8 blurred = gaussian_blur(img, 1.0);
    const ImageF gray = to_float(to_intensity(blurred));
    const EdgeMap em = canny_edges(gray, 20, 60);
    const Region r = make_region(ink);
    const auto e = cue_ehog(r, em);
    REQUIRE(e.has_value());
    CHECK(*e < 0.15);

    // Swapping opposing sectors (a pi rotation) leaves the value unchanged.
    const EdgeMap fwd = synthetic_edges(r, {{7, 0.1}, {3, 2.0}, {5, 3.3}, {2, 5.0}});
    const EdgeMap swp = synthetic_edges(r, {{5, 0.1}, {2, 2.0}, {7, 3.3}, {3, 5.0}});
    CHECK(*cue_ehog(r, fwd) == doctest::Approx(*cue_ehog(r, swp)).epsilon(1e-12));
}

TEST_CASE("stroke_width_histogram behavior") {
    // 1-pixel line: every distance is 1; all mass lands in one bin.
    const Region line = make_region(bar_mask(30, 5, 2, 2, 26, 1));
    const Histogram h = stroke_width_histogram(line, 16, 1.0);
    int heavy = 0;
    for (double p : h.p) heavy += p > 0.5;
    CHECK(heavy == 1);

    // 3-wide bar: distances 1 (outer rows) and 2 (center) in ratio ~2:1.
    const Region bar = make_region(bar_mask(50, 9, 4, 3, 40, 3));
    const auto values = stroke_width_values(bar);
    long ones = 0, twos = 0;
    for (double v : values) {
        if (v == doctest::Approx(1.0)) ++ones;
        if (v == doctest::Approx(2.0)) ++twos;
    }
    CHECK(ones > 1.8 * twos);
    CHECK(ones < 2.4 * twos);

    // Congruent translated regions have identical histograms.
    const Region shifted = make_region(bar_mask(50, 19, 9, 11, 40, 3));
    const Histogram hb = stroke_width_histogram(bar, 16, 2.0);
    const Histogram hs = stroke_width_histogram(shifted, 16, 2.0);
    for (size_t i = 0; i < hb.p.size(); ++i) CHECK(hb.p[i] == hs.p[i]);
}

TEST_CASE("divergence_swd: zero on identical, positive otherwise, layout checked") {
    std::vector<double> a_vals(40, 1.0), b_vals(40, 3.0);
    const Histogram ha = make_histogram(a_vals, 16, 4.0);
    const Histogram hb = make_histogram(b_vals, 16, 4.0);
    CHECK(divergence_swd(ha, ha) == 0.0);
    CHECK(divergence_swd(ha, hb) > 0.0);

    // One-hot vs one-hot closed form.
    std::vector<long> ca(16, 0), cb(16, 0);
    ca[4] = 40;
    cb[12] = 40;
    const double expect = hand_kld(oracle::hand_smoothed(ca), oracle::hand_smoothed(cb));
    CHECK(divergence_swd(ha, hb) == doctest::Approx(expect).epsilon(1e-9));

    const Histogram other = make_histogram(a_vals, 16, 8.0);
    CHECK_THROWS(divergence_swd(ha, other));

    // Not symmetric in general.
    std::vector<double> c_vals = {1, 1, 3, 3};
    std::vector<double> d_vals = {1, 3, 3, 3};
    const Histogram hc = make_histogram(c_vals, 16, 4.0);
    const Histogram hd = make_histogram(d_vals, 16, 4.0);
    CHECK(divergence_swd(hc, hd) != doctest::Approx(divergence_swd(hd, hc)));
}

TEST_CASE("divergence_cd basics") {
    ImageU8 img = canvas(20, 10, {255, 255, 255});
    const Region white = make_region(bar_mask(20, 10, 1, 1, 6, 6));
    Region black = make_region(bar_mask(20, 10, 12, 1, 6, 6));
    for (auto p : black.pixels)
        for (int c = 0; c < 3; ++c) img.data()[3 * p + c] = 0;

    CHECK(divergence_cd(img, white, white) == 0.0);
    CHECK(divergence_cd(img, white, black) == doctest::Approx(100.0).epsilon(0.01));
    CHECK(divergence_cd(img, white, black) == divergence_cd(img, black, white));
}

TEST_CASE("srgb_to_lab reference points") {
    const auto black = srgb_to_lab(0, 0, 0);
    CHECK(black[0] == doctest::Approx(0.0).epsilon(1e-6));
    const auto white = srgb_to_lab(255, 255, 255);
    CHECK(white[0] == doctest::Approx(100.0).epsilon(1e-4));
    CHECK(white[1] == doctest::Approx(0.0).epsilon(1e-2));
    CHECK(white[2] == doctest::Approx(0.0).epsilon(1e-2));
}

TEST_CASE("divergence_ud convex combination") {
    CHECK(divergence_ud(0.7, 0.7, 0.5) == doctest::Approx(0.7));
    CHECK(divergence_ud(0.3, 0.9, 1.0) == doctest::Approx(0.3));
    CHECK(divergence_ud(0.3, 0.9, 0.0) == doctest::Approx(0.9));
    CHECK_THROWS(divergence_ud(1, 1, 1.5));
}

TEST_CASE("all cues are translation invariant") {
    // Same glyph at two positions in same-size canvases; fixed thresholds so
    // the edge maps match locally.
    SceneOptions opt{.width = 140, .height = 90, .scale = 5, .blur_sigma = 1.0};
    const Scene a = render_scene({{"R", 12, 10}}, opt);
    const Scene b = render_scene({{"R", 47, 30}}, opt);
    const Region ra = make_region(a.glyph_masks[0]);
    const Region rb = make_region(b.glyph_masks[0]);

    const EdgeMap ea = canny_edges(to_float(to_intensity(a.rgb)), 20, 60);
    const EdgeMap eb = canny_edges(to_float(to_intensity(b.rgb)), 20, 60);

    CueParams params;
    const RegionFeatures fa = compute_region_features(a.rgb, ra, ea, params);
    const RegionFeatures fb = compute_region_features(b.rgb, rb, eb, params);
    REQUIRE(fa.cues.has_value());
    REQUIRE(fb.cues.has_value());
    CHECK(fa.cues->sw == doctest::Approx(fb.cues->sw).epsilon(1e-12));
    CHECK(fa.cues->pd == doctest::Approx(fb.cues->pd).epsilon(1e-12));
    CHECK(fa.cues->ehog == doctest::Approx(fb.cues->ehog).epsilon(1e-12));
    CHECK(fa.skeleton_len == fb.skeleton_len);
}

TEST_CASE("pairwise_swd shares the bin layout across the pair") {
    const Region thin = make_region(bar_mask(40, 20, 2, 2, 30, 1));
    const Region thick = make_region(bar_mask(40, 20, 2, 8, 30, 7));
    CHECK(pairwise_swd(thin, thin, 16) == 0.0);
    CHECK(pairwise_swd(thin, thick, 16) > 0.0);
}
