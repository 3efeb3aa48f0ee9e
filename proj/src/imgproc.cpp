#include "scenetext/imgproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace scenetext {

namespace {

// Mean over the window [x-r, x+r] x [y-r, y+r] clipped to the image,
// normalized by the clipped pixel count. Summed-area table based.
std::vector<double> box_mean(const std::vector<double>& src, int w, int h, int r) {
    std::vector<double> sat(static_cast<size_t>(w + 1) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        double row = 0;
        for (int x = 0; x < w; ++x) {
            row += src[static_cast<size_t>(y) * w + x];
            sat[static_cast<size_t>(y + 1) * (w + 1) + x + 1] =
                sat[static_cast<size_t>(y) * (w + 1) + x + 1] + row;
        }
    }
    std::vector<double> out(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
            const double sum = sat[static_cast<size_t>(y1 + 1) * (w + 1) + x1 + 1] -
                               sat[static_cast<size_t>(y0) * (w + 1) + x1 + 1] -
                               sat[static_cast<size_t>(y1 + 1) * (w + 1) + x0] +
                               sat[static_cast<size_t>(y0) * (w + 1) + x0];
            out[static_cast<size_t>(y) * w + x] = sum / ((x1 - x0 + 1) * (y1 - y0 + 1));
        }
    }
    return out;
}

}  // namespace

ImageF guided_filter(const ImageF& img, int radius, double epsilon) {
    if (img.channels() != 1) throw std::invalid_argument("guided_filter: 1-channel input required");
    if (radius < 1) throw std::invalid_argument("guided_filter: radius must be >= 1");
    if (radius >= img.width() || radius >= img.height())
        throw std::invalid_argument("guided_filter: radius larger than image");

    const int w = img.width(), h = img.height();
    const size_t n = static_cast<size_t>(w) * h;
    std::vector<double> I(n), II(n);
    for (size_t i = 0; i < n; ++i) {
        I[i] = img.data()[i];
        II[i] = I[i] * I[i];
    }

    // Self-guided: cov(I, p) == var(I).
    const auto mean_i = box_mean(I, w, h, radius);
    const auto mean_ii = box_mean(II, w, h, radius);
    std::vector<double> a(n), b(n);
    for (size_t i = 0; i < n; ++i) {
        const double var = mean_ii[i] - mean_i[i] * mean_i[i];
        a[i] = var / (var + epsilon);
        b[i] = mean_i[i] * (1.0 - a[i]);
    }
    const auto mean_a = box_mean(a, w, h, radius);
    const auto mean_b = box_mean(b, w, h, radius);

    ImageF out(w, h, 1);
    for (size_t i = 0; i < n; ++i)
        out.data()[i] = static_cast<float>(mean_a[i] * I[i] + mean_b[i]);
    return out;
}

ImageF gradient_magnitude_raw(const ImageF& img) {
    if (img.channels() != 1) throw std::invalid_argument("gradient_magnitude: 1-channel input");
    const int w = img.width(), h = img.height();
    ImageF out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(0, x - 1), xp = std::min(w - 1, x + 1);
            const int ym = std::max(0, y - 1), yp = std::min(h - 1, y + 1);
            const double gx = (img.at(xp, y) - img.at(xm, y)) / (xp - xm > 0 ? xp - xm : 1);
            const double gy = (img.at(x, yp) - img.at(x, ym)) / (yp - ym > 0 ? yp - ym : 1);
            out.at(x, y) = static_cast<float>(std::sqrt(gx * gx + gy * gy));
        }
    }
    return out;
}

ImageF gradient_magnitude(const ImageF& img) {
    ImageF out = gradient_magnitude_raw(img);
    float top = 0;
    for (size_t i = 0; i < out.size(); ++i) top = std::max(top, out.data()[i]);
    if (top > 0) {
        const float s = 255.0f / top;
        for (size_t i = 0; i < out.size(); ++i) out.data()[i] *= s;
    }
    return out;
}

double otsu_threshold(const ImageF& img) {
    float top = 0;
    for (size_t i = 0; i < img.size(); ++i) top = std::max(top, img.data()[i]);
    if (top <= 0) return 0.0;

    constexpr int kBins = 256;
    std::array<long, kBins> hist{};
    for (size_t i = 0; i < img.size(); ++i) {
        int b = static_cast<int>(img.data()[i] / top * kBins);
        hist[std::min(b, kBins - 1)]++;
    }
    const double total = static_cast<double>(img.size());
    double sum_all = 0;
    for (int i = 0; i < kBins; ++i) sum_all += i * static_cast<double>(hist[i]);

    double sum_bg = 0, w_bg = 0, best = -1;
    int best_bin = 0;
    for (int t = 0; t < kBins; ++t) {
        w_bg += static_cast<double>(hist[t]);
        if (w_bg == 0) continue;
        const double w_fg = total - w_bg;
        if (w_fg == 0) break;
        sum_bg += t * static_cast<double>(hist[t]);
        const double m_bg = sum_bg / w_bg;
        const double m_fg = (sum_all - sum_bg) / w_fg;
        const double between = w_bg * w_fg * (m_bg - m_fg) * (m_bg - m_fg);
        if (between > best) {
            best = between;
            best_bin = t;
        }
    }
    return (best_bin + 1) / static_cast<double>(kBins) * top;
}

namespace {

struct Gradients {
    std::vector<double> gx, gy, mag;
};

// Sobel with replicated borders.
Gradients sobel(const ImageF& img) {
    const int w = img.width(), h = img.height();
    Gradients g;
    g.gx.resize(static_cast<size_t>(w) * h);
    g.gy.resize(static_cast<size_t>(w) * h);
    g.mag.resize(static_cast<size_t>(w) * h);
    auto px = [&](int x, int y) {
        return static_cast<double>(img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)));
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
            const size_t i = static_cast<size_t>(y) * w + x;
            g.gx[i] = gx;
            g.gy[i] = gy;
            g.mag[i] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return g;
}

}  // namespace

EdgeMap canny_edges(const ImageF& img, double low, double high) {
    if (!(0 < low && low < high)) throw std::invalid_argument("canny_edges: need 0 < low < high");
    const int w = img.width(), h = img.height();
    const auto g = sobel(img);

    // Non-maximum suppression along the signed quantized gradient axis.
    // Keeping the strict test on the forward side only makes two-pixel
    // plateaus resolve to a single edge pixel deterministically.
    PixelMask kept(w, h);
    auto mag_at = [&](int x, int y) -> double {
        if (x < 0 || x >= w || y < 0 || y >= h) return -1.0;
        return g.mag[static_cast<size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            const double m = g.mag[i];
            if (m < low || m == 0.0) continue;
            const double gx = g.gx[i], gy = g.gy[i];
            // Quantize the gradient axis to one of 4 directions, keeping the sign.
            const double angle = std::atan2(gy, gx);  // (-pi, pi]
            const double a = std::fmod(angle + 2 * M_PI, M_PI);  // axis in [0, pi)
            int dx, dy;
            if (a < M_PI / 8 || a >= 7 * M_PI / 8) {
                dx = 1; dy = 0;
            } else if (a < 3 * M_PI / 8) {
                dx = 1; dy = 1;
            } else if (a < 5 * M_PI / 8) {
                dx = 0; dy = 1;
            } else {
                dx = -1; dy = 1;
            }
            // Forward = toward the actual gradient vector.
            if (gx * dx + gy * dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            const double fwd = mag_at(x + dx, y + dy);
            const double bwd = mag_at(x - dx, y - dy);
            if (m > fwd && m >= bwd) kept.set(x, y);
        }
    }

    // Hysteresis: seed from strong pixels, grow through weak ones (8-conn).
    PixelMask out(w, h);
    ImageF theta(w, h, 1);
    std::vector<std::int32_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!kept.at(x, y) || out.at(x, y)) continue;
            if (g.mag[static_cast<size_t>(y) * w + x] < high) continue;
            stack.assign(1, y * w + x);
            out.set(x, y);
            while (!stack.empty()) {
                const std::int32_t p = stack.back();
                stack.pop_back();
                const int px = p % w, py = p / w;
                for (int ddy = -1; ddy <= 1; ++ddy) {
                    for (int ddx = -1; ddx <= 1; ++ddx) {
                        const int qx = px + ddx, qy = py + ddy;
                        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                        if (kept.at(qx, qy) && !out.at(qx, qy)) {
                            out.set(qx, qy);
                            stack.push_back(qy * w + qx);
                        }
                    }
                }
            }
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!out.at(x, y)) continue;
            const size_t i = static_cast<size_t>(y) * w + x;
            // Steepest descent direction, mapped to [0, 2pi).
            double t = std::atan2(-g.gy[i], -g.gx[i]);
            if (t < 0) t += 2 * M_PI;
            theta.at(x, y) = static_cast<float>(t);
        }
    }
    return {std::move(out), std::move(theta)};
}

namespace {

// Felzenszwalb-Huttenlocher 1D squared distance transform.
void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        for (;;) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

}  // namespace

ImageF distance_transform(const PixelMask& mask) {
    const int w = mask.width(), h = mask.height();
    // One ring of virtual non-member pixels around the image makes the
    // outside count as background exactly.
    const int pw = w + 2, ph = h + 2;
    const double inf = 1e18;
    std::vector<double> f(static_cast<size_t>(pw) * ph, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (mask.at(x, y)) f[static_cast<size_t>(y + 1) * pw + x + 1] = inf;

    // Columns first, then rows.
    std::vector<double> col(ph), dcol(ph);
    for (int x = 0; x < pw; ++x) {
        for (int y = 0; y < ph; ++y) col[y] = f[static_cast<size_t>(y) * pw + x];
        edt_1d(col, dcol, ph);
        for (int y = 0; y < ph; ++y) f[static_cast<size_t>(y) * pw + x] = dcol[y];
    }
    std::vector<double> row(pw), drow(pw);
    ImageF out(w, h, 1, 0.0f);
    for (int y = 0; y < ph; ++y) {
        for (int x = 0; x < pw; ++x) row[x] = f[static_cast<size_t>(y) * pw + x];
        edt_1d(row, drow, pw);
        if (y >= 1 && y <= h)
            for (int x = 1; x <= w; ++x)
                out.at(x - 1, y - 1) = static_cast<float>(std::sqrt(drow[x]));
    }
    return out;
}

PixelMask skeletonize(const PixelMask& mask) {
    const int w = mask.width(), h = mask.height();
    PixelMask cur = mask;
    auto px = [&](int x, int y) -> int {
        return (x >= 0 && x < w && y >= 0 && y < h && cur.at(x, y)) ? 1 : 0;
    };

    std::vector<std::int32_t> doomed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            doomed.clear();
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    if (!cur.at(x, y)) continue;
                    // Zhang-Suen neighborhood p2..p9, clockwise from north.
                    const int p2 = px(x, y - 1), p3 = px(x + 1, y - 1), p4 = px(x + 1, y);
                    const int p5 = px(x + 1, y + 1), p6 = px(x, y + 1), p7 = px(x - 1, y + 1);
                    const int p8 = px(x - 1, y), p9 = px(x - 1, y - 1);
                    const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
                    if (b < 2 || b > 6) continue;
                    const int seq[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
                    int a = 0;
                    for (int i = 0; i < 8; ++i) a += (seq[i] == 0 && seq[i + 1] == 1);
                    if (a != 1) continue;
                    if (pass == 0) {
                        if (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0) continue;
                    } else {
                        if (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0) continue;
                    }
                    doomed.push_back(y * w + x);
                }
            }
            for (auto p : doomed) cur.set(p % w, p / w, false);
            changed = changed || !doomed.empty();
        }
    }
    return cur;
}

}  // namespace scenetext
