#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace testutil {

namespace {

const std::map<char, std::array<const char*, 7>>& font() {
    static const std::map<char, std::array<const char*, 7>> table = {
        {'A', {" ### ", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
        {'B', {"#### ", "#   #", "#   #", "#### ", "#   #", "#   #", "#### "}},
        {'C', {" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "}},
        {'D', {"#### ", "#   #", "#   #", "#   #", "#   #", "#   #", "#### "}},
        {'E', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#####"}},
        {'F', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#    "}},
        {'G', {" ### ", "#   #", "#    ", "# ###", "#   #", "#   #", " ### "}},
        {'H', {"#   #", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
        {'I', {" ### ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
        {'J', {"  ###", "   # ", "   # ", "   # ", "   # ", "#  # ", " ##  "}},
        {'K', {"#   #", "#  # ", "# #  ", "##   ", "# #  ", "#  # ", "#   #"}},
        {'L', {"#    ", "#    ", "#    ", "#    ", "#    ", "#    ", "#####"}},
        {'M', {"#   #", "## ##", "# # #", "# # #", "#   #", "#   #", "#   #"}},
        {'N', {"#   #", "##  #", "# # #", "#  ##", "#   #", "#   #", "#   #"}},
        {'O', {" ### ", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
        {'P', {"#### ", "#   #", "#   #", "#### ", "#    ", "#    ", "#    "}},
        {'Q', {" ### ", "#   #", "#   #", "#   #", "# # #", "#  # ", " ## #"}},
        {'R', {"#### ", "#   #", "#   #", "#### ", "# #  ", "#  # ", "#   #"}},
        {'S', {" ####", "#    ", "#    ", " ### ", "    #", "    #", "#### "}},
        {'T', {"#####", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  "}},
        {'U', {"#   #", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
        {'V', {"#   #", "#   #", "#   #", "#   #", "#   #", " # # ", "  #  "}},
        {'W', {"#   #", "#   #", "#   #", "# # #", "# # #", "## ##", "#   #"}},
        {'X', {"#   #", "#   #", " # # ", "  #  ", " # # ", "#   #", "#   #"}},
        {'Y', {"#   #", "#   #", " # # ", "  #  ", "  #  ", "  #  ", "  #  "}},
        {'Z', {"#####", "    #", "   # ", "  #  ", " #   ", "#    ", "#####"}},
        {'0', {" ### ", "#   #", "#  ##", "# # #", "##  #", "#   #", " ### "}},
        {'1', {"  #  ", " ##  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
        {'2', {" ### ", "#   #", "    #", "   # ", "  #  ", " #   ", "#####"}},
        {'3', {"#####", "   # ", "  #  ", "   # ", "    #", "#   #", " ### "}},
        {'4', {"   # ", "  ## ", " # # ", "#  # ", "#####", "   # ", "   # "}},
        {'5', {"#####", "#    ", "#### ", "    #", "    #", "#   #", " ### "}},
        {'6', {"  ## ", " #   ", "#    ", "#### ", "#   #", "#   #", " ### "}},
        {'7', {"#####", "    #", "   # ", "  #  ", " #   ", " #   ", " #   "}},
        {'8', {" ### ", "#   #", "#   #", " ### ", "#   #", "#   #", " ### "}},
        {'9', {" ### ", "#   #", "#   #", " ####", "    #", "   # ", " ##  "}},
    };
    return table;
}

void fill_rect(ImageU8& img, int x0, int y0, int w, int h, Rgb color, PixelMask* ink) {
    for (int y = y0; y < y0 + h; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
            if (x < 0 || x >= img.width() || y < 0 || y >= img.height()) continue;
            img.at(x, y, 0) = color.r;
            img.at(x, y, 1) = color.g;
            img.at(x, y, 2) = color.b;
            if (ink) ink->set(x, y);
        }
    }
}

void draw_ellipse(ImageU8& img, double cx, double cy, double a, double b, double angle, Rgb color) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    const int x0 = std::max(0, static_cast<int>(cx - a - b)), x1 = std::min(img.width() - 1, static_cast<int>(cx + a + b));
    const int y0 = std::max(0, static_cast<int>(cy - a - b)), y1 = std::min(img.height() - 1, static_cast<int>(cy + a + b));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double u = dx * ca + dy * sa, v = -dx * sa + dy * ca;
            if (u * u / (a * a) + v * v / (b * b) <= 1.0) {
                img.at(x, y, 0) = color.r;
                img.at(x, y, 1) = color.g;
                img.at(x, y, 2) = color.b;
            }
        }
    }
}

void draw_disk(ImageU8& img, double cx, double cy, double r, Rgb color) {
    draw_ellipse(img, cx, cy, r, r, 0.0, color);
}

// Union of disks along a random walk; stroke width varies along the shape.
Rect draw_amoeba(ImageU8& img, std::mt19937& gen, Rgb color) {
    std::uniform_real_distribution<double> ux(20.0, img.width() - 20.0);
    std::uniform_real_distribution<double> uy(20.0, img.height() - 20.0);
    std::uniform_real_distribution<double> uang(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> urad(2.0, 7.0);
    std::uniform_int_distribution<int> usteps(8, 20);
    double x = ux(gen), y = uy(gen);
    double minx = x, maxx = x, miny = y, maxy = y;
    const int steps = usteps(gen);
    for (int i = 0; i < steps; ++i) {
        const double r = urad(gen);
        draw_disk(img, x, y, r, color);
        minx = std::min(minx, x - r);
        maxx = std::max(maxx, x + r);
        miny = std::min(miny, y - r);
        maxy = std::max(maxy, y + r);
        const double ang = uang(gen);
        x = std::clamp(x + std::cos(ang) * 4.0, 5.0, img.width() - 5.0);
        y = std::clamp(y + std::sin(ang) * 4.0, 5.0, img.height() - 5.0);
    }
    return {static_cast<int>(minx), static_cast<int>(miny),
            static_cast<int>(maxx - minx) + 1, static_cast<int>(maxy - miny) + 1};
}

Rect draw_clutter_shape(ImageU8& img, std::mt19937& gen) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> shade(20, 140);
    const auto v = static_cast<std::uint8_t>(shade(gen));
    std::uniform_int_distribution<int> tint(0, 60);
    const Rgb color{static_cast<std::uint8_t>(std::min(255, v + tint(gen))), v,
                    static_cast<std::uint8_t>(std::min(255, v + tint(gen)))};
    switch (kind(gen)) {
        case 0: {
            std::uniform_real_distribution<double> ux(25.0, img.width() - 25.0);
            std::uniform_real_distribution<double> uy(25.0, img.height() - 25.0);
            std::uniform_real_distribution<double> ua(8.0, 26.0);
            std::uniform_real_distribution<double> uang(0.0, M_PI);
            const double a = ua(gen);
            std::uniform_real_distribution<double> ub(3.0, a);
            const double b = ub(gen), cx = ux(gen), cy = uy(gen);
            draw_ellipse(img, cx, cy, a, b, uang(gen), color);
            return {static_cast<int>(cx - a - b), static_cast<int>(cy - a - b),
                    static_cast<int>(2 * (a + b)) + 1, static_cast<int>(2 * (a + b)) + 1};
        }
        case 1:
            return draw_amoeba(img, gen, color);
        default: {
            // Radial soft blob: nested intensity rings, nothing stroke-like.
            std::uniform_real_distribution<double> ux(25.0, img.width() - 25.0);
            std::uniform_real_distribution<double> uy(25.0, img.height() - 25.0);
            std::uniform_real_distribution<double> ur(8.0, 22.0);
            const double cx = ux(gen), cy = uy(gen), rr = ur(gen);
            for (int y = std::max(0, static_cast<int>(cy - rr)); y <= std::min(img.height() - 1, static_cast<int>(cy + rr)); ++y) {
                for (int x = std::max(0, static_cast<int>(cx - rr)); x <= std::min(img.width() - 1, static_cast<int>(cx + rr)); ++x) {
                    const double d = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
                    if (d > rr) continue;
                    const double t = d / rr;
                    for (int c = 0; c < 3; ++c) {
                        const double base = img.at(x, y, c);
                        img.at(x, y, c) = static_cast<std::uint8_t>(base + (color.r - base) * (1.0 - t));
                    }
                }
            }
            return {static_cast<int>(cx - rr), static_cast<int>(cy - rr),
                    static_cast<int>(2 * rr) + 1, static_cast<int>(2 * rr) + 1};
        }
    }
}

}  // namespace

ImageU8 canvas(int w, int h, Rgb color) {
    ImageU8 img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y, 0) = color.r;
            img.at(x, y, 1) = color.g;
            img.at(x, y, 2) = color.b;
        }
    }
    return img;
}

const std::array<const char*, 7>& glyph_rows(char c) {
    const auto it = font().find(c);
    if (it == font().end()) throw std::invalid_argument("no glyph for that character");
    return it->second;
}

bool has_glyph(char c) { return font().count(c) > 0; }

Rect draw_glyph(ImageU8& img, char c, int x, int y, int scale, Rgb color, PixelMask* ink) {
    const auto& rows = glyph_rows(c);
    Rect box{0, 0, 0, 0};
    for (int gy = 0; gy < 7; ++gy) {
        for (int gx = 0; gx < 5; ++gx) {
            if (rows[gy][gx] != '#') continue;
            fill_rect(img, x + gx * scale, y + gy * scale, scale, scale, color, ink);
            box = rect_union(box, {x + gx * scale, y + gy * scale, scale, scale});
        }
    }
    return box;
}

Scene render_scene(const std::vector<WordSpec>& words, const SceneOptions& opt) {
    Scene scene;
    scene.rgb = canvas(opt.width, opt.height, opt.bg);
    scene.ink = PixelMask(opt.width, opt.height);

    const int advance = opt.advance > 0 ? opt.advance : 6 * opt.scale;
    for (const auto& word : words) {
        const Rgb ink = word.use_color ? word.color : opt.fg;
        Rect word_box{0, 0, 0, 0};
        int pen = word.x;
        for (char c : word.text) {
            const Rect b = draw_glyph(scene.rgb, c, pen, word.y, opt.scale, ink, &scene.ink);
            PixelMask glyph(opt.width, opt.height);
            draw_glyph(scene.rgb, c, pen, word.y, opt.scale, ink, &glyph);
            scene.glyph_masks.push_back(std::move(glyph));
            word_box = rect_union(word_box, b);
            pen += advance;
        }
        scene.word_boxes.push_back(word_box);
    }

    if (opt.clutter > 0) {
        auto gen = rng(opt.clutter_seed);
        int placed = 0, attempts = 0;
        while (placed < opt.clutter && attempts < opt.clutter * 50) {
            ++attempts;
            ImageU8 trial = scene.rgb;
            const Rect where = draw_clutter_shape(trial, gen);
            bool clash = false;
            for (const auto& wb : scene.word_boxes) {
                const Rect padded{wb.x - 3 * opt.scale, wb.y - 3 * opt.scale, wb.w + 6 * opt.scale,
                                  wb.h + 6 * opt.scale};
                if (rect_iou(padded, where) > 0 || padded.contains(where.x, where.y)) clash = true;
            }
            if (clash) continue;  // gen still advances, placement stays deterministic
            scene.rgb = std::move(trial);
            ++placed;
        }
    }

    if (opt.blur_sigma > 0) scene.rgb = gaussian_blur(scene.rgb, opt.blur_sigma);
    if (opt.noise_sigma > 0) {
        auto gen = rng(opt.noise_seed);
        std::normal_distribution<double> nd(0.0, opt.noise_sigma);
        for (size_t i = 0; i + 2 < scene.rgb.size(); i += 3) {
            const double n = nd(gen);  // luminance noise, channels move together
            for (int c = 0; c < 3; ++c) {
                const double v = scene.rgb.data()[i + c] + n;
                scene.rgb.data()[i + c] =
                    static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
            }
        }
    }
    if (opt.post_blur > 0) scene.rgb = gaussian_blur(scene.rgb, opt.post_blur);

    if (opt.sharp_anchor) {
        for (int y = 4; y < 16; ++y) {
            for (int x = opt.width - 28; x < opt.width - 6; ++x) {
                const std::uint8_t v = ((x / 4 + y / 4) % 2) ? 0 : 255;
                scene.rgb.at(x, y, 0) = v;
                scene.rgb.at(x, y, 1) = v;
                scene.rgb.at(x, y, 2) = v;
            }
        }
    }
    return scene;
}

ImageU8 texture_image(unsigned seed, int w, int h, int shapes) {
    auto gen = rng(seed);
    std::uniform_int_distribution<int> bg(185, 230);
    const auto b = static_cast<std::uint8_t>(bg(gen));
    ImageU8 img = canvas(w, h, {b, b, b});
    for (int i = 0; i < shapes; ++i) draw_clutter_shape(img, gen);
    // Same degradation recipe as the rendered scenes.
    img = gaussian_blur(img, 0.5);
    std::normal_distribution<double> nd(0.0, 2.5);
    for (size_t i = 0; i + 2 < img.size(); i += 3) {
        const double n = nd(gen);
        for (int c = 0; c < 3; ++c) {
            const double v = img.data()[i + c] + n;
            img.data()[i + c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
        }
    }
    return gaussian_blur(img, 0.5);
}

ImageU8 gaussian_blur(const ImageU8& img, double sigma) {
    const int r = std::max(1, static_cast<int>(std::ceil(3 * sigma)));
    std::vector<double> k(2 * r + 1);
    double norm = 0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-i * i / (2 * sigma * sigma));
        norm += k[i + r];
    }
    for (auto& v : k) v /= norm;

    const int w = img.width(), h = img.height(), ch = img.channels();
    std::vector<double> tmp(static_cast<size_t>(w) * h * ch), out(tmp.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0;
                for (int i = -r; i <= r; ++i)
                    acc += k[i + r] * img.at(std::clamp(x + i, 0, w - 1), y, c);
                tmp[(static_cast<size_t>(y) * w + x) * ch + c] = acc;
            }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                double acc = 0;
                for (int i = -r; i <= r; ++i)
                    acc += k[i + r] * tmp[(static_cast<size_t>(std::clamp(y + i, 0, h - 1)) * w + x) * ch + c];
                out[(static_cast<size_t>(y) * w + x) * ch + c] = acc;
            }

    ImageU8 res(w, h, ch);
    for (size_t i = 0; i < out.size(); ++i)
        res.data()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(out[i]), 0l, 255l));
    return res;
}

ImageU8 replicate3(const ImageU8& gray) {
    ImageU8 out(gray.width(), gray.height(), 3);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = gray.at(x, y);
    return out;
}

ImageU8 invert(const ImageU8& img) {
    ImageU8 out(img.width(), img.height(), img.channels());
    for (size_t i = 0; i < img.size(); ++i)
        out.data()[i] = static_cast<std::uint8_t>(255 - img.data()[i]);
    return out;
}

namespace oracle {

ImageF brute_distance(const PixelMask& mask) {
    const int w = mask.width(), h = mask.height();
    ImageF out(w, h, 1, 0.0f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            // Nearest virtual outside pixel first.
            double best = std::min(std::min(x + 1, y + 1), std::min(w - x, h - y));
            best *= best;
            for (int qy = 0; qy < h; ++qy) {
                for (int qx = 0; qx < w; ++qx) {
                    if (mask.at(qx, qy)) continue;
                    const double d = static_cast<double>(qx - x) * (qx - x) +
                                     static_cast<double>(qy - y) * (qy - y);
                    best = std::min(best, d);
                }
            }
            out.at(x, y) = static_cast<float>(std::sqrt(best));
        }
    }
    return out;
}

double brute_min_energy(const RegionGraph& graph, std::vector<int>* best) {
    const int n = static_cast<int>(graph.vertices.size());
    if (n > 20) throw std::invalid_argument("brute_min_energy: graph too large");
    double best_e = std::numeric_limits<double>::infinity();
    for (unsigned long m = 0; m < (1ul << n); ++m) {
        double e = 0;
        for (int i = 0; i < n; ++i)
            e += (m >> i) & 1 ? graph.vertices[i].u1 : graph.vertices[i].u0;
        for (const auto& edge : graph.edges)
            if (((m >> edge.a) & 1) != ((m >> edge.b) & 1)) e += edge.w;
        if (e < best_e) {
            best_e = e;
            if (best) {
                best->assign(n, 0);
                for (int i = 0; i < n; ++i) (*best)[i] = (m >> i) & 1;
            }
        }
    }
    return best_e;
}

ImageF naive_guided(const ImageF& img, int radius, double epsilon) {
    const int w = img.width(), h = img.height();
    std::vector<double> a(static_cast<size_t>(w) * h), b(a.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0, sum2 = 0;
            int cnt = 0;
            for (int qy = std::max(0, y - radius); qy <= std::min(h - 1, y + radius); ++qy) {
                for (int qx = std::max(0, x - radius); qx <= std::min(w - 1, x + radius); ++qx) {
                    sum += img.at(qx, qy);
                    sum2 += static_cast<double>(img.at(qx, qy)) * img.at(qx, qy);
                    ++cnt;
                }
            }
            const double mean = sum / cnt;
            const double var = sum2 / cnt - mean * mean;
            a[static_cast<size_t>(y) * w + x] = var / (var + epsilon);
            b[static_cast<size_t>(y) * w + x] = mean * (1.0 - var / (var + epsilon));
        }
    }
    ImageF out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sa = 0, sb = 0;
            int cnt = 0;
            for (int qy = std::max(0, y - radius); qy <= std::min(h - 1, y + radius); ++qy) {
                for (int qx = std::max(0, x - radius); qx <= std::min(w - 1, x + radius); ++qx) {
                    sa += a[static_cast<size_t>(qy) * w + qx];
                    sb += b[static_cast<size_t>(qy) * w + qx];
                    ++cnt;
                }
            }
            out.at(x, y) = static_cast<float>(sa / cnt * img.at(x, y) + sb / cnt);
        }
    }
    return out;
}

std::vector<std::vector<std::int32_t>> level_components(const ImageU8& img, int t) {
    const int w = img.width(), h = img.height();
    std::vector<int> label(static_cast<size_t>(w) * h, -1);
    std::vector<std::vector<std::int32_t>> comps;
    std::vector<std::int32_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (img.at(x, y) > t || label[static_cast<size_t>(y) * w + x] >= 0) continue;
            const int id = static_cast<int>(comps.size());
            comps.emplace_back();
            stack.assign(1, y * w + x);
            label[static_cast<size_t>(y) * w + x] = id;
            while (!stack.empty()) {
                const auto p = stack.back();
                stack.pop_back();
                comps[id].push_back(p);
                const int px = p % w, py = p / w;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int qx = px + dx, qy = py + dy;
                        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                        if (img.at(qx, qy) > t) continue;
                        auto& lq = label[static_cast<size_t>(qy) * w + qx];
                        if (lq < 0) {
                            lq = id;
                            stack.push_back(qy * w + qx);
                        }
                    }
                }
            }
            std::sort(comps[id].begin(), comps[id].end());
        }
    }
    return comps;
}

std::vector<double> hand_smoothed(const std::vector<long>& counts) {
    long total = 0;
    for (long c : counts) total += c;
    const double eps = 1.0 / static_cast<double>(total + static_cast<long>(counts.size()));
    std::vector<double> p(counts.size());
    for (size_t j = 0; j < counts.size(); ++j)
        p[j] = (counts[j] + eps) / (total + counts.size() * eps);
    return p;
}

}  // namespace oracle

PixelMask random_mask(std::mt19937& gen, int w, int h, double density) {
    std::bernoulli_distribution take(density);
    PixelMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (take(gen)) m.set(x, y);
    return m;
}

Scene training_scene(unsigned seed) {
    auto gen = rng(seed * 7919 + 13);
    const std::string pool = "ABCDEFGHKLMNOPRSTUVXYZ2345689";
    auto word = [&](int len) {
        std::string w;
        for (int i = 0; i < len; ++i) w += pool[gen() % pool.size()];
        return w;
    };
    // Dark inks of assorted hues; one per word.
    const Rgb palette[6] = {{30, 30, 30},  {110, 25, 25}, {25, 35, 105},
                            {20, 85, 30},  {95, 60, 20},  {75, 25, 95}};
    std::uniform_int_distribution<int> len(3, 5);
    std::uniform_int_distribution<int> x1(15, 40), y1(24, 44);
    std::uniform_int_distribution<int> x2(20, 60), y2(130, 150);
    SceneOptions opt;
    opt.width = 340;
    opt.height = 220;
    opt.scale = 6;
    opt.blur_sigma = 0.5;
    opt.noise_sigma = 2.5;
    opt.noise_seed = seed * 17 + 3;
    opt.post_blur = 0.5;
    opt.clutter = 4;
    opt.clutter_seed = seed * 31 + 7;
    WordSpec w1{word(len(gen)), x1(gen), y1(gen), palette[gen() % 6], true};
    WordSpec w2{word(len(gen)), x2(gen), y2(gen), palette[gen() % 6], true};
    return render_scene({w1, w2}, opt);
}

PipelineConfig fixture_config() {
    PipelineConfig cfg;
    cfg.mser_min_area = 80;        // smallest glyph piece worth keeping at scale 6
    cfg.mser_max_variation = 1.2;  // wedge-heavy letterforms stabilize late
    cfg.mser_min_diversity = 0.25;
    cfg.harvest_erase_iou = 0.2;
    cfg.model_pd_max = 40.0;       // solid-ink fixtures sit far above photo contrast
    cfg.line_angle_feature_div = 45.0;  // moment orientation is noise for round glyphs
    cfg.line_scale_feature_gain = 50.0; // letterform scale spread fits one bandwidth
    return cfg;
}

CharacternessModel train_fixture_model(int n_images, unsigned seed0) {
    const PipelineConfig cfg = fixture_config();
    const HarvestParams params = cfg.harvest_params();
    std::vector<TrainingSample> samples;
    for (int i = 0; i < n_images; ++i) {
        const Scene scene = training_scene(seed0 + i);
        const auto got = harvest_image_samples(scene.rgb, scene.ink, params);
        samples.insert(samples.end(), got.begin(), got.end());
    }
    return train(samples, cfg.train_params());
}

Region make_region(const PixelMask& mask) {
    Region r;
    r.image_width = mask.width();
    r.image_height = mask.height();
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y)) r.pixels.push_back(y * mask.width() + x);
    r.geometry = region_geometry(mask);
    r.bbox = r.geometry.bbox;
    return r;
}

}  // namespace testutil
