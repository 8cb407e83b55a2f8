#include "baker/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "baker/model_io.hpp"

namespace baker {

std::pair<OrbitClass, int> classify_point(cplx z, int n_max, const Tower& tower) {
    cplx back2{0.0, 0.0};
    cplx back1{0.0, 0.0};
    cplx cur = z;
    int applied = 0;
    for (int n = 0; n <= n_max; ++n) {
        if (n >= 2) {
            const double scale = std::max({1.0, std::abs(back2), std::abs(back1), std::abs(cur)});
            if (std::abs(cur - back2) <= 1e-9 * scale) return {OrbitClass::Period2Cycle, applied};
        }
        if (cur != cplx{0.0, 0.0} && u0_contains(cur, tower.params()))
            return {OrbitClass::EscapingU0, applied};
        if (n == n_max) break;
        if (!(std::abs(cur) < overflow_guard(tower.params()))) break;
        const EvalResult r = eval_F(cur, tower);
        ++applied;
        if (r.cap_exceeded) return {OrbitClass::CapExceeded, applied};
        if (!r.value.finite) return {OrbitClass::PoleTerminated, applied};
        back2 = back1;
        back1 = cur;
        cur = r.value.value;
    }
    return {OrbitClass::Undecided, applied};
}

namespace {

struct Pixel {
    unsigned char r, g, b;
};

Pixel color_for(OrbitClass c, int iterations) {
    switch (c) {
        case OrbitClass::EscapingU0: {
            const int fade = std::min(iterations * 10, 150);
            return Pixel{static_cast<unsigned char>(30 + fade / 3),
                         static_cast<unsigned char>(100 + fade / 3),
                         static_cast<unsigned char>(255 - fade / 2)};
        }
        case OrbitClass::Period2Cycle: return Pixel{240, 140, 20};
        case OrbitClass::PoleTerminated: return Pixel{0, 0, 0};
        case OrbitClass::CapExceeded: return Pixel{220, 0, 220};
        case OrbitClass::Undecided: return Pixel{128, 128, 128};
    }
    return Pixel{128, 128, 128};
}

Pixel blend(Pixel base, Pixel tint, int permille) {
    auto mix = [&](unsigned char a, unsigned char b) {
        return static_cast<unsigned char>((a * (1000 - permille) + b * permille) / 1000);
    };
    return Pixel{mix(base.r, tint.r), mix(base.g, tint.g), mix(base.b, tint.b)};
}

} // namespace

int thread_budget() {
    if (const char* env = std::getenv("BAKER_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

Image render(const Tower& tower, const RenderSpec& spec) {
    if (spec.width < 1 || spec.height < 1 || spec.span_x <= 0.0 || spec.span_y <= 0.0 ||
        spec.max_iter < 1)
        throw invalid_parameter("render window and resolution must be positive");

    // Touch every level up front so worker threads read a published tower.
    tower.build_all();

    Image img;
    img.width = spec.width;
    img.height = spec.height;
    img.rgb.assign(static_cast<std::size_t>(spec.width) * spec.height * 3, 0);

    const ModelParams& p = tower.params();
    const double px = spec.span_x / spec.width;
    const double py = spec.span_y / spec.height;
    const double stroke = 0.75 * std::max(px, py);

    auto render_row = [&](int y) {
        for (int x = 0; x < spec.width; ++x) {
            const cplx z{spec.center.real() - spec.span_x / 2.0 + (x + 0.5) * px,
                         spec.center.imag() + spec.span_y / 2.0 - (y + 0.5) * py};
            const auto [cls, iters] = classify_point(z, spec.max_iter, tower);
            Pixel c = color_for(cls, iters);

            if (spec.overlays & OverlaySkeleton) {
                if (u0_contains(z, p)) c = blend(c, Pixel{220, 235, 255}, 250);
            }
            if (spec.overlays & OverlayWitnessAnnuli) {
                const double a = std::abs(z);
                for (int j = 0; j <= p.j_max; ++j) {
                    const RoundAnnulus w = witness_annulus(p, j);
                    if (w.inner > a) break;
                    if (a > w.inner && a < w.inner * w.ratio) {
                        c = blend(c, Pixel{0, 230, 230}, 350);
                        break;
                    }
                }
            }
            if (spec.overlays & OverlayDiscs) {
                if (const auto j = enclosing_disc_level(z, p)) {
                    const double d =
                        std::abs(std::abs(z - disc_center(p, *j)) - disc_radius(p, *j));
                    if (d <= stroke) c = Pixel{40, 200, 60};
                }
            }
            if (spec.overlays & OverlaySubdiscs) {
                const auto j = enclosing_disc_level(z, p);
                if (j && *j <= p.j_max) {
                    for (const SubDisc& sd : tower.level(*j).subdiscs) {
                        const double d = std::abs(std::abs(z - sd.model.center) - sd.model.radius);
                        if (d <= stroke) {
                            c = Pixel{250, 230, 40};
                            break;
                        }
                    }
                }
            }

            const std::size_t o = (static_cast<std::size_t>(y) * spec.width + x) * 3;
            img.rgb[o] = c.r;
            img.rgb[o + 1] = c.g;
            img.rgb[o + 2] = c.b;
        }
    };

    const int workers = std::min(thread_budget(), spec.height);
    if (workers <= 1) {
        for (int y = 0; y < spec.height; ++y) render_row(y);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (int y = t; y < spec.height; y += workers) render_row(y);
            });
        for (std::thread& th : pool) th.join();
    }
    return img;
}

void write_ppm(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw model_io_error("cannot write " + path);
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.rgb.data()),
              static_cast<std::streamsize>(image.rgb.size()));
    if (!out.good()) throw model_io_error("short write to " + path);
}

} // namespace baker
