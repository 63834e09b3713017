#include "gprtopo/synth.hpp"

#include "gprtopo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gprtopo {

double SceneSpec::velocity() const { return kC0 / std::sqrt(rel_permittivity); }

double ricker(double f, double t) {
    if (!(f > 0.0)) throw std::invalid_argument("ricker requires f > 0");
    const double u2 = M_PI * M_PI * f * f * t * t;
    return (1.0 - 2.0 * u2) * std::exp(-u2);
}

double hyperbola_traveltime(const PipeSpec& pipe, double x, double v) {
    if (!(v > 0.0)) throw std::invalid_argument("traveltime requires v > 0");
    const double dist = std::hypot(x - pipe.x_c, pipe.y_c);
    const double radius = pipe.diameter / 2.0;
    if (dist < radius) throw std::invalid_argument("antenna position inside pipe radius");
    return 2.0 * (dist - radius) / v;
}

namespace {

constexpr std::uint64_t kRenderSalt = 0xda3e39cb94b95bdbULL;

void require_valid(const SceneSpec& s) {
    if (s.n_traces < 1 || s.n_samples < 2)
        throw std::invalid_argument("scene needs n_traces >= 1 and n_samples >= 2");
    if (!(s.width > 0.0) || !(s.depth > 0.0) || !(s.trace_spacing > 0.0) || !(s.dt > 0.0))
        throw std::invalid_argument("scene dimensions and sampling must be positive");
    if (s.rel_permittivity < 1.0) throw std::invalid_argument("rel_permittivity must be >= 1");
    if (!(s.center_freq > 0.0)) throw std::invalid_argument("center_freq must be positive");
    if (s.n_traces * s.trace_spacing > s.width + 1e-9)
        throw std::invalid_argument("antenna aperture exceeds scene width");
    if (s.n_samples * s.dt < 2.0 * s.depth / s.velocity())
        throw std::invalid_argument("time window too short for deepest reflection");
    for (const PipeSpec& p : s.pipes) {
        if (!(p.diameter > 0.0)) throw std::invalid_argument("pipe diameter must be positive");
        if (!(p.reflectivity > 0.0) || p.reflectivity > 1.0)
            throw std::invalid_argument("pipe reflectivity must be in (0,1]");
        if (p.y_c <= p.diameter / 2.0) throw std::invalid_argument("pipe outside scene: not fully buried");
        if (p.x_c < 0.0 || p.x_c > s.width || p.y_c + p.diameter / 2.0 > s.depth)
            throw std::invalid_argument("pipe outside scene");
    }
}

// Largest |t| at which |ricker| still reaches `frac` of its peak. Solves
// (2s - 1) e^{-s} = frac on the decaying tail (s = (pi f t)^2 > 1.5).
double ricker_tail_time(double f, double frac) {
    double lo = 1.5, hi = 60.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = (2.0 * mid - 1.0) * std::exp(-mid);
        if (val > frac)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(0.5 * (lo + hi)) / (M_PI * f);
}

// Monotone envelope of |ricker|: 1 over the main lobe, the decaying tail
// beyond it.
double ricker_envelope(double f, double t) {
    const double s = M_PI * M_PI * f * f * t * t;
    if (s <= 1.5) return 1.0;
    return (2.0 * s - 1.0) * std::exp(-s);
}

// The annotation box hugs the part of the hyperbola that is actually bright
// in the rendered image: walking off-apex, the reflection at trace x arrives
// ever later, so on the apex row its contribution decays with the wavelet
// envelope. The box spans the offsets where that apex-row profile stays
// above 10% of the apex amplitude; its vertical extent runs from the apex
// arrival to the arrival at the box edge, padded by the wavelet tail.
GroundTruthBox pipe_box(const SceneSpec& s, const PipeSpec& p) {
    const double v = s.velocity();
    const double radius = p.diameter / 2.0;
    const double r0 = p.y_c - radius;
    const double t0 = 2.0 * r0 / v;
    const double amp0 = p.reflectivity / std::max(1.0, r0);
    const double t_tail = ricker_tail_time(s.center_freq, 0.1);

    const double step = s.trace_spacing / 8.0;
    double d = 0.0;
    while (d < s.width) {
        const double next = d + step;
        const double r = std::hypot(next, p.y_c) - radius;
        const double dt_arrival = 2.0 * (r - r0) / v;
        const double profile =
            p.reflectivity / std::max(1.0, r) * ricker_envelope(s.center_freq, dt_arrival);
        if (profile < 0.1 * amp0) break;
        d = next;
    }
    const double r_edge = std::hypot(d, p.y_c) - radius;
    const double t_edge = 2.0 * r_edge / v;

    // continuous position x [m] -> pixel coordinate x/spacing + 0.5
    double x0 = (p.x_c - d) / s.trace_spacing + 0.5;
    double x1 = (p.x_c + d) / s.trace_spacing + 0.5;
    double y0 = (t0 - t_tail) / s.dt + 0.5;
    double y1 = (t_edge + t_tail) / s.dt + 0.5;

    x0 = std::clamp(x0 / s.n_traces, 0.0, 1.0);
    x1 = std::clamp(x1 / s.n_traces, 0.0, 1.0);
    y0 = std::clamp(y0 / s.n_samples, 0.0, 1.0);
    y1 = std::clamp(y1 / s.n_samples, 0.0, 1.0);
    const double min_px = 1.0; // never collapse below one pixel
    GroundTruthBox box;
    box.class_id = 0;
    box.w = std::max(x1 - x0, min_px / s.n_traces);
    box.h = std::max(y1 - y0, min_px / s.n_samples);
    box.cx = std::clamp(0.5 * (x0 + x1), box.w / 2.0, 1.0 - box.w / 2.0);
    box.cy = std::clamp(0.5 * (y0 + y1), box.h / 2.0, 1.0 - box.h / 2.0);
    return box;
}

} // namespace

RenderResult render_scene(const SceneSpec& scene, std::uint64_t seed) {
    require_valid(scene);
    const double v = scene.velocity();
    RenderResult result;
    result.bscan = Bscan(scene.n_samples, scene.n_traces, scene.dt, scene.trace_spacing);
    Bscan& b = result.bscan;

    const double t_cut = 2.5 / scene.center_freq; // wavelet support cutoff
    for (const PipeSpec& pipe : scene.pipes) {
        for (int j = 0; j < scene.n_traces; ++j) {
            const double x = j * scene.trace_spacing;
            const double r = std::hypot(x - pipe.x_c, pipe.y_c) - pipe.diameter / 2.0;
            const double t_arr = 2.0 * r / v;
            const double amp = pipe.reflectivity / std::max(1.0, r);
            const int i_lo = std::max(0, static_cast<int>(std::ceil((t_arr - t_cut) / scene.dt)));
            const int i_hi =
                std::min(scene.n_samples - 1, static_cast<int>(std::floor((t_arr + t_cut) / scene.dt)));
            for (int i = i_lo; i <= i_hi; ++i)
                b.at(i, j) += amp * ricker(scene.center_freq, i * scene.dt - t_arr);
        }
        result.boxes.push_back(pipe_box(scene, pipe));
    }

    Rng rng(seed ^ kRenderSalt);
    if (scene.noise_rms > 0.0)
        for (double& sample : b.data) sample += scene.noise_rms * rng.gaussian();
    for (int k = 0; k < scene.clutter_bands; ++k) {
        const int row = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(scene.n_samples)));
        const double amp = rng.uniform(0.01, 0.05) * (rng.next_u64() & 1 ? 1.0 : -1.0);
        for (int j = 0; j < scene.n_traces; ++j) b.at(row, j) += amp;
    }
    return result;
}

std::string generate_dataset(const DatasetConfig& cfg, int n, std::uint64_t seed,
                             const std::string& out_dir) {
    if (n < 1) throw std::invalid_argument("dataset size must be >= 1");
    if (cfg.diameters.empty()) throw std::invalid_argument("no pipe diameters configured");
    if (cfg.pipes_min < 0 || cfg.pipes_max < cfg.pipes_min)
        throw std::invalid_argument("bad pipes_min/pipes_max range");

    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "bscans");
    fs::create_directories(fs::path(out_dir) / "images");
    fs::create_directories(fs::path(out_dir) / "labels");

    std::string manifest_path = (fs::path(out_dir) / "manifest.txt").string();
    std::ofstream manifest(manifest_path);
    if (!manifest) throw std::runtime_error("cannot write " + manifest_path);

    for (int i = 0; i < n; ++i) {
        const std::uint64_t item_seed = seed + static_cast<std::uint64_t>(i);
        Rng rng(item_seed);
        SceneSpec scene = cfg.scene;
        scene.pipes.clear();
        const int count =
            cfg.pipes_min +
            static_cast<int>(cfg.pipes_max > cfg.pipes_min
                                 ? rng.next_below(static_cast<std::uint64_t>(cfg.pipes_max - cfg.pipes_min + 1))
                                 : 0);
        for (int k = 0; k < count; ++k) {
            PipeSpec p;
            p.diameter = cfg.diameters[rng.next_below(cfg.diameters.size())];
            p.x_c = rng.uniform(cfg.x_min, cfg.x_max);
            p.y_c = rng.uniform(cfg.y_min, cfg.y_max);
            p.reflectivity = cfg.reflectivity;
            scene.pipes.push_back(p);
        }

        RenderResult rendered = render_scene(scene, item_seed);

        char name[32];
        std::snprintf(name, sizeof(name), "item_%05d", i);
        const std::string bscan_rel = std::string("bscans/") + name + ".gprb";
        const std::string image_rel = std::string("images/") + name + ".png";
        const std::string label_rel = std::string("labels/") + name + ".txt";

        write_bscan(rendered.bscan, (fs::path(out_dir) / bscan_rel).string());
        save_png(to_image(rendered.bscan, cfg.clip_pct), (fs::path(out_dir) / image_rel).string());
        std::ofstream label((fs::path(out_dir) / label_rel).string());
        for (const GroundTruthBox& box : rendered.boxes) label << yolo_label_line(box) << "\n";
        label.close();

        manifest << image_rel << "\t" << label_rel << "\n";
    }
    manifest.close();
    if (!manifest) throw std::runtime_error("write failed: " + manifest_path);
    return manifest_path;
}

} // namespace gprtopo
