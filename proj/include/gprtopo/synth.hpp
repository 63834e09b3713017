#pragma once

#include "gprtopo/boxes.hpp"
#include "gprtopo/bscan.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gprtopo {

inline constexpr double kC0 = 2.998e8; // free-space wave speed [m/s]

/// Buried cylinder. y_c is the depth of the center below the surface.
struct PipeSpec {
    double x_c = 0.0;         // horizontal center [m]
    double y_c = 0.0;         // center depth [m]
    double diameter = 0.0;    // [m]
    double reflectivity = 1.0;
};

struct SceneSpec {
    double width = 16.0;          // [m]
    double depth = 6.0;           // [m]
    int n_traces = 456;
    double trace_spacing = 0.024; // [m/step]
    double center_freq = 350e6;   // Ricker center frequency [Hz]
    double rel_permittivity = 9.0;
    double dt = 0.25e-9;          // [s]
    int n_samples = 512;
    double noise_rms = 0.0;
    int clutter_bands = 0;
    std::vector<PipeSpec> pipes;

    double velocity() const; // kC0 / sqrt(rel_permittivity)
};

/// Ricker wavelet r(t) = (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2); peak 1 at t=0.
double ricker(double f, double t);

/// Two-way travel time from antenna position x to the nearest point of the
/// pipe surface: t = 2 (sqrt((x-x_c)^2 + y_c^2) - diameter/2) / v.
double hyperbola_traveltime(const PipeSpec& pipe, double x, double v);

struct RenderResult {
    Bscan bscan;
    std::vector<GroundTruthBox> boxes; // one per pipe, same order
};

/// Renders analytic hyperbolic reflections (Ricker wavelet, 1/max(1,r)
/// geometric spreading), plus optional white noise and horizontal clutter
/// bands. Trace j records at x = j * trace_spacing. Deterministic in seed.
RenderResult render_scene(const SceneSpec& scene, std::uint64_t seed);

/// Sampling ranges for dataset generation.
struct DatasetConfig {
    SceneSpec scene;                               // base scene; pipes field is ignored
    std::vector<double> diameters{0.3, 0.5, 1.0};  // drawn uniformly from this set
    double x_min = 5.0, x_max = 11.0;              // pipe center range [m]
    double y_min = 3.5, y_max = 5.3;               // depth range [m]
    int pipes_min = 1, pipes_max = 1;
    double reflectivity = 1.0;
    double clip_pct = 99.0;
};

/// Writes n (B-scan, PNG image, YOLO label) triples under out_dir plus a
/// manifest of "image_path<TAB>label_path" lines. Item i uses seed + i, so
/// re-running with the same seed reproduces byte-identical files.
/// Returns the manifest path.
std::string generate_dataset(const DatasetConfig& cfg, int n, std::uint64_t seed,
                             const std::string& out_dir);

} // namespace gprtopo
