#pragma once

#include "gprtopo/image.hpp"

#include <array>
#include <string>
#include <vector>

namespace gprtopo {

/// Raw radar record: n_samples time samples per trace, n_traces traces.
/// data is row-major with row = time index, column = trace index.
struct Bscan {
    int n_samples = 0;
    int n_traces = 0;
    double dt = 0.0;            // sample interval [s]
    double trace_spacing = 0.0; // antenna step [m]
    std::vector<double> data;   // size n_samples * n_traces

    Bscan() = default;
    Bscan(int ns, int nt, double dt_, double spacing)
        : n_samples(ns), n_traces(nt), dt(dt_), trace_spacing(spacing),
          data(static_cast<std::size_t>(ns) * nt, 0.0) {}

    double& at(int sample, int trace) { return data[static_cast<std::size_t>(sample) * n_traces + trace]; }
    double at(int sample, int trace) const { return data[static_cast<std::size_t>(sample) * n_traces + trace]; }
};

void require_valid(const Bscan& b);

/// Subtracts the mean trace: every time row ends up with zero mean across
/// traces, which suppresses horizontally coherent (static) reflections.
Bscan background_removal(const Bscan& b);

/// Trace-wise frequency-domain band-pass. The mask is 1 inside
/// [f_lo*(1+taper), f_hi*(1-taper)], 0 outside [f_lo, f_hi], and
/// raised-cosine in the two taper bands. f_hi must not exceed Nyquist.
Bscan bandpass(const Bscan& b, double f_lo = 100e6, double f_hi = 1900e6, double taper_frac = 0.1);

/// Sliding-window RMS gain normalization. Window is centered, clipped at
/// trace ends; silent windows are guarded by a 1e-12 floor.
Bscan agc(const Bscan& b, double window_s, double target_rms = 1.0);

/// The five-window AGC bank: element k is agc(b, windows[k]).
std::array<Bscan, 5> agc_variants(const Bscan& b, const std::array<double, 5>& windows_s);

/// Maps amplitudes to [0,1] with 0 at the image midpoint 0.5. Amplitudes
/// are clipped symmetrically at the clip_pct percentile of |data|.
GrayImage to_image(const Bscan& b, double clip_pct = 99.0);

// ---- container I/O ----
// little-endian: magic "GPRB", u32 n_samples, u32 n_traces, f64 dt,
// f64 trace_spacing, then row-major f32 samples.

void write_bscan(const Bscan& b, const std::string& path);
Bscan read_bscan(const std::string& path);

/// CSV fixture import: rows are time samples, columns are traces.
Bscan bscan_from_csv(const std::string& path, double dt, double trace_spacing);

} // namespace gprtopo
