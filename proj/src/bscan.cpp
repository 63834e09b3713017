#include "gprtopo/bscan.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gprtopo {

void require_valid(const Bscan& b) {
    if (b.n_samples < 2 || b.n_traces < 1)
        throw std::invalid_argument("B-scan needs n_samples >= 2 and n_traces >= 1");
    if (!(b.dt > 0.0) || !(b.trace_spacing > 0.0))
        throw std::invalid_argument("B-scan needs dt > 0 and trace_spacing > 0");
    if (b.data.size() != static_cast<std::size_t>(b.n_samples) * b.n_traces)
        throw std::invalid_argument("B-scan data size does not match dimensions");
}

Bscan background_removal(const Bscan& b) {
    require_valid(b);
    Bscan out = b;
    for (int i = 0; i < b.n_samples; ++i) {
        double mean = 0.0;
        for (int j = 0; j < b.n_traces; ++j) mean += b.at(i, j);
        mean /= b.n_traces;
        for (int j = 0; j < b.n_traces; ++j) out.at(i, j) = b.at(i, j) - mean;
    }
    return out;
}

namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is.
std::mutex g_fftw_plan_mutex;

double bandpass_mask(double f, double f_lo, double f_hi, double taper) {
    if (f < f_lo || f > f_hi) return 0.0;
    const double rise_end = f_lo * (1.0 + taper);
    const double fall_begin = f_hi * (1.0 - taper);
    if (f < rise_end) {
        const double width = f_lo * taper;
        if (width <= 0.0) return 1.0;
        return 0.5 * (1.0 - std::cos(M_PI * (f - f_lo) / width));
    }
    if (f > fall_begin) {
        const double width = f_hi * taper;
        if (width <= 0.0) return 1.0;
        return 0.5 * (1.0 - std::cos(M_PI * (f_hi - f) / width));
    }
    return 1.0;
}

} // namespace

Bscan bandpass(const Bscan& b, double f_lo, double f_hi, double taper_frac) {
    require_valid(b);
    const double nyquist = 1.0 / (2.0 * b.dt);
    if (f_lo < 0.0 || f_lo >= f_hi) throw std::invalid_argument("bandpass requires 0 <= f_lo < f_hi");
    if (f_hi > nyquist * (1.0 + 1e-12)) throw std::invalid_argument("bandpass f_hi exceeds Nyquist");
    if (taper_frac < 0.0 || taper_frac > 0.5)
        throw std::invalid_argument("bandpass taper_frac must be in [0, 0.5]");

    const int n = b.n_samples;
    const int n_freq = n / 2 + 1;
    std::vector<double> mask(n_freq);
    const double df = 1.0 / (n * b.dt);
    for (int k = 0; k < n_freq; ++k) mask[k] = bandpass_mask(k * df, f_lo, f_hi, taper_frac);

    double* in = fftw_alloc_real(n);
    fftw_complex* spec = fftw_alloc_complex(n_freq);
    fftw_plan fwd, inv;
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(n, in, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(n, spec, in, FFTW_ESTIMATE);
    }

    Bscan out = b;
    const double inv_n = 1.0 / n;
    for (int j = 0; j < b.n_traces; ++j) {
        for (int i = 0; i < n; ++i) in[i] = b.at(i, j);
        fftw_execute(fwd);
        for (int k = 0; k < n_freq; ++k) {
            spec[k][0] *= mask[k];
            spec[k][1] *= mask[k];
        }
        fftw_execute(inv);
        for (int i = 0; i < n; ++i) out.at(i, j) = in[i] * inv_n;
    }

    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(in);
    fftw_free(spec);
    return out;
}

Bscan agc(const Bscan& b, double window_s, double target_rms) {
    require_valid(b);
    if (window_s < 3.0 * b.dt) throw std::invalid_argument("agc window must be at least 3*dt");
    if (!(target_rms > 0.0)) throw std::invalid_argument("agc target_rms must be positive");
    constexpr double kEpsAgc = 1e-12;

    const int n = b.n_samples;
    const int win = static_cast<int>(std::llround(window_s / b.dt));
    Bscan out = b;
    std::vector<double> sq_prefix(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < b.n_traces; ++j) {
        sq_prefix[0] = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = b.at(i, j);
            sq_prefix[i + 1] = sq_prefix[i] + v * v;
        }
        for (int i = 0; i < n; ++i) {
            int lo = i - win / 2;
            int hi = lo + win;
            lo = std::max(lo, 0);
            hi = std::min(hi, n);
            const double ms = (sq_prefix[hi] - sq_prefix[lo]) / (hi - lo);
            const double rms = std::sqrt(std::max(ms, 0.0));
            out.at(i, j) = b.at(i, j) * (target_rms / std::max(kEpsAgc, rms));
        }
    }
    return out;
}

std::array<Bscan, 5> agc_variants(const Bscan& b, const std::array<double, 5>& windows_s) {
    std::array<Bscan, 5> out;
    for (std::size_t k = 0; k < windows_s.size(); ++k) out[k] = agc(b, windows_s[k]);
    return out;
}

GrayImage to_image(const Bscan& b, double clip_pct) {
    require_valid(b);
    if (!(clip_pct > 50.0) || clip_pct > 100.0)
        throw std::invalid_argument("clip_pct must be in (50, 100]");

    std::vector<double> mags(b.data.size());
    for (std::size_t i = 0; i < b.data.size(); ++i) mags[i] = std::fabs(b.data[i]);
    // nearest-rank percentile
    const std::size_t n = mags.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(clip_pct / 100.0 * n));
    k = std::min(std::max<std::size_t>(k, 1), n) - 1;
    std::nth_element(mags.begin(), mags.begin() + k, mags.end());
    const double clip = mags[k];

    GrayImage img(b.n_traces, b.n_samples);
    if (clip <= 0.0) {
        std::fill(img.pixels.begin(), img.pixels.end(), 0.5);
        return img;
    }
    const double scale = 0.5 / clip;
    for (int i = 0; i < b.n_samples; ++i)
        for (int j = 0; j < b.n_traces; ++j) {
            const double v = std::clamp(b.at(i, j), -clip, clip);
            img.at(i, j) = 0.5 + v * scale;
        }
    return img;
}

namespace {
constexpr char kMagic[4] = {'G', 'P', 'R', 'B'};
}

void write_bscan(const Bscan& b, const std::string& path) {
    require_valid(b);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, 4);
    const std::uint32_t ns = static_cast<std::uint32_t>(b.n_samples);
    const std::uint32_t nt = static_cast<std::uint32_t>(b.n_traces);
    out.write(reinterpret_cast<const char*>(&ns), 4);
    out.write(reinterpret_cast<const char*>(&nt), 4);
    out.write(reinterpret_cast<const char*>(&b.dt), 8);
    out.write(reinterpret_cast<const char*>(&b.trace_spacing), 8);
    std::vector<float> buf(b.data.size());
    for (std::size_t i = 0; i < b.data.size(); ++i) buf[i] = static_cast<float>(b.data[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Bscan read_bscan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a GPRB container: " + path);
    std::uint32_t ns = 0, nt = 0;
    double dt = 0, spacing = 0;
    in.read(reinterpret_cast<char*>(&ns), 4);
    in.read(reinterpret_cast<char*>(&nt), 4);
    in.read(reinterpret_cast<char*>(&dt), 8);
    in.read(reinterpret_cast<char*>(&spacing), 8);
    if (!in) throw std::runtime_error("truncated GPRB header: " + path);
    Bscan b(static_cast<int>(ns), static_cast<int>(nt), dt, spacing);
    std::vector<float> buf(b.data.size());
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != buf.size() * sizeof(float))
        throw std::runtime_error("truncated GPRB data: " + path);
    for (std::size_t i = 0; i < buf.size(); ++i) b.data[i] = buf[i];
    require_valid(b);
    return b;
}

Bscan bscan_from_csv(const std::string& path, double dt, double trace_spacing) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("ragged CSV in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
    Bscan b(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), dt, trace_spacing);
    for (int i = 0; i < b.n_samples; ++i)
        for (int j = 0; j < b.n_traces; ++j) b.at(i, j) = rows[i][j];
    require_valid(b);
    return b;
}

} // namespace gprtopo
