#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gprtopo {

/// Grayscale image, row-major, intensities normalized to [0,1].
/// This is the domain of the sublevel-set filtration, so every producer
/// is responsible for keeping values inside [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels; // row-major, size == width * height

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return pixels.size(); }
};

/// Throws std::invalid_argument if dimensions or value range are broken.
void require_valid(const GrayImage& img);

enum class NormalizeMode { minmax, none };

/// minmax maps min->0, max->1; a constant image maps to all 0.5.
GrayImage normalize(const GrayImage& img, NormalizeMode mode);

/// v -> 1 - v. Sublevel filtrations grow dark-first; inverting lets bright
/// ridges enter the filtration early.
GrayImage invert(const GrayImage& img);

/// Snap intensities to a uniform grid of `levels` values:
/// v -> round(v * (levels-1)) / (levels-1). levels must be >= 2.
GrayImage quantize(const GrayImage& img, int levels);

// ---- I/O (image_io.cpp) ----

/// Reads PGM (P2/P5) or PNG (8/16-bit grayscale). A color PNG is an error
/// unless allow_color is set, in which case it is converted with the
/// BT.601 luma weights (0.299, 0.587, 0.114).
GrayImage load_image(const std::string& path, bool allow_color = false);

GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path, int bitdepth = 8, bool ascii = false);

GrayImage load_png(const std::string& path, bool allow_color = false);
void save_png(const GrayImage& img, const std::string& path, int bitdepth = 8);

/// 8-bit RGB writer used for fused outputs; planes are [0,1] doubles.
void save_png_rgb(const std::string& path, int width, int height,
                  const std::vector<double>& r, const std::vector<double>& g,
                  const std::vector<double>& b);

} // namespace gprtopo
