#pragma once

#include "gprtopo/image.hpp"
#include "gprtopo/persistence.hpp"

#include <string>
#include <vector>

namespace gprtopo {

/// Lifetime-weighted rendering of the H1 generators: 0 where no generator
/// was drawn, 1 for the longest-lived surviving generator.
struct ShapeMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    ShapeMap() = default;
    ShapeMap(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0) {}
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

enum class RenderMode { boundary, filled };

/// Per-generator rendering record, used for the side-car CSV.
struct RenderedGenerator {
    double lifetime = 0.0;
    std::int64_t n_pixels = 0;
    int min_row = 0, min_col = 0, max_row = 0, max_col = 0;
};

/// Draws every surviving finite dim-1 generator at intensity
/// lifetime / max_lifetime. boundary mode marks the endpoint pixels of the
/// representative-cycle edges; filled mode additionally marks the pixels
/// the cycle encloses. Overlaps combine by pixelwise max.
ShapeMap render_shape_map(const PersistenceDiagram& d, int width, int height, RenderMode mode,
                          double min_lifetime, std::vector<RenderedGenerator>* generators = nullptr);

/// Raw image, shape map, and their alpha blend, kept as three planes.
struct FusedImage {
    int width = 0;
    int height = 0;
    double alpha = 0.5;
    std::vector<double> raw, topo, blend;
};

/// blend = alpha*raw + (1-alpha)*topo, pixelwise.
FusedImage fuse(const GrayImage& raw, const ShapeMap& topo, double alpha);

struct TopoConfig {
    bool invert = false;
    int quantize_levels = 64;
    double min_lifetime = 0.0;
    RenderMode mode = RenderMode::boundary;
    double alpha = 0.5;
    ReductionVariant variant = ReductionVariant::twist;
};

struct TopoResult {
    PersistenceDiagram diagram;
    ShapeMap shape;
    FusedImage fused;
    std::vector<RenderedGenerator> generators;
};

/// Full extraction: (invert?) -> quantize -> sublevel complex -> persistence
/// -> shape map -> fuse with the untouched input image.
TopoResult topo_extract(const GrayImage& img, const TopoConfig& cfg);

/// Same pipeline, returning just the fused image.
FusedImage topo_pipeline(const GrayImage& img, const TopoConfig& cfg);

/// RGB PNG with R=raw, G=topo, B=blend; blend_only writes a single-channel
/// PNG of the blend plane instead.
void write_fused_png(const FusedImage& f, const std::string& path, bool blend_only = false);

/// Side-car CSV: "lifetime,n_pixels,min_row,min_col,max_row,max_col".
void write_generators_csv(const std::vector<RenderedGenerator>& gens, std::ostream& out);

} // namespace gprtopo
