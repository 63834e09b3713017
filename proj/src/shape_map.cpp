#include "gprtopo/shape_map.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace gprtopo {

namespace {

// Pixels of one generator: endpoint pixels of every cycle edge, plus the
// enclosed region in filled mode. The enclosure is found by flood-filling
// the complement from outside the cycle's bounding box; a 4-connected cycle
// cannot be crossed by a 4-connected flood, and self-touching cycles simply
// enclose whatever the flood cannot reach.
std::vector<std::int32_t> generator_pixels(const PersistenceDiagram& d, const FilteredComplex& geom,
                                           const PersistencePair& pair, RenderMode mode) {
    const int w = d.width, h = d.height;
    std::vector<char> on_cycle(static_cast<std::size_t>(w) * h, 0);
    int r0 = h, c0 = w, r1 = -1, c1 = -1;
    for (std::int32_t edge : pair.rep_cycle) {
        for (std::int32_t px : geom.edge_pixels(edge)) {
            on_cycle[px] = 1;
            const int r = px / w, c = px % w;
            r0 = std::min(r0, r);
            r1 = std::max(r1, r);
            c0 = std::min(c0, c);
            c1 = std::max(c1, c);
        }
    }
    std::vector<std::int32_t> pixels;
    if (r1 < 0) return pixels;

    if (mode == RenderMode::boundary) {
        for (std::int32_t px = 0; px < w * h; ++px)
            if (on_cycle[px]) pixels.push_back(px);
        return pixels;
    }

    // flood fill over the bounding box padded by one, seeded at the pad
    const int bw = c1 - c0 + 3, bh = r1 - r0 + 3; // box + 1-pixel pad
    std::vector<char> outside(static_cast<std::size_t>(bw) * bh, 0);
    auto idx = [bw](int r, int c) { return static_cast<std::size_t>(r) * bw + c; };
    auto blocked = [&](int r, int c) {
        const int ir = r + r0 - 1, ic = c + c0 - 1;
        if (ir < 0 || ir >= h || ic < 0 || ic >= w) return false;
        return on_cycle[static_cast<std::size_t>(ir) * w + ic] != 0;
    };
    std::vector<std::int32_t> stack;
    stack.push_back(0);
    outside[0] = 1;
    while (!stack.empty()) {
        const std::int32_t cur = stack.back();
        stack.pop_back();
        const int r = cur / bw, c = cur % bw;
        const int nr[4] = {r - 1, r + 1, r, r};
        const int nc[4] = {c, c, c - 1, c + 1};
        for (int k = 0; k < 4; ++k) {
            if (nr[k] < 0 || nr[k] >= bh || nc[k] < 0 || nc[k] >= bw) continue;
            const std::size_t ni = idx(nr[k], nc[k]);
            if (outside[ni] || blocked(nr[k], nc[k])) continue;
            outside[ni] = 1;
            stack.push_back(static_cast<std::int32_t>(ni));
        }
    }
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) {
            const bool cyc = on_cycle[static_cast<std::size_t>(r) * w + c];
            if (cyc || !outside[idx(r - r0 + 1, c - c0 + 1)])
                pixels.push_back(static_cast<std::int32_t>(r) * w + c);
        }
    return pixels;
}

} // namespace

ShapeMap render_shape_map(const PersistenceDiagram& d, int width, int height, RenderMode mode,
                          double min_lifetime, std::vector<RenderedGenerator>* generators) {
    if (width != d.width || height != d.height)
        throw std::invalid_argument("shape map dimensions do not match the diagram source");
    if (min_lifetime < 0.0) throw std::invalid_argument("min_lifetime must be >= 0");
    ShapeMap map(width, height);
    if (generators) generators->clear();

    std::vector<const PersistencePair*> survivors;
    double max_lifetime = 0.0;
    for (const PersistencePair* p : d.visible_pairs()) {
        if (p->dim != 1 || p->essential()) continue;
        const double lt = lifetime(*p);
        if (lt < min_lifetime) continue;
        survivors.push_back(p);
        max_lifetime = std::max(max_lifetime, lt);
    }
    if (survivors.empty() || max_lifetime <= 0.0) return map;

    // cycle geometry only depends on the grid dimensions
    FilteredComplex geom;
    geom.width = width;
    geom.height = height;

    for (const PersistencePair* p : survivors) {
        const double intensity = lifetime(*p) / max_lifetime;
        const auto pixels = generator_pixels(d, geom, *p, mode);
        RenderedGenerator gen;
        gen.lifetime = lifetime(*p);
        gen.n_pixels = static_cast<std::int64_t>(pixels.size());
        gen.min_row = height;
        gen.min_col = width;
        for (std::int32_t px : pixels) {
            map.values[px] = std::max(map.values[px], intensity);
            const int r = px / width, c = px % width;
            gen.min_row = std::min(gen.min_row, r);
            gen.max_row = std::max(gen.max_row, r);
            gen.min_col = std::min(gen.min_col, c);
            gen.max_col = std::max(gen.max_col, c);
        }
        if (generators) generators->push_back(gen);
    }
    return map;
}

FusedImage fuse(const GrayImage& raw, const ShapeMap& topo, double alpha) {
    require_valid(raw);
    if (raw.width != topo.width || raw.height != topo.height)
        throw std::invalid_argument("fuse: image and shape map dimensions differ");
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("fuse: alpha must be in [0,1]");
    FusedImage f;
    f.width = raw.width;
    f.height = raw.height;
    f.alpha = alpha;
    f.raw = raw.pixels;
    f.topo = topo.values;
    f.blend.resize(f.raw.size());
    for (std::size_t i = 0; i < f.raw.size(); ++i)
        f.blend[i] = alpha * f.raw[i] + (1.0 - alpha) * f.topo[i];
    return f;
}

TopoResult topo_extract(const GrayImage& img, const TopoConfig& cfg) {
    require_valid(img);
    GrayImage work = cfg.invert ? invert(img) : img;
    work = quantize(work, cfg.quantize_levels);
    const FilteredComplex complex = build_sublevel_complex(work);
    TopoResult result;
    result.diagram = compute_persistence(complex, cfg.variant);
    result.shape = render_shape_map(result.diagram, img.width, img.height, cfg.mode,
                                    cfg.min_lifetime, &result.generators);
    result.fused = fuse(img, result.shape, cfg.alpha);
    return result;
}

FusedImage topo_pipeline(const GrayImage& img, const TopoConfig& cfg) {
    return topo_extract(img, cfg).fused;
}

void write_fused_png(const FusedImage& f, const std::string& path, bool blend_only) {
    if (blend_only) {
        GrayImage img(f.width, f.height);
        img.pixels = f.blend;
        save_png(img, path);
        return;
    }
    save_png_rgb(path, f.width, f.height, f.raw, f.topo, f.blend);
}

void write_generators_csv(const std::vector<RenderedGenerator>& gens, std::ostream& out) {
    out.precision(9);
    out << "lifetime,n_pixels,min_row,min_col,max_row,max_col\n";
    for (const RenderedGenerator& g : gens)
        out << g.lifetime << "," << g.n_pixels << "," << g.min_row << "," << g.min_col << ","
            << g.max_row << "," << g.max_col << "\n";
}

} // namespace gprtopo
