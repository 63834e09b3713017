#pragma once

#include "gprtopo/image.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace gprtopo {

enum class EdgeOrientation : std::uint8_t { none, horizontal, vertical };

/// One cell of the cubical complex. dim 0 = vertex (one per pixel),
/// dim 1 = edge between 4-neighbor pixels, dim 2 = unit square over a
/// 2x2 pixel block. anchor is the top-left lattice coordinate.
struct Cube {
    std::int32_t id = -1;
    std::uint8_t dim = 0;
    int row = 0;
    int col = 0;
    EdgeOrientation orientation = EdgeOrientation::none;
    double value = 0.0;
};

/// Sublevel-set filtered cubical complex of an image (V-construction):
/// vertex value = pixel intensity, edge/square value = max over incident
/// vertices. Cell ids are laid out densely: vertices, then horizontal
/// edges, then vertical edges, then squares, each block row-major.
///
/// `order` lists ids sorted by (value, dim, id); `position` is its inverse.
/// Equal-value ties put faces before cofaces, so the order is a valid
/// filtration.
struct FilteredComplex {
    int width = 0;
    int height = 0;
    std::vector<double> values;        // indexed by cell id
    std::vector<std::int32_t> order;   // filtration order -> cell id
    std::vector<std::int32_t> position; // cell id -> filtration order

    std::int32_t num_vertices() const { return static_cast<std::int32_t>(width) * height; }
    std::int32_t num_hedges() const { return static_cast<std::int32_t>(height) * (width - 1); }
    std::int32_t num_vedges() const { return static_cast<std::int32_t>(height - 1) * width; }
    std::int32_t num_edges() const { return num_hedges() + num_vedges(); }
    std::int32_t num_squares() const { return static_cast<std::int32_t>(height - 1) * (width - 1); }
    std::int32_t num_cells() const { return num_vertices() + num_edges() + num_squares(); }

    std::int32_t vertex_id(int row, int col) const { return row * width + col; }
    std::int32_t hedge_id(int row, int col) const { return num_vertices() + row * (width - 1) + col; }
    std::int32_t vedge_id(int row, int col) const {
        return num_vertices() + num_hedges() + row * width + col;
    }
    std::int32_t square_id(int row, int col) const {
        return num_vertices() + num_edges() + row * (width - 1) + col;
    }

    int dim_of(std::int32_t id) const {
        if (id < num_vertices()) return 0;
        if (id < num_vertices() + num_edges()) return 1;
        return 2;
    }

    Cube cube(std::int32_t id) const;

    /// Codimension-1 faces of a cell; returns the face count (0, 2 or 4).
    int boundary(std::int32_t id, std::array<std::int32_t, 4>& faces) const;

    /// The two endpoint pixels (row-major pixel indices) of an edge cell.
    std::array<std::int32_t, 2> edge_pixels(std::int32_t edge_id) const;
};

FilteredComplex build_sublevel_complex(const GrayImage& img);

/// Brute-force Betti numbers of the sublevel complex at threshold eps:
/// beta0 by union-find over included vertices and edges, beta1 from the
/// Euler characteristic (beta1 = beta0 - chi; beta2 = 0 in 2D).
struct BettiPair {
    std::int64_t b0 = 0;
    std::int64_t b1 = 0;
};
BettiPair betti_oracle(const FilteredComplex& c, double eps);

/// Debug dump: "id,dim,row,col,value" per cell, in id order.
void dump_cells_csv(const FilteredComplex& c, std::ostream& out);

} // namespace gprtopo
