#include "gprtopo/cubical.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace gprtopo {

Cube FilteredComplex::cube(std::int32_t id) const {
    Cube c;
    c.id = id;
    c.value = values[id];
    if (id < num_vertices()) {
        c.dim = 0;
        c.row = id / width;
        c.col = id % width;
    } else if (id < num_vertices() + num_hedges()) {
        c.dim = 1;
        c.orientation = EdgeOrientation::horizontal;
        const std::int32_t k = id - num_vertices();
        c.row = k / (width - 1);
        c.col = k % (width - 1);
    } else if (id < num_vertices() + num_edges()) {
        c.dim = 1;
        c.orientation = EdgeOrientation::vertical;
        const std::int32_t k = id - num_vertices() - num_hedges();
        c.row = k / width;
        c.col = k % width;
    } else {
        c.dim = 2;
        const std::int32_t k = id - num_vertices() - num_edges();
        c.row = k / (width - 1);
        c.col = k % (width - 1);
    }
    return c;
}

int FilteredComplex::boundary(std::int32_t id, std::array<std::int32_t, 4>& faces) const {
    if (id < num_vertices()) return 0;
    if (id < num_vertices() + num_hedges()) {
        const std::int32_t k = id - num_vertices();
        const int r = k / (width - 1), c = k % (width - 1);
        faces[0] = vertex_id(r, c);
        faces[1] = vertex_id(r, c + 1);
        return 2;
    }
    if (id < num_vertices() + num_edges()) {
        const std::int32_t k = id - num_vertices() - num_hedges();
        const int r = k / width, c = k % width;
        faces[0] = vertex_id(r, c);
        faces[1] = vertex_id(r + 1, c);
        return 2;
    }
    const std::int32_t k = id - num_vertices() - num_edges();
    const int r = k / (width - 1), c = k % (width - 1);
    faces[0] = hedge_id(r, c);
    faces[1] = hedge_id(r + 1, c);
    faces[2] = vedge_id(r, c);
    faces[3] = vedge_id(r, c + 1);
    return 4;
}

std::array<std::int32_t, 2> FilteredComplex::edge_pixels(std::int32_t edge_id) const {
    std::array<std::int32_t, 4> faces;
    if (boundary(edge_id, faces) != 2) throw std::invalid_argument("not an edge cell");
    return {faces[0], faces[1]};
}

FilteredComplex build_sublevel_complex(const GrayImage& img) {
    require_valid(img);
    FilteredComplex c;
    c.width = img.width;
    c.height = img.height;
    const int w = img.width, h = img.height;
    c.values.resize(c.num_cells());

    for (int r = 0; r < h; ++r)
        for (int col = 0; col < w; ++col) c.values[c.vertex_id(r, col)] = img.at(r, col);
    for (int r = 0; r < h; ++r)
        for (int col = 0; col + 1 < w; ++col)
            c.values[c.hedge_id(r, col)] = std::max(img.at(r, col), img.at(r, col + 1));
    for (int r = 0; r + 1 < h; ++r)
        for (int col = 0; col < w; ++col)
            c.values[c.vedge_id(r, col)] = std::max(img.at(r, col), img.at(r + 1, col));
    for (int r = 0; r + 1 < h; ++r)
        for (int col = 0; col + 1 < w; ++col)
            c.values[c.square_id(r, col)] =
                std::max(std::max(img.at(r, col), img.at(r, col + 1)),
                         std::max(img.at(r + 1, col), img.at(r + 1, col + 1)));

    c.order.resize(c.num_cells());
    std::iota(c.order.begin(), c.order.end(), 0);
    std::sort(c.order.begin(), c.order.end(), [&c](std::int32_t a, std::int32_t b) {
        if (c.values[a] != c.values[b]) return c.values[a] < c.values[b];
        const int da = c.dim_of(a), db = c.dim_of(b);
        if (da != db) return da < db;
        return a < b;
    });
    c.position.resize(c.num_cells());
    for (std::int32_t i = 0; i < c.num_cells(); ++i) c.position[c.order[i]] = i;
    return c;
}

namespace {

std::int32_t uf_find(std::vector<std::int32_t>& parent, std::int32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace

BettiPair betti_oracle(const FilteredComplex& c, double eps) {
    const std::int32_t nv = c.num_vertices();
    std::vector<std::int32_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);

    std::int64_t v_inc = 0, e_inc = 0, f_inc = 0;
    for (std::int32_t id = 0; id < nv; ++id)
        if (c.values[id] <= eps) ++v_inc;

    std::array<std::int32_t, 4> faces;
    const std::int32_t edges_end = nv + c.num_edges();
    for (std::int32_t id = nv; id < edges_end; ++id) {
        if (c.values[id] > eps) continue;
        ++e_inc;
        c.boundary(id, faces);
        const std::int32_t a = uf_find(parent, faces[0]);
        const std::int32_t b = uf_find(parent, faces[1]);
        if (a != b) parent[a] = b;
    }
    for (std::int32_t id = edges_end; id < c.num_cells(); ++id)
        if (c.values[id] <= eps) ++f_inc;

    std::int64_t b0 = 0;
    for (std::int32_t id = 0; id < nv; ++id)
        if (c.values[id] <= eps && uf_find(parent, id) == id) ++b0;

    const std::int64_t chi = v_inc - e_inc + f_inc;
    BettiPair betti;
    betti.b0 = b0;
    betti.b1 = b0 - chi;
    return betti;
}

void dump_cells_csv(const FilteredComplex& c, std::ostream& out) {
    out << "id,dim,row,col,value\n";
    for (std::int32_t id = 0; id < c.num_cells(); ++id) {
        const Cube q = c.cube(id);
        out << q.id << "," << int(q.dim) << "," << q.row << "," << q.col << "," << q.value << "\n";
    }
}

} // namespace gprtopo
