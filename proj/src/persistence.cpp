#include "gprtopo/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gprtopo {

double lifetime(const PersistencePair& p) {
    return p.essential() ? std::numeric_limits<double>::infinity() : p.death - p.birth;
}

std::vector<const PersistencePair*> PersistenceDiagram::visible_pairs() const {
    std::vector<const PersistencePair*> out;
    out.reserve(pairs.size());
    for (const PersistencePair& p : pairs)
        if (includes_zero_persistence || p.essential() || p.death > p.birth) out.push_back(&p);
    return out;
}

namespace {

void validate_complex(const FilteredComplex& c) {
    const std::int32_t n = c.num_cells();
    if (static_cast<std::int32_t>(c.values.size()) != n ||
        static_cast<std::int32_t>(c.order.size()) != n ||
        static_cast<std::int32_t>(c.position.size()) != n)
        throw std::invalid_argument("malformed complex: inconsistent sizes");
    std::array<std::int32_t, 4> faces;
    for (std::int32_t i = 0; i + 1 < n; ++i) {
        const std::int32_t a = c.order[i], b = c.order[i + 1];
        const bool ordered = c.values[a] < c.values[b] ||
                             (c.values[a] == c.values[b] &&
                              (c.dim_of(a) < c.dim_of(b) || (c.dim_of(a) == c.dim_of(b) && a < b)));
        if (!ordered) throw std::invalid_argument("malformed complex: cells not sorted");
    }
    for (std::int32_t id = 0; id < n; ++id) {
        if (c.position[c.order[id]] != id)
            throw std::invalid_argument("malformed complex: order/position mismatch");
        const int k = c.boundary(id, faces);
        for (int f = 0; f < k; ++f)
            if (c.values[faces[f]] > c.values[id])
                throw std::invalid_argument("malformed complex: non-monotone filtration");
    }
}

// Mod-2 column: ascending positions, low = back().
using Column = std::vector<std::int32_t>;

void symmetric_difference(const Column& a, const Column& b, Column& out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
}

struct ReductionState {
    std::vector<std::int32_t> owner;  // row position -> column position that pairs it, or -1
    std::vector<Column> reduced;      // reduced column per negative column position
    std::vector<char> positive;       // column reduced to zero (class born here)
};

// Reduces the column of the cell at filtration position j. Returns true if
// the column ended nonempty (the cell is negative and kills the class born
// at its final low).
bool reduce_column(const FilteredComplex& c, ReductionState& st, std::int32_t j, Column& col,
                   Column& scratch) {
    std::array<std::int32_t, 4> faces;
    const int k = c.boundary(c.order[j], faces);
    col.clear();
    for (int f = 0; f < k; ++f) col.push_back(c.position[faces[f]]);
    std::sort(col.begin(), col.end());

    while (!col.empty()) {
        const std::int32_t low = col.back();
        const std::int32_t other = st.owner[low];
        if (other < 0) break;
        symmetric_difference(col, st.reduced[other], scratch);
        col.swap(scratch);
    }
    if (col.empty()) {
        st.positive[j] = 1;
        return false;
    }
    st.owner[col.back()] = j;
    st.reduced[j] = col;
    return true;
}

PersistenceDiagram assemble(const FilteredComplex& c, ReductionState& st) {
    PersistenceDiagram d;
    d.width = c.width;
    d.height = c.height;
    const std::int32_t n = c.num_cells();

    // finite pairs in order of the killing cell
    for (std::int32_t j = 0; j < n; ++j) {
        if (st.reduced[j].empty()) continue;
        const std::int32_t low = st.reduced[j].back();
        PersistencePair p;
        p.dim = c.dim_of(c.order[low]);
        p.birth_cell = c.order[low];
        p.death_cell = c.order[j];
        p.birth = c.values[p.birth_cell];
        p.death = c.values[p.death_cell];
        if (p.dim == 1) {
            p.rep_cycle.reserve(st.reduced[j].size());
            for (std::int32_t pos : st.reduced[j]) p.rep_cycle.push_back(c.order[pos]);
        }
        d.pairs.push_back(std::move(p));
    }
    // essential classes: positive cells never claimed as a low
    // (dim-2 cells are never positive on a 2D sublevel complex)
    for (std::int32_t i = 0; i < n; ++i) {
        if (!st.positive[i] || st.owner[i] >= 0) continue;
        if (c.dim_of(c.order[i]) == 2) continue;
        PersistencePair p;
        p.dim = c.dim_of(c.order[i]);
        p.birth_cell = c.order[i];
        p.birth = c.values[p.birth_cell];
        d.pairs.push_back(std::move(p));
    }
    return d;
}

} // namespace

PersistenceDiagram compute_persistence(const FilteredComplex& c, ReductionVariant variant) {
    validate_complex(c);
    const std::int32_t n = c.num_cells();
    ReductionState st;
    st.owner.assign(n, -1);
    st.reduced.resize(n);
    st.positive.assign(n, 0);
    Column col, scratch;

    if (variant == ReductionVariant::standard) {
        for (std::int32_t j = 0; j < n; ++j) {
            if (c.dim_of(c.order[j]) == 0) {
                st.positive[j] = 1; // vertices have empty boundary
                continue;
            }
            reduce_column(c, st, j, col, scratch);
        }
    } else {
        // Squares first; each pairing proves its low edge column reduces to
        // zero, so the edge pass can skip ("clear") it.
        std::vector<char> cleared(n, 0);
        for (std::int32_t j = 0; j < n; ++j) {
            if (c.dim_of(c.order[j]) != 2) continue;
            if (reduce_column(c, st, j, col, scratch)) cleared[st.reduced[j].back()] = 1;
        }
        for (std::int32_t j = 0; j < n; ++j) {
            const int dim = c.dim_of(c.order[j]);
            if (dim == 0) {
                st.positive[j] = 1;
                continue;
            }
            if (dim != 1) continue;
            if (cleared[j]) {
                st.positive[j] = 1;
                continue;
            }
            reduce_column(c, st, j, col, scratch);
        }
    }
    return assemble(c, st);
}

PersistenceDiagram filter_by_lifetime(const PersistenceDiagram& d, double min_lifetime) {
    if (min_lifetime < 0.0) throw std::invalid_argument("min_lifetime must be >= 0");
    PersistenceDiagram out;
    out.width = d.width;
    out.height = d.height;
    out.includes_zero_persistence = d.includes_zero_persistence;
    for (const PersistencePair& p : d.pairs)
        if (p.essential() || lifetime(p) >= min_lifetime) out.pairs.push_back(p);
    return out;
}

std::int64_t betti_curve(const PersistenceDiagram& d, int dim, double eps) {
    std::int64_t count = 0;
    for (const PersistencePair& p : d.pairs)
        if (p.dim == dim && p.birth <= eps && eps < p.death) ++count;
    return count;
}

void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out) {
    out.precision(9);
    out << "dim,birth,death,lifetime,n_cycle_edges\n";
    for (const PersistencePair* p : d.visible_pairs()) {
        out << p->dim << "," << p->birth << ",";
        if (p->essential())
            out << "inf,inf";
        else
            out << p->death << "," << lifetime(*p);
        out << "," << p->rep_cycle.size() << "\n";
    }
}

void write_cycles_csv(const PersistenceDiagram& d, const FilteredComplex& c, std::ostream& out) {
    out << "pair_index,row,col,orientation\n";
    const auto visible = d.visible_pairs();
    for (std::size_t i = 0; i < visible.size(); ++i) {
        for (std::int32_t edge : visible[i]->rep_cycle) {
            const Cube q = c.cube(edge);
            out << i << "," << q.row << "," << q.col << ","
                << (q.orientation == EdgeOrientation::horizontal ? 'h' : 'v') << "\n";
        }
    }
}

} // namespace gprtopo
