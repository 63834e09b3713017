#pragma once

#include "gprtopo/cubical.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace gprtopo {

/// One birth/death record over Z/2. For dim-1 pairs, rep_cycle holds the
/// edge cell ids of a representative cycle: the reduced column of the
/// killing square at pairing time. It has empty mod-2 boundary and its
/// maximum edge value equals the birth.
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();
    std::int32_t birth_cell = -1;
    std::int32_t death_cell = -1; // -1 for essential pairs
    std::vector<std::int32_t> rep_cycle;

    bool essential() const { return death_cell < 0; }
};

/// death - birth; +inf for essential pairs.
double lifetime(const PersistencePair& p);

struct PersistenceDiagram {
    int width = 0;
    int height = 0;
    /// Zero-persistence pairs are always computed; this flag controls
    /// whether they appear in visible_pairs() and exports.
    bool includes_zero_persistence = false;
    /// All pairs: finite pairs ordered by the filtration position of the
    /// death cell, then essential pairs by birth position.
    std::vector<PersistencePair> pairs;

    std::vector<const PersistencePair*> visible_pairs() const;
};

enum class ReductionVariant {
    standard, // single left-to-right pass over all columns
    twist     // reduce squares first, clear their paired edge columns
};

/// Persistent homology of the filtered complex by Z/2 boundary-matrix
/// column reduction. Both variants produce identical diagrams (the twist
/// pass only skips columns that are known to reduce to zero).
/// Throws std::invalid_argument if the complex is unsorted or non-monotone.
PersistenceDiagram compute_persistence(const FilteredComplex& c,
                                       ReductionVariant variant = ReductionVariant::standard);

/// Keeps pairs with lifetime >= min_lifetime; essential pairs always stay.
PersistenceDiagram filter_by_lifetime(const PersistenceDiagram& d, double min_lifetime);

/// Number of dim-k classes alive at eps: birth <= eps < death.
std::int64_t betti_curve(const PersistenceDiagram& d, int dim, double eps);

/// CSV export: "dim,birth,death,lifetime,n_cycle_edges"; infinities are
/// written as "inf". Only visible pairs are written.
void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out);

/// Representative-cycle dump: one "pair_index,row,col,orientation" line per
/// cycle edge (orientation: h or v).
void write_cycles_csv(const PersistenceDiagram& d, const FilteredComplex& c, std::ostream& out);

} // namespace gprtopo
