#include "gprtopo/persistence.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace gprtopo;

namespace {

const PersistencePair* find_pair(const PersistenceDiagram& d, int dim, double birth, double death) {
    for (const PersistencePair& p : d.pairs)
        if (p.dim == dim && p.birth == birth && p.death == death && !p.essential()) return &p;
    return nullptr;
}

// mod-2 boundary of an edge set must vanish: every pixel appears an even
// number of times among the edge endpoints
bool cycle_boundary_empty(const FilteredComplex& c, const std::vector<std::int32_t>& edges) {
    std::map<std::int32_t, int> degree;
    for (std::int32_t e : edges)
        for (std::int32_t px : c.edge_pixels(e)) degree[px] ^= 1;
    for (const auto& [px, odd] : degree)
        if (odd) return false;
    return true;
}

} // namespace

TEST_CASE("constant 2x2 image: one essential component, no visible loops") {
    GrayImage img(2, 2, 0.3);
    const PersistenceDiagram d = compute_persistence(build_sublevel_complex(img));
    int essentials = 0, visible_dim1 = 0;
    for (const PersistencePair* p : d.visible_pairs()) {
        if (p->essential()) {
            ++essentials;
            CHECK(p->dim == 0);
            CHECK(p->birth == 0.3);
        }
        if (p->dim == 1) ++visible_dim1;
    }
    CHECK(essentials == 1);
    CHECK(visible_dim1 == 0);
}

TEST_CASE("ring fixture: the border loop is born at 0.1 and dies at 1.0") {
    const FilteredComplex c = build_sublevel_complex(testsupport::ring_image());
    const PersistenceDiagram d = compute_persistence(c);

    const PersistencePair* loop = find_pair(d, 1, 0.1, 1.0);
    REQUIRE(loop != nullptr);
    CHECK(lifetime(*loop) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(loop->rep_cycle.size() == 8);
    CHECK(cycle_boundary_empty(c, loop->rep_cycle));
    double max_edge = 0.0;
    for (std::int32_t e : loop->rep_cycle) max_edge = std::max(max_edge, c.values[e]);
    CHECK(max_edge == 0.1);

    // no other positive-lifetime pair, and exactly one essential
    int positive_lifetime = 0, essentials = 0;
    for (const PersistencePair& p : d.pairs) {
        if (p.essential()) {
            ++essentials;
            CHECK(p.dim == 0);
            CHECK(p.birth == 0.1);
        } else if (p.death > p.birth) {
            ++positive_lifetime;
        }
    }
    CHECK(positive_lifetime == 1);
    CHECK(essentials == 1);
}

TEST_CASE("1x2 image pairs the second vertex with the merging edge") {
    GrayImage img(2, 1);
    img.at(0, 0) = 0.1;
    img.at(0, 1) = 0.2;
    PersistenceDiagram d = compute_persistence(build_sublevel_complex(img));
    REQUIRE(d.pairs.size() == 2);
    const PersistencePair* merged = find_pair(d, 0, 0.2, 0.2);
    REQUIRE(merged != nullptr);
    int essentials = 0;
    for (const PersistencePair& p : d.pairs)
        if (p.essential()) {
            ++essentials;
            CHECK(p.birth == 0.1);
        }
    CHECK(essentials == 1);

    // the zero-persistence pair is hidden by default
    CHECK(d.visible_pairs().size() == 1);
    d.includes_zero_persistence = true;
    CHECK(d.visible_pairs().size() == 2);
}

TEST_CASE("lifetime arithmetic") {
    PersistencePair p;
    p.dim = 1;
    p.birth = 0.1;
    p.death = 1.0;
    p.death_cell = 5;
    CHECK(lifetime(p) == doctest::Approx(0.9).epsilon(1e-15));
    p.death = p.birth;
    CHECK(lifetime(p) == 0.0);
    p.death_cell = -1;
    CHECK(lifetime(p) == std::numeric_limits<double>::infinity());
}

TEST_CASE("filter_by_lifetime keeps essentials and long-lived pairs") {
    const PersistenceDiagram d = compute_persistence(build_sublevel_complex(testsupport::ring_image()));
    SUBCASE("threshold zero is the identity") {
        CHECK(filter_by_lifetime(d, 0.0).pairs.size() == d.pairs.size());
    }
    SUBCASE("a strict threshold drops short pairs but never essentials") {
        const PersistenceDiagram f = filter_by_lifetime(d, 0.5);
        int essentials = 0;
        for (const PersistencePair& p : f.pairs) {
            if (p.essential())
                ++essentials;
            else
                CHECK(lifetime(p) >= 0.5);
        }
        CHECK(essentials == 1);
        CHECK(find_pair(f, 1, 0.1, 1.0) != nullptr);
    }
    SUBCASE("empty diagram stays empty") {
        PersistenceDiagram empty;
        CHECK(filter_by_lifetime(empty, 0.1).pairs.empty());
    }
}

TEST_CASE("betti_curve conventions on the ring") {
    const PersistenceDiagram d = compute_persistence(build_sublevel_complex(testsupport::ring_image()));
    CHECK(betti_curve(d, 1, 0.05) == 0);  // nothing born yet
    CHECK(betti_curve(d, 1, 0.5) == 1);   // the loop is alive
    CHECK(betti_curve(d, 1, 1.0) == 0);   // dead at its death value (half-open)
    CHECK(betti_curve(d, 0, 0.5) == 1);
    CHECK(betti_curve(d, 0, 2.0) == 1);   // essential counts forever
}

TEST_CASE("diagram matches the union-find/Euler oracle on random images") {
    Rng rng(101);
    for (int it = 0; it < 100; ++it) {
        const int w = 2 + static_cast<int>(rng.next_below(23));
        const int h = 2 + static_cast<int>(rng.next_below(23));
        const GrayImage img = testsupport::random_image(rng, w, h, 8);
        const FilteredComplex c = build_sublevel_complex(img);
        const PersistenceDiagram d = compute_persistence(c);
        std::set<double> levels(img.pixels.begin(), img.pixels.end());
        for (double eps : levels) {
            const BettiPair oracle = betti_oracle(c, eps);
            CHECK(betti_curve(d, 0, eps) == oracle.b0);
            CHECK(betti_curve(d, 1, eps) == oracle.b1);
        }
    }
}

TEST_CASE("standard and twist reductions agree exactly") {
    Rng rng(202);
    for (int it = 0; it < 40; ++it) {
        const int w = 2 + static_cast<int>(rng.next_below(20));
        const int h = 2 + static_cast<int>(rng.next_below(20));
        const FilteredComplex c =
            build_sublevel_complex(testsupport::random_image(rng, w, h, 8));
        const PersistenceDiagram a = compute_persistence(c, ReductionVariant::standard);
        const PersistenceDiagram b = compute_persistence(c, ReductionVariant::twist);
        REQUIRE(a.pairs.size() == b.pairs.size());
        for (std::size_t i = 0; i < a.pairs.size(); ++i) {
            CHECK(a.pairs[i].dim == b.pairs[i].dim);
            CHECK(a.pairs[i].birth_cell == b.pairs[i].birth_cell);
            CHECK(a.pairs[i].death_cell == b.pairs[i].death_cell);
            CHECK(a.pairs[i].rep_cycle == b.pairs[i].rep_cycle);
        }
    }
}

TEST_CASE("representative cycles are cycles born at their pair's birth") {
    Rng rng(303);
    for (int it = 0; it < 30; ++it) {
        const GrayImage img = testsupport::random_image(rng, 16, 16, 8);
        const FilteredComplex c = build_sublevel_complex(img);
        const PersistenceDiagram d = compute_persistence(c);
        for (const PersistencePair& p : d.pairs) {
            if (p.dim != 1 || p.essential()) continue;
            REQUIRE(!p.rep_cycle.empty());
            CHECK(cycle_boundary_empty(c, p.rep_cycle));
            double max_edge = 0.0;
            for (std::int32_t e : p.rep_cycle) {
                CHECK(c.values[e] <= p.birth);
                max_edge = std::max(max_edge, c.values[e]);
            }
            CHECK(max_edge == p.birth);
        }
    }
}

TEST_CASE("pairing is a perfect matching over the cells") {
    Rng rng(404);
    const GrayImage img = testsupport::random_image(rng, 12, 11, 8);
    const FilteredComplex c = build_sublevel_complex(img);
    const PersistenceDiagram d = compute_persistence(c);
    std::set<std::int32_t> seen;
    std::size_t paired = 0, essential = 0;
    for (const PersistencePair& p : d.pairs) {
        CHECK(seen.insert(p.birth_cell).second);
        if (!p.essential()) {
            CHECK(seen.insert(p.death_cell).second);
            ++paired;
        } else {
            ++essential;
        }
    }
    CHECK(2 * paired + essential == static_cast<std::size_t>(c.num_cells()));
    CHECK(essential == 1);
}

TEST_CASE("identical complexes give identical diagrams") {
    Rng rng(505);
    const GrayImage img = testsupport::random_image(rng, 14, 14, 8);
    const FilteredComplex c = build_sublevel_complex(img);
    std::ostringstream a, b;
    write_diagram_csv(compute_persistence(c), a);
    write_diagram_csv(compute_persistence(c), b);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("malformed complexes are rejected") {
    const GrayImage img = testsupport::ring_image();
    SUBCASE("non-monotone values") {
        FilteredComplex c = build_sublevel_complex(img);
        c.values[c.hedge_id(0, 0)] = 0.0; // below its vertices
        CHECK_THROWS_AS(compute_persistence(c), std::invalid_argument);
    }
    SUBCASE("unsorted order") {
        FilteredComplex c = build_sublevel_complex(img);
        std::swap(c.order.front(), c.order.back());
        CHECK_THROWS_AS(compute_persistence(c), std::invalid_argument);
    }
}

TEST_CASE("diagram CSV format") {
    const PersistenceDiagram d = compute_persistence(build_sublevel_complex(testsupport::ring_image()));
    std::ostringstream out;
    write_diagram_csv(d, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "dim,birth,death,lifetime,n_cycle_edges");
    int dim1_rows = 0, inf_rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("1,", 0) == 0) ++dim1_rows;
        if (line.find("inf") != std::string::npos) ++inf_rows;
    }
    CHECK(dim1_rows == 1);
    CHECK(inf_rows == 1);
}
