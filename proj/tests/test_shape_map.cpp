#include "gprtopo/shape_map.hpp"

#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace gprtopo;

namespace {

std::set<int> nonzero_pixels(const ShapeMap& m) {
    std::set<int> out;
    for (std::size_t i = 0; i < m.values.size(); ++i)
        if (m.values[i] > 0.0) out.insert(static_cast<int>(i));
    return out;
}

} // namespace

TEST_CASE("empty diagram renders to an all-zero map") {
    PersistenceDiagram d;
    d.width = 4;
    d.height = 3;
    const ShapeMap m = render_shape_map(d, 4, 3, RenderMode::boundary, 0.0);
    for (double v : m.values) CHECK(v == 0.0);
}

TEST_CASE("ring generator renders the 8 border pixels at full intensity") {
    const GrayImage img = testsupport::ring_image();
    const TopoConfig cfg{};
    const TopoResult r = topo_extract(img, cfg);
    CHECK(r.shape.width == 3);
    CHECK(r.shape.height == 3);
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) {
            if (row == 1 && col == 1)
                CHECK(r.shape.at(row, col) == 0.0);
            else
                CHECK(r.shape.at(row, col) == 1.0);
        }
}

TEST_CASE("filled mode adds the enclosed interior") {
    // 5x5 ring of low values around a high 3x3 block center
    GrayImage img(5, 5, 0.1);
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 3; ++c) img.at(r, c) = 1.0;
    TopoConfig cfg;
    cfg.quantize_levels = 16;
    cfg.mode = RenderMode::boundary;
    const TopoResult boundary = topo_extract(img, cfg);
    cfg.mode = RenderMode::filled;
    const TopoResult filled = topo_extract(img, cfg);
    const auto b_px = nonzero_pixels(boundary.shape);
    const auto f_px = nonzero_pixels(filled.shape);
    CHECK(b_px.size() == 16); // the outer ring
    CHECK(f_px.size() == 25); // ring plus enclosed 3x3
    for (int px : b_px) CHECK(f_px.count(px) == 1);
}

TEST_CASE("intensity is lifetime over the maximum surviving lifetime") {
    // two rings with different contrast: lifetimes 0.9 and 0.45
    GrayImage img(7, 3, 0.1);
    img.at(1, 1) = 1.0;  // ring A around (1,1)
    img.at(1, 5) = 0.55; // ring B around (1,5)
    const TopoConfig cfg{.quantize_levels = 21};
    const TopoResult r = topo_extract(img, cfg);
    std::set<double> intensities;
    for (double v : r.shape.values)
        if (v > 0.0) intensities.insert(v);
    REQUIRE(intensities.size() == 2);
    CHECK(*intensities.rbegin() == doctest::Approx(1.0));
    CHECK(*intensities.begin() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("raising min_lifetime never adds rendered pixels") {
    Rng rng(55);
    const GrayImage img = testsupport::random_image(rng, 20, 20, 8);
    TopoConfig cfg;
    cfg.quantize_levels = 8;
    std::set<int> prev;
    bool first = true;
    for (double min_lt : {0.0, 0.2, 0.4, 0.6, 0.9}) {
        cfg.min_lifetime = min_lt;
        const TopoResult r = topo_extract(img, cfg);
        const auto px = nonzero_pixels(r.shape);
        if (!first)
            for (int p : px) CHECK(prev.count(p) == 1);
        prev = px;
        first = false;
    }
}

TEST_CASE("rendered pixel set is invariant under intensity rescaling") {
    Rng rng(56);
    GrayImage img = testsupport::random_image(rng, 16, 16, 8);
    GrayImage scaled = img;
    for (double& v : scaled.pixels) v *= 0.35;
    const GrayImage renorm = normalize(scaled, NormalizeMode::minmax);
    TopoConfig cfg;
    cfg.quantize_levels = 8;
    cfg.min_lifetime = 0.0;
    const auto a = nonzero_pixels(topo_extract(img, cfg).shape);
    const auto b = nonzero_pixels(topo_extract(renorm, cfg).shape);
    CHECK(a == b);
}

TEST_CASE("fuse endpoints and affinity in alpha") {
    const GrayImage img = testsupport::ring_image();
    ShapeMap topo(3, 3);
    topo.at(0, 0) = 0.8;
    topo.at(1, 1) = 0.4;

    const FusedImage at1 = fuse(img, topo, 1.0);
    CHECK(at1.blend == img.pixels);
    const FusedImage at0 = fuse(img, topo, 0.0);
    CHECK(at0.blend == topo.values);

    const FusedImage mid = fuse(img, topo, 0.5);
    CHECK(mid.blend[4] == doctest::Approx(0.5 * 1.0 + 0.5 * 0.4));
    for (std::size_t i = 0; i < mid.blend.size(); ++i)
        CHECK(mid.blend[i] ==
              doctest::Approx(0.5 * at1.blend[i] + 0.5 * at0.blend[i]).epsilon(1e-12));

    GrayImage small(2, 2, 0.5);
    CHECK_THROWS_AS(fuse(small, topo, 0.5), std::invalid_argument);
}

TEST_CASE("fuse arithmetic example") {
    GrayImage raw(1, 1, 0.4);
    ShapeMap topo(1, 1);
    topo.values[0] = 0.8;
    CHECK(fuse(raw, topo, 0.5).blend[0] == doctest::Approx(0.6));
}

TEST_CASE("constant image yields an empty map and a pure raw blend") {
    GrayImage img(6, 5, 0.7);
    TopoConfig cfg;
    cfg.alpha = 0.3;
    const TopoResult r = topo_extract(img, cfg);
    for (double v : r.shape.values) CHECK(v == 0.0);
    for (double v : r.fused.blend) CHECK(v == doctest::Approx(0.3 * 0.7));
}

TEST_CASE("topo_pipeline is deterministic") {
    Rng rng(57);
    const GrayImage img = testsupport::random_image(rng, 24, 18, 16);
    TopoConfig cfg;
    cfg.mode = RenderMode::filled;
    const FusedImage a = topo_pipeline(img, cfg);
    const FusedImage b = topo_pipeline(img, cfg);
    CHECK(a.raw == b.raw);
    CHECK(a.topo == b.topo);
    CHECK(a.blend == b.blend);
}

TEST_CASE("fused PNG writers") {
    testsupport::TempDir tmp("fused");
    const TopoResult r = topo_extract(testsupport::ring_image(), TopoConfig{});
    const std::string rgb = (tmp.path() / "f.png").string();
    const std::string blend = (tmp.path() / "b.png").string();
    write_fused_png(r.fused, rgb);
    write_fused_png(r.fused, blend, true);
    const GrayImage single = load_image(blend);
    CHECK(single.width == 3);
    CHECK_THROWS_AS(load_image(rgb), std::runtime_error); // RGB needs --luma
    CHECK(load_image(rgb, true).width == 3);
}

TEST_CASE("dimension mismatch is rejected") {
    const PersistenceDiagram d = compute_persistence(build_sublevel_complex(testsupport::ring_image()));
    CHECK_THROWS_AS(render_shape_map(d, 4, 4, RenderMode::boundary, 0.0), std::invalid_argument);
}
