#include "gprtopo/image.hpp"

#include "support.hpp"

#include <doctest.h>

#include <fstream>

using namespace gprtopo;

TEST_CASE("PGM values map to [0,1] by maxval division") {
    testsupport::TempDir tmp("pgm");
    const std::string path = (tmp.path() / "a.pgm").string();
    {
        std::ofstream out(path);
        out << "P2\n2 2\n255\n0 255\n255 0\n";
    }
    const GrayImage img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<double>{0.0, 1.0, 1.0, 0.0});
}

TEST_CASE("1x1 PGM with value 128") {
    testsupport::TempDir tmp("pgm1");
    const std::string path = (tmp.path() / "b.pgm").string();
    {
        std::ofstream out(path);
        out << "P2\n# comment line\n1 1\n255\n128\n";
    }
    const GrayImage img = load_image(path);
    CHECK(img.pixels[0] == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("PGM round trip is bit-exact at matching depth") {
    Rng rng(42);
    testsupport::TempDir tmp("round");
    GrayImage img(17, 9);
    for (double& v : img.pixels) v = static_cast<double>(rng.next_below(256)) / 255.0;

    for (bool ascii : {false, true}) {
        const std::string path = (tmp.path() / (ascii ? "a.pgm" : "b.pgm")).string();
        save_pgm(img, path, 8, ascii);
        CHECK(load_pgm(path).pixels == img.pixels);
    }
    // 16-bit binary
    GrayImage img16(7, 5);
    for (double& v : img16.pixels) v = static_cast<double>(rng.next_below(65536)) / 65535.0;
    const std::string path16 = (tmp.path() / "c.pgm").string();
    save_pgm(img16, path16, 16);
    CHECK(load_pgm(path16).pixels == img16.pixels);
}

TEST_CASE("PNG grayscale round trip and 16-bit support") {
    Rng rng(43);
    testsupport::TempDir tmp("png");
    GrayImage img(11, 6);
    for (double& v : img.pixels) v = static_cast<double>(rng.next_below(256)) / 255.0;
    const std::string p8 = (tmp.path() / "g8.png").string();
    save_png(img, p8, 8);
    CHECK(load_image(p8).pixels == img.pixels);

    GrayImage img16(5, 4);
    for (double& v : img16.pixels) v = static_cast<double>(rng.next_below(65536)) / 65535.0;
    const std::string p16 = (tmp.path() / "g16.png").string();
    save_png(img16, p16, 16);
    CHECK(load_image(p16).pixels == img16.pixels);
}

TEST_CASE("color PNG requires the luma flag") {
    testsupport::TempDir tmp("color");
    const std::string path = (tmp.path() / "rgb.png").string();
    std::vector<double> r(4, 1.0), g(4, 0.0), b(4, 0.0);
    save_png_rgb(path, 2, 2, r, g, b);
    CHECK_THROWS_WITH_AS(load_image(path), doctest::Contains("color input"), std::runtime_error);
    const GrayImage img = load_image(path, true);
    CHECK(img.pixels[0] == doctest::Approx(0.299).epsilon(1e-6));
}

TEST_CASE("normalize minmax stretches to the unit range") {
    GrayImage img(3, 1);
    img.pixels = {0.2, 0.4, 0.6};
    const GrayImage out = normalize(img, NormalizeMode::minmax);
    CHECK(out.pixels[0] == doctest::Approx(0.0));
    CHECK(out.pixels[1] == doctest::Approx(0.5));
    CHECK(out.pixels[2] == doctest::Approx(1.0));
}

TEST_CASE("normalize of a constant image is all 0.5") {
    GrayImage img(4, 2, 0.7);
    const GrayImage out = normalize(img, NormalizeMode::minmax);
    for (double v : out.pixels) CHECK(v == 0.5);
}

TEST_CASE("normalize none is the identity") {
    Rng rng(5);
    const GrayImage img = testsupport::random_image(rng, 6, 4, 16);
    CHECK(normalize(img, NormalizeMode::none).pixels == img.pixels);
}

TEST_CASE("normalize endpoints on any non-constant image") {
    Rng rng(6);
    for (int it = 0; it < 20; ++it) {
        GrayImage img = testsupport::random_image(rng, 8, 8, 32);
        img.pixels[0] = 0.25; // ensure non-constant
        img.pixels[1] = 0.75;
        const GrayImage out = normalize(img, NormalizeMode::minmax);
        CHECK(*std::min_element(out.pixels.begin(), out.pixels.end()) == 0.0);
        CHECK(*std::max_element(out.pixels.begin(), out.pixels.end()) == 1.0);
    }
}

TEST_CASE("invert is an involution with fixed endpoints") {
    GrayImage img(2, 1);
    img.pixels = {0.0, 0.25};
    const GrayImage inv = invert(img);
    CHECK(inv.pixels[0] == 1.0);
    CHECK(inv.pixels[1] == 0.75);
    CHECK(invert(inv).pixels == img.pixels);
}

TEST_CASE("quantize rounding rule and idempotence") {
    GrayImage img(2, 1);
    img.pixels = {0.49, 0.51};
    const GrayImage two = quantize(img, 2);
    CHECK(two.pixels[0] == 0.0);
    CHECK(two.pixels[1] == 1.0);

    Rng rng(9);
    GrayImage noisy = testsupport::random_image(rng, 10, 10, 97);
    for (int levels : {2, 3, 8, 256}) {
        const GrayImage q = quantize(noisy, levels);
        CHECK(quantize(q, levels).pixels == q.pixels);
    }

    // an 8-bit-sourced image is already on the 256-level grid
    GrayImage eight(4, 1);
    eight.pixels = {0.0, 1.0 / 255.0, 128.0 / 255.0, 1.0};
    CHECK(quantize(eight, 256).pixels == eight.pixels);

    CHECK_THROWS_AS(quantize(img, 1), std::invalid_argument);
}

TEST_CASE("invalid images are rejected") {
    GrayImage bad(2, 2);
    bad.pixels = {0.0, 0.5, 1.5, 0.25};
    CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);
    GrayImage empty;
    CHECK_THROWS_AS(require_valid(empty), std::invalid_argument);
    CHECK_THROWS_AS(load_image("/nonexistent/file.pgm"), std::runtime_error);
}
