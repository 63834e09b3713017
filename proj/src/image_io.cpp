#include "gprtopo/image.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace gprtopo {

namespace {

// Skips whitespace and '#' comment lines between PGM header tokens.
int next_pgm_token(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    return c;
}

long read_pgm_int(std::istream& in) {
    int c = next_pgm_token(in);
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("malformed PGM header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '2' && m1 != '5'))
        throw std::runtime_error("unsupported format: not a P2/P5 PGM: " + path);
    bool binary = (m1 == '5');
    long w = read_pgm_int(in);
    long h = read_pgm_int(in);
    long maxval = read_pgm_int(in);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        throw std::runtime_error("malformed PGM header in " + path);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const double denom = static_cast<double>(maxval);
    const std::size_t n = img.size();
    if (binary) {
        in.get(); // single whitespace after maxval
        if (maxval <= 255) {
            std::vector<unsigned char> buf(n);
            in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
            if (static_cast<std::size_t>(in.gcount()) != n)
                throw std::runtime_error("truncated PGM data in " + path);
            for (std::size_t i = 0; i < n; ++i) img.pixels[i] = buf[i] / denom;
        } else {
            // two bytes per sample, big-endian
            std::vector<unsigned char> buf(n * 2);
            in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * 2));
            if (static_cast<std::size_t>(in.gcount()) != n * 2)
                throw std::runtime_error("truncated PGM data in " + path);
            for (std::size_t i = 0; i < n; ++i) {
                unsigned v = (unsigned(buf[2 * i]) << 8) | buf[2 * i + 1];
                img.pixels[i] = v / denom;
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            long v = read_pgm_int(in);
            if (v < 0 || v > maxval) throw std::runtime_error("PGM sample out of range in " + path);
            img.pixels[i] = v / denom;
        }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path, int bitdepth, bool ascii) {
    require_valid(img);
    if (bitdepth != 8 && bitdepth != 16) throw std::invalid_argument("PGM bitdepth must be 8 or 16");
    const long maxval = (bitdepth == 8) ? 255 : 65535;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (ascii ? "P2" : "P5") << "\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    const std::size_t n = img.size();
    if (ascii) {
        for (std::size_t i = 0; i < n; ++i) {
            out << std::lround(img.pixels[i] * maxval);
            out << (((i + 1) % img.width == 0) ? '\n' : ' ');
        }
    } else if (bitdepth == 8) {
        std::vector<unsigned char> buf(n);
        for (std::size_t i = 0; i < n; ++i)
            buf[i] = static_cast<unsigned char>(std::lround(img.pixels[i] * 255.0));
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n));
    } else {
        std::vector<unsigned char> buf(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            unsigned v = static_cast<unsigned>(std::lround(img.pixels[i] * 65535.0));
            buf[2 * i] = static_cast<unsigned char>(v >> 8);
            buf[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
        }
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 2));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

GrayImage load_png(const std::string& path, bool allow_color) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    std::vector<png_bytep> row_ptrs;
    std::vector<unsigned char> data;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("failed to decode PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    bool is_color = (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
                     color == PNG_COLOR_TYPE_PALETTE);
    if (is_color && !allow_color) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("color input: " + path + " is not grayscale (pass --luma to convert)");
    }

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    color = png_get_color_type(png, info);
    depth = png_get_bit_depth(png, info);
    int channels = png_get_channels(png, info);
    std::size_t rowbytes = png_get_rowbytes(png, info);

    data.resize(rowbytes * h);
    row_ptrs.resize(h);
    for (png_uint_32 r = 0; r < h; ++r) row_ptrs[r] = data.data() + r * rowbytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const double denom = (depth == 16) ? 65535.0 : 255.0;
    auto sample = [&](const unsigned char* p, int c) -> double {
        if (depth == 16) {
            unsigned v = (unsigned(p[2 * c]) << 8) | p[2 * c + 1]; // PNG is big-endian
            return v / denom;
        }
        return p[c] / denom;
    };
    const int bytes_per_px = channels * (depth / 8);
    for (png_uint_32 r = 0; r < h; ++r) {
        const unsigned char* row = data.data() + r * rowbytes;
        for (png_uint_32 c = 0; c < w; ++c) {
            const unsigned char* px = row + c * bytes_per_px;
            double v;
            if (channels >= 3)
                v = 0.299 * sample(px, 0) + 0.587 * sample(px, 1) + 0.114 * sample(px, 2);
            else
                v = sample(px, 0);
            img.at(static_cast<int>(r), static_cast<int>(c)) = std::min(1.0, std::max(0.0, v));
        }
    }
    return img;
}

namespace {

void write_png_impl(const std::string& path, int width, int height, int color_type, int bitdepth,
                    const std::vector<unsigned char>& data) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to encode PNG: " + path);
    }
    png_init_io(png, fp.get());
    // fixed settings keep output bytes reproducible
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, width, height, bitdepth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_bytep> rows(height);
    for (int r = 0; r < height; ++r)
        rows[r] = const_cast<png_bytep>(data.data() + static_cast<std::size_t>(r) * rowbytes);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

void save_png(const GrayImage& img, const std::string& path, int bitdepth) {
    require_valid(img);
    if (bitdepth != 8 && bitdepth != 16) throw std::invalid_argument("PNG bitdepth must be 8 or 16");
    const std::size_t n = img.size();
    std::vector<unsigned char> data;
    if (bitdepth == 8) {
        data.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            data[i] = static_cast<unsigned char>(std::lround(img.pixels[i] * 255.0));
    } else {
        data.resize(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            unsigned v = static_cast<unsigned>(std::lround(img.pixels[i] * 65535.0));
            data[2 * i] = static_cast<unsigned char>(v >> 8);
            data[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
        }
    }
    write_png_impl(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, bitdepth, data);
}

void save_png_rgb(const std::string& path, int width, int height, const std::vector<double>& r,
                  const std::vector<double>& g, const std::vector<double>& b) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (r.size() != n || g.size() != n || b.size() != n)
        throw std::invalid_argument("RGB plane size mismatch");
    std::vector<unsigned char> data(n * 3);
    auto to8 = [](double v) {
        return static_cast<unsigned char>(std::lround(std::min(1.0, std::max(0.0, v)) * 255.0));
    };
    for (std::size_t i = 0; i < n; ++i) {
        data[3 * i] = to8(r[i]);
        data[3 * i + 1] = to8(g[i]);
        data[3 * i + 2] = to8(b[i]);
    }
    write_png_impl(path, width, height, PNG_COLOR_TYPE_RGB, 8, data);
}

GrayImage load_image(const std::string& path, bool allow_color) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open " + path);
    unsigned char magic[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(magic), 2);
    probe.close();
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return load_pgm(path);
    if (magic[0] == 0x89 && magic[1] == 'P') return load_png(path, allow_color);
    throw std::runtime_error("unsupported format: " + path + " (expected PGM or PNG)");
}

} // namespace gprtopo
