#include "gprtopo/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gprtopo {

void require_valid(const GrayImage& img) {
    if (img.width < 1 || img.height < 1)
        throw std::invalid_argument("image dimensions must be at least 1x1");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw std::invalid_argument("pixel buffer size does not match dimensions");
    for (double v : img.pixels)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("pixel value outside [0,1]");
}

GrayImage normalize(const GrayImage& img, NormalizeMode mode) {
    require_valid(img);
    if (mode == NormalizeMode::none) return img;
    auto [mn_it, mx_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
    double mn = *mn_it, mx = *mx_it;
    GrayImage out(img.width, img.height);
    if (mx == mn) {
        std::fill(out.pixels.begin(), out.pixels.end(), 0.5);
        return out;
    }
    const double range = mx - mn;
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = (img.pixels[i] - mn) / range; // x/x == 1 exactly, so max -> 1
    return out;
}

GrayImage invert(const GrayImage& img) {
    require_valid(img);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = 1.0 - img.pixels[i];
    return out;
}

GrayImage quantize(const GrayImage& img, int levels) {
    require_valid(img);
    if (levels < 2) throw std::invalid_argument("quantize requires levels >= 2");
    GrayImage out(img.width, img.height);
    double n = static_cast<double>(levels - 1);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = std::round(img.pixels[i] * n) / n;
    return out;
}

} // namespace gprtopo
