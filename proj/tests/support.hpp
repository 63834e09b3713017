#pragma once

#include "gprtopo/image.hpp"
#include "gprtopo/rng.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

namespace testsupport {

/// Random image with `levels` distinct intensity values on the quantize grid.
inline gprtopo::GrayImage random_image(gprtopo::Rng& rng, int width, int height, int levels) {
    gprtopo::GrayImage img(width, height);
    for (double& v : img.pixels)
        v = static_cast<double>(rng.next_below(static_cast<std::uint64_t>(levels))) / (levels - 1);
    return img;
}

/// 3x3 ring fixture: border 0.1, center 1.0.
inline gprtopo::GrayImage ring_image() {
    gprtopo::GrayImage img(3, 3, 0.1);
    img.at(1, 1) = 1.0;
    return img;
}

/// Unique scratch directory under the system temp dir; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("gprtopo_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Relative path -> file contents for every regular file under root.
inline std::vector<std::pair<std::string, std::string>> tree_snapshot(
    const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            entries.emplace_back(entry.path().lexically_relative(root).string(),
                                 slurp(entry.path()));
    std::sort(entries.begin(), entries.end());
    return entries;
}

} // namespace testsupport
