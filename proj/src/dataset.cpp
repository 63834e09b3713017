#include "gprtopo/dataset.hpp"

#include "gprtopo/rng.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace gprtopo {

std::string yolo_label_line(const GroundTruthBox& box) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f %.6f", box.class_id, box.cx, box.cy, box.w,
                  box.h);
    return buf;
}

namespace {

constexpr std::uint64_t kOriginSalt[2] = {0x736d756c61746564ULL, 0x6669656c64000000ULL};

void validate_item(const AnnotatedItem& item) {
    if (item.id.empty()) throw std::invalid_argument("annotated item without id");
    if (item.image_path.empty() && !item.image.has_value())
        throw std::invalid_argument("annotated item '" + item.id + "' has no image data");
    for (const GroundTruthBox& b : item.boxes) {
        if (b.cx < 0 || b.cx > 1 || b.cy < 0 || b.cy > 1 || b.w <= 0 || b.h <= 0 || b.w > 1 ||
            b.h > 1)
            throw std::invalid_argument("annotated item '" + item.id + "' has a box outside [0,1]");
    }
}

void write_item(const AnnotatedItem& item, const fs::path& img_dir, const fs::path& lbl_dir,
                std::string& image_rel, std::string& label_rel) {
    std::string ext = "png";
    if (!item.image_path.empty()) {
        const std::string src_ext = fs::path(item.image_path).extension().string();
        if (!src_ext.empty()) ext = src_ext.substr(1);
    }
    const fs::path img_out = img_dir / (item.id + "." + ext);
    const fs::path lbl_out = lbl_dir / (item.id + ".txt");
    if (!item.image_path.empty())
        fs::copy_file(item.image_path, img_out, fs::copy_options::overwrite_existing);
    else
        save_png(*item.image, img_out.string());
    std::ofstream lbl(lbl_out);
    if (!lbl) throw std::runtime_error("cannot write " + lbl_out.string());
    for (const GroundTruthBox& b : item.boxes) lbl << yolo_label_line(b) << "\n";
    image_rel = img_out.lexically_relative(img_dir.parent_path().parent_path()).string();
    label_rel = lbl_out.lexically_relative(lbl_dir.parent_path().parent_path()).string();
}

} // namespace

std::string export_yolo(const std::vector<AnnotatedItem>& items, const std::string& out_dir,
                        double train_frac, std::uint64_t seed, ExportCounts* counts) {
    if (items.empty()) throw std::invalid_argument("export_yolo: no items");
    if (!(train_frac > 0.0) || !(train_frac < 1.0))
        throw std::invalid_argument("export_yolo: train_frac must be in (0,1)");
    for (const AnnotatedItem& item : items) validate_item(item);

    for (const char* split : {"train", "val"}) {
        fs::create_directories(fs::path(out_dir) / "images" / split);
        fs::create_directories(fs::path(out_dir) / "labels" / split);
    }

    // independent split per origin group; order inside a split follows the
    // shuffled order so the manifest is reproducible
    ExportCounts n;
    struct Line {
        std::string split, origin, image, label;
    };
    std::vector<Line> lines;
    for (int o = 0; o < 2; ++o) {
        const Origin origin = (o == 0) ? Origin::simulated : Origin::field;
        std::vector<const AnnotatedItem*> group;
        for (const AnnotatedItem& item : items)
            if (item.origin == origin) group.push_back(&item);
        if (group.empty()) continue;

        Rng rng(seed ^ kOriginSalt[o]);
        deterministic_shuffle(group, rng);
        const int n_train =
            static_cast<int>(std::llround(train_frac * static_cast<double>(group.size())));

        for (std::size_t i = 0; i < group.size(); ++i) {
            const bool train = static_cast<int>(i) < n_train;
            const char* split = train ? "train" : "val";
            Line line;
            line.split = split;
            line.origin = (o == 0) ? "simulated" : "field";
            write_item(*group[i], fs::path(out_dir) / "images" / split,
                       fs::path(out_dir) / "labels" / split, line.image, line.label);
            lines.push_back(std::move(line));
            if (origin == Origin::simulated)
                (train ? n.train_simulated : n.val_simulated)++;
            else
                (train ? n.train_field : n.val_field)++;
        }
    }

    const std::string manifest_path = (fs::path(out_dir) / "manifest.txt").string();
    std::ofstream manifest(manifest_path);
    if (!manifest) throw std::runtime_error("cannot write " + manifest_path);
    manifest << "# counts train/simulated=" << n.train_simulated
             << " val/simulated=" << n.val_simulated << " train/field=" << n.train_field
             << " val/field=" << n.val_field << "\n";
    for (const Line& line : lines)
        manifest << line.split << "\t" << line.origin << "\t" << line.image << "\t" << line.label
                 << "\n";
    manifest.close();
    if (!manifest) throw std::runtime_error("write failed: " + manifest_path);
    if (counts) *counts = n;
    return manifest_path;
}

} // namespace gprtopo
