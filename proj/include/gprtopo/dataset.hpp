#pragma once

#include "gprtopo/boxes.hpp"
#include "gprtopo/image.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gprtopo {

enum class Origin { simulated, field };

/// One labeled image headed for the detector-ready export. The image is
/// either an existing file (copied verbatim) or in-memory pixels (written
/// as PNG).
struct AnnotatedItem {
    std::string id; // output basename stem
    std::string image_path;
    std::optional<GrayImage> image;
    std::vector<GroundTruthBox> boxes;
    Origin origin = Origin::simulated;
};

struct ExportCounts {
    int train_simulated = 0;
    int val_simulated = 0;
    int train_field = 0;
    int val_field = 0;
};

/// Writes images/{train,val}/ and labels/{train,val}/ under out_dir.
/// Each origin group is shuffled seed-deterministically and split
/// independently with round(n * train_frac) items going to train.
/// Returns the manifest path ("split<TAB>origin<TAB>image<TAB>label" lines
/// after a counts header). Re-running with the same inputs and seed is
/// byte-identical.
std::string export_yolo(const std::vector<AnnotatedItem>& items, const std::string& out_dir,
                        double train_frac, std::uint64_t seed, ExportCounts* counts = nullptr);

} // namespace gprtopo
