#pragma once

#include <string>

namespace gprtopo {

/// Axis-aligned box in YOLO convention: center + size, normalized to [0,1]
/// by the image dimensions.
struct GroundTruthBox {
    int class_id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;
};

/// "class_id cx cy w h" with fixed 6-decimal precision.
std::string yolo_label_line(const GroundTruthBox& box);

} // namespace gprtopo
