#pragma once

#include "gprtopo/boxes.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gprtopo {

/// One detector output box, normalized coordinates.
struct Detection {
    std::string image_id;
    int class_id = 0;
    double cx = 0.0, cy = 0.0, w = 0.0, h = 0.0;
    double confidence = 0.0;
};

using GroundTruthMap = std::map<std::string, std::vector<GroundTruthBox>>;

/// Intersection over union of two axis-aligned boxes; 0 when disjoint.
double iou(const GroundTruthBox& a, const GroundTruthBox& b);

/// All-point interpolated average precision at one IoU threshold.
/// Predictions are ranked by confidence (ties: image_id, then input
/// order); each prediction greedily matches the highest-IoU unmatched
/// ground truth of its image.
double average_precision(const std::vector<Detection>& preds, const GroundTruthMap& gts,
                         double iou_thresh);

struct MapScores {
    std::array<double, 10> ap_per_threshold{}; // IoU 0.50, 0.55, ..., 0.95
    double map50 = 0.0;
    double map50_95 = 0.0;
};

MapScores map_range(const std::vector<Detection>& preds, const GroundTruthMap& gts);

/// Reads "image_id,class_id,cx,cy,w,h,confidence" lines; a leading header
/// line is allowed. Errors name the offending line number.
std::vector<Detection> read_predictions_csv(const std::string& path);

/// Loads every "*.txt" YOLO label file in a directory; image_id = stem.
GroundTruthMap read_labels_dir(const std::string& path);

void write_metrics_text(const MapScores& scores, std::ostream& out);
void write_metrics_csv(const MapScores& scores, std::ostream& out);

} // namespace gprtopo
