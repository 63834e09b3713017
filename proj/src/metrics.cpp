#include "gprtopo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gprtopo {

double iou(const GroundTruthBox& a, const GroundTruthBox& b) {
    const double ax0 = a.cx - a.w / 2, ax1 = a.cx + a.w / 2;
    const double ay0 = a.cy - a.h / 2, ay1 = a.cy + a.h / 2;
    const double bx0 = b.cx - b.w / 2, bx1 = b.cx + b.w / 2;
    const double by0 = b.cy - b.h / 2, by1 = b.cy + b.h / 2;
    const double ix = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
    const double iy = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
    const double inter = ix * iy;
    const double uni = a.w * a.h + b.w * b.h - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

double average_precision(const std::vector<Detection>& preds, const GroundTruthMap& gts,
                         double iou_thresh) {
    std::size_t n_gt = 0;
    for (const auto& [id, boxes] : gts) n_gt += boxes.size();
    if (n_gt == 0 || preds.empty()) return 0.0;

    std::vector<std::size_t> order(preds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&preds](std::size_t a, std::size_t b) {
        if (preds[a].confidence != preds[b].confidence)
            return preds[a].confidence > preds[b].confidence;
        return preds[a].image_id < preds[b].image_id;
    });

    std::map<std::string, std::vector<char>> matched;
    for (const auto& [id, boxes] : gts) matched[id].assign(boxes.size(), 0);

    std::vector<double> precision, recall;
    std::size_t tp = 0, fp = 0;
    for (std::size_t rank : order) {
        const Detection& det = preds[rank];
        bool hit = false;
        auto it = gts.find(det.image_id);
        if (it != gts.end()) {
            const auto& boxes = it->second;
            auto& used = matched[det.image_id];
            double best = 0.0;
            std::size_t best_k = boxes.size();
            GroundTruthBox det_box{det.class_id, det.cx, det.cy, det.w, det.h};
            for (std::size_t k = 0; k < boxes.size(); ++k) {
                if (used[k]) continue;
                const double v = iou(det_box, boxes[k]);
                if (v > best) {
                    best = v;
                    best_k = k;
                }
            }
            if (best_k < boxes.size() && best >= iou_thresh) {
                used[best_k] = 1;
                hit = true;
            }
        }
        (hit ? tp : fp)++;
        precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
        recall.push_back(static_cast<double>(tp) / static_cast<double>(n_gt));
    }

    // precision envelope: at recall r use the max precision at recall >= r
    std::vector<double> envelope = precision;
    for (std::size_t i = envelope.size() - 1; i > 0; --i)
        envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);

    double ap = 0.0, prev_recall = 0.0;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        ap += (recall[i] - prev_recall) * envelope[i];
        prev_recall = recall[i];
    }
    return ap;
}

MapScores map_range(const std::vector<Detection>& preds, const GroundTruthMap& gts) {
    MapScores scores;
    double sum = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double thresh = (50 + 5 * i) / 100.0;
        scores.ap_per_threshold[i] = average_precision(preds, gts, thresh);
        sum += scores.ap_per_threshold[i];
    }
    scores.map50 = scores.ap_per_threshold[0];
    scores.map50_95 = sum / 10.0;
    return scores;
}

std::vector<Detection> read_predictions_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Detection> preds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("image_id", 0) == 0) continue; // header
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7)
            throw std::runtime_error(path + ": malformed prediction at line " +
                                     std::to_string(line_no));
        try {
            Detection d;
            d.image_id = cells[0];
            d.class_id = std::stoi(cells[1]);
            d.cx = std::stod(cells[2]);
            d.cy = std::stod(cells[3]);
            d.w = std::stod(cells[4]);
            d.h = std::stod(cells[5]);
            d.confidence = std::stod(cells[6]);
            preds.push_back(std::move(d));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": malformed prediction at line " +
                                     std::to_string(line_no));
        }
    }
    return preds;
}

GroundTruthMap read_labels_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw std::runtime_error("not a directory: " + path);
    GroundTruthMap gts;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
        std::ifstream in(file);
        std::vector<GroundTruthBox>& boxes = gts[file.stem().string()];
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            GroundTruthBox b;
            std::stringstream ss(line);
            if (!(ss >> b.class_id >> b.cx >> b.cy >> b.w >> b.h))
                throw std::runtime_error(file.string() + ": malformed label at line " +
                                         std::to_string(line_no));
            boxes.push_back(b);
        }
    }
    return gts;
}

void write_metrics_text(const MapScores& scores, std::ostream& out) {
    char buf[64];
    for (int i = 0; i < 10; ++i) {
        std::snprintf(buf, sizeof(buf), "AP@%.2f      = %.6f", (50 + 5 * i) / 100.0,
                      scores.ap_per_threshold[i]);
        out << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "mAP@0.5      = %.6f", scores.map50);
    out << buf << "\n";
    std::snprintf(buf, sizeof(buf), "mAP@0.5:0.95 = %.6f", scores.map50_95);
    out << buf << "\n";
}

void write_metrics_csv(const MapScores& scores, std::ostream& out) {
    out << "iou_thresh,ap\n";
    char buf[64];
    for (int i = 0; i < 10; ++i) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.6f", (50 + 5 * i) / 100.0,
                      scores.ap_per_threshold[i]);
        out << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "map50,%.6f", scores.map50);
    out << buf << "\n";
    std::snprintf(buf, sizeof(buf), "map50_95,%.6f", scores.map50_95);
    out << buf << "\n";
}

} // namespace gprtopo
