#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pce/annotations.hpp"

namespace pce {

// IoU thresholds 0.50, 0.55, ..., 0.95 built from integer percents so a
// geometric ratio like 60/100 compares exactly equal to the 0.60 threshold.
std::vector<double> default_iou_thresholds();

struct EvalConfig {
    std::vector<double> iou_thresholds = default_iou_thresholds();
    ClassRegistry classes = ClassRegistry::default_classes();
};

double iou(const BoundingBox& a, const BoundingBox& b);

// Average precision for one class at one IoU threshold. Detections are
// sorted by confidence descending (stable, input order breaks ties) and
// greedily matched to the unmatched truth with the highest IoU >= threshold.
// AP is the area under the precision envelope (all-point interpolation).
// Returns nullopt when both inputs are empty (class not applicable).
std::optional<double> average_precision(std::span<const BoundingBox> detections,
                                        std::span<const BoundingBox> truths,
                                        double threshold);

struct ApCell {
    bool applicable = false;
    double ap = 0.0;
    long true_positives = 0;
    long false_positives = 0;
    long false_negatives = 0;
};

struct APReport {
    std::vector<double> thresholds;
    std::vector<std::string> class_names;
    // cells[class][threshold]
    std::vector<std::vector<ApCell>> cells;
    // mean over thresholds per class; NaN for non-applicable classes
    std::vector<double> class_mean_ap;
    double mean_ap = 0.0; // mean of class means over applicable classes

    std::string to_csv() const;
    std::string to_json() const;
};

// Pools detections and ground truth over all chunks per (class, threshold):
// matching stays within each chunk, the precision-recall curve is built from
// the pooled confidence ranking. Misaligned inputs (a detection chunk index
// with no ground-truth universe entry) raise AlignmentError naming the
// missing chunks. Classes with no ground truth anywhere are excluded from
// the mean rather than scored 0.
APReport evaluate(const std::vector<ChunkLabel>& detections,
                  const std::vector<ChunkLabel>& ground_truth,
                  const EvalConfig& config, int detection_chunk_count = -1,
                  int truth_chunk_count = -1);

} // namespace pce
