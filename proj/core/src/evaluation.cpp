#include "pce/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace pce {

namespace {

constexpr const char* kModule = "evaluation";

std::string format_number(double value) {
    if (std::isnan(value)) return "na";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

std::string format_threshold(double value) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

// Greedy matcher shared by average_precision and evaluate: detections must
// already be in scoring order; returns one hit flag per detection.
std::vector<bool> greedy_match(std::span<const BoundingBox* const> detections,
                               std::span<const BoundingBox> truths,
                               double threshold) {
    std::vector<bool> truth_taken(truths.size(), false);
    std::vector<bool> hits(detections.size(), false);
    for (std::size_t d = 0; d < detections.size(); ++d) {
        double best_iou = 0.0;
        std::ptrdiff_t best_truth = -1;
        for (std::size_t t = 0; t < truths.size(); ++t) {
            if (truth_taken[t]) continue;
            const double overlap = iou(*detections[d], truths[t]);
            if (overlap >= threshold && overlap > best_iou) {
                best_iou = overlap;
                best_truth = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (best_truth >= 0) {
            truth_taken[static_cast<std::size_t>(best_truth)] = true;
            hits[d] = true;
        }
    }
    return hits;
}

// Area under the precision envelope (all-point interpolation) from
// cumulative hit flags.
double envelope_ap(const std::vector<bool>& hits, std::size_t total_truths) {
    if (total_truths == 0 || hits.empty()) return 0.0;
    const std::size_t n = hits.size();
    std::vector<double> precision(n), recall(n);
    std::size_t tp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (hits[i]) ++tp;
        precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
        recall[i] = static_cast<double>(tp) / static_cast<double>(total_truths);
    }
    double ap = 0.0;
    double max_precision = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        max_precision = std::max(max_precision, precision[i]);
        const double prev_recall = i == 0 ? 0.0 : recall[i - 1];
        ap += (recall[i] - prev_recall) * max_precision;
    }
    return ap;
}

} // namespace

std::vector<double> default_iou_thresholds() {
    std::vector<double> thresholds;
    for (int percent = 50; percent <= 95; percent += 5) {
        thresholds.push_back(percent / 100.0);
    }
    return thresholds;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double intersection = ix * iy;
    return intersection / (a.area() + b.area() - intersection);
}

std::optional<double> average_precision(std::span<const BoundingBox> detections,
                                        std::span<const BoundingBox> truths,
                                        double threshold) {
    if (detections.empty() && truths.empty()) return std::nullopt;
    if (detections.empty()) return 0.0;

    std::vector<const BoundingBox*> ordered;
    ordered.reserve(detections.size());
    for (const auto& det : detections) {
        if (!det.confidence) {
            throw ParameterError(kModule,
                                 "detection without confidence in AP input");
        }
        ordered.push_back(&det);
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const BoundingBox* a, const BoundingBox* b) {
                         return *a->confidence > *b->confidence;
                     });
    const auto hits = greedy_match(ordered, truths, threshold);
    return envelope_ap(hits, truths.size());
}

APReport evaluate(const std::vector<ChunkLabel>& detections,
                  const std::vector<ChunkLabel>& ground_truth,
                  const EvalConfig& config, int detection_chunk_count,
                  int truth_chunk_count) {
    if (config.iou_thresholds.empty()) {
        throw ParameterError(kModule, "no IoU thresholds configured");
    }
    for (std::size_t i = 0; i < config.iou_thresholds.size(); ++i) {
        const double t = config.iou_thresholds[i];
        if (t <= 0.0 || t > 1.0 ||
            (i > 0 && t <= config.iou_thresholds[i - 1])) {
            throw ParameterError(kModule,
                                 "thresholds must be strictly increasing "
                                 "within (0,1]");
        }
    }

    // Establish the chunk universe from the ground truth.
    int universe = truth_chunk_count;
    for (const auto& chunk : ground_truth) {
        universe = std::max(universe, chunk.chunk_index + 1);
    }
    if (detection_chunk_count >= 0 && universe >= 0 &&
        detection_chunk_count != universe) {
        std::string missing;
        const int lo = std::min(detection_chunk_count, universe);
        const int hi = std::max(detection_chunk_count, universe);
        for (int k = lo; k < hi; ++k) {
            missing += (missing.empty() ? "" : ", ") + std::to_string(k);
        }
        throw AlignmentError(kModule,
                             "detections declare " +
                                 std::to_string(detection_chunk_count) +
                                 " chunks, ground truth " +
                                 std::to_string(universe) +
                                 "; unmatched chunks: " + missing);
    }
    std::string out_of_range;
    for (const auto& chunk : detections) {
        if (chunk.chunk_index >= universe) {
            out_of_range += (out_of_range.empty() ? "" : ", ") +
                            std::to_string(chunk.chunk_index);
        }
    }
    if (!out_of_range.empty()) {
        throw AlignmentError(kModule,
                             "detection chunks missing from ground truth: " +
                                 out_of_range);
    }

    const int class_count = config.classes.size();
    APReport report;
    report.thresholds = config.iou_thresholds;
    report.class_names = config.classes.names();
    report.cells.assign(static_cast<std::size_t>(class_count),
                        std::vector<ApCell>(report.thresholds.size()));
    report.class_mean_ap.assign(static_cast<std::size_t>(class_count),
                                std::numeric_limits<double>::quiet_NaN());

    struct PooledDetection {
        const BoundingBox* box;
        int chunk;
    };

    double map_sum = 0.0;
    int map_classes = 0;
    for (int c = 0; c < class_count; ++c) {
        // Per-chunk truths and pooled detections for this class.
        std::map<int, std::vector<BoundingBox>> truths_by_chunk;
        std::size_t total_truths = 0;
        for (const auto& chunk : ground_truth) {
            for (const auto& box : chunk.boxes) {
                if (box.class_id != c) continue;
                truths_by_chunk[chunk.chunk_index].push_back(box);
                ++total_truths;
            }
        }
        std::vector<PooledDetection> pooled;
        for (const auto& chunk : detections) {
            for (const auto& box : chunk.boxes) {
                if (box.class_id != c) continue;
                if (!box.confidence) {
                    throw ParameterError(
                        kModule, "detection without confidence (class '" +
                                     config.classes.name_of(c) + "', chunk " +
                                     std::to_string(chunk.chunk_index) + ")");
                }
                pooled.push_back({&box, chunk.chunk_index});
            }
        }
        std::stable_sort(pooled.begin(), pooled.end(),
                         [](const PooledDetection& a, const PooledDetection& b) {
                             return *a.box->confidence > *b.box->confidence;
                         });

        const bool applicable = total_truths > 0 || !pooled.empty();
        for (std::size_t ti = 0; ti < report.thresholds.size(); ++ti) {
            ApCell& cell = report.cells[static_cast<std::size_t>(c)][ti];
            cell.applicable = applicable;
            if (!applicable) continue;
            const double threshold = report.thresholds[ti];

            // Greedy match in pooled confidence order, within each chunk.
            std::map<int, std::vector<bool>> taken;
            for (auto& [chunk_index, truths] : truths_by_chunk) {
                taken[chunk_index].assign(truths.size(), false);
            }
            std::vector<bool> hits(pooled.size(), false);
            for (std::size_t d = 0; d < pooled.size(); ++d) {
                const auto it = truths_by_chunk.find(pooled[d].chunk);
                if (it == truths_by_chunk.end()) continue;
                const auto& truths = it->second;
                auto& flags = taken[pooled[d].chunk];
                double best_iou = 0.0;
                std::ptrdiff_t best = -1;
                for (std::size_t t = 0; t < truths.size(); ++t) {
                    if (flags[t]) continue;
                    const double overlap = iou(*pooled[d].box, truths[t]);
                    if (overlap >= threshold && overlap > best_iou) {
                        best_iou = overlap;
                        best = static_cast<std::ptrdiff_t>(t);
                    }
                }
                if (best >= 0) {
                    flags[static_cast<std::size_t>(best)] = true;
                    hits[d] = true;
                }
            }
            cell.ap = envelope_ap(hits, total_truths);
            cell.true_positives =
                std::count(hits.begin(), hits.end(), true);
            cell.false_positives =
                static_cast<long>(pooled.size()) - cell.true_positives;
            cell.false_negatives =
                static_cast<long>(total_truths) - cell.true_positives;
        }

        // Classes with zero ground truth stay out of the mean.
        if (total_truths > 0) {
            double sum = 0.0;
            for (const auto& cell : report.cells[static_cast<std::size_t>(c)]) {
                sum += cell.ap;
            }
            const double class_mean =
                sum / static_cast<double>(report.thresholds.size());
            report.class_mean_ap[static_cast<std::size_t>(c)] = class_mean;
            map_sum += class_mean;
            ++map_classes;
        }
    }
    report.mean_ap = map_classes > 0 ? map_sum / map_classes : 0.0;
    return report;
}

std::string APReport::to_csv() const {
    std::ostringstream out;
    out << "# ap_method: all-point-envelope\n";
    out << "class";
    for (double threshold : thresholds) {
        out << ",AP@" << format_threshold(threshold);
    }
    out << ",meanAP\n";
    for (std::size_t c = 0; c < class_names.size(); ++c) {
        out << class_names[c];
        for (const auto& cell : cells[c]) {
            out << "," << (cell.applicable ? format_number(cell.ap) : "na");
        }
        out << "," << format_number(class_mean_ap[c]) << "\n";
    }
    out << "all";
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        double sum = 0.0;
        int n = 0;
        for (std::size_t c = 0; c < class_names.size(); ++c) {
            if (!std::isnan(class_mean_ap[c])) {
                sum += cells[c][t].ap;
                ++n;
            }
        }
        out << "," << (n > 0 ? format_number(sum / n) : "na");
    }
    out << "," << format_number(mean_ap) << "\n";
    return out.str();
}

std::string APReport::to_json() const {
    std::ostringstream out;
    out << "{\n  \"ap_method\": \"all-point-envelope\",\n";
    out << "  \"thresholds\": [";
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        out << (t ? ", " : "") << format_number(thresholds[t]);
    }
    out << "],\n  \"classes\": [\n";
    for (std::size_t c = 0; c < class_names.size(); ++c) {
        out << "    {\"name\": \"" << class_names[c] << "\", \"ap\": [";
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            const ApCell& cell = cells[c][t];
            out << (t ? ", " : "")
                << (cell.applicable ? format_number(cell.ap) : "null");
        }
        out << "], \"counts\": [";
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            const ApCell& cell = cells[c][t];
            out << (t ? ", " : "") << "[" << cell.true_positives << ", "
                << cell.false_positives << ", " << cell.false_negatives << "]";
        }
        out << "], \"mean_ap\": "
            << (std::isnan(class_mean_ap[c]) ? "null"
                                             : format_number(class_mean_ap[c]))
            << "}" << (c + 1 < class_names.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"map\": " << format_number(mean_ap) << "\n}\n";
    return out.str();
}

} // namespace pce
