#pragma once

// Independent reference implementations the fast paths are checked against.
// These deliberately take the most literal route available: materialized
// cubes, full rescans, no shared helpers with the library.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pce/annotations.hpp"
#include "pce/evaluation.hpp"
#include "pce/sensing.hpp"
#include "pce/video.hpp"

namespace pce_test {

// Coded image by direct evaluation of I(m,n) = sum_t S(m,n,t) * V(m,n,t)
// over the fully materialized binary cube.
inline std::vector<uint32_t> brute_force_coded_sums(
    const pce::Video& chunk, const pce::SensingMatrix& matrix) {
    const int M = chunk.height();
    const int N = chunk.width();
    const int T = chunk.frame_count();
    // Materialize S from the single-on definition.
    std::vector<uint8_t> cube(static_cast<std::size_t>(M) * N * T, 0);
    for (int y = 0; y < M; ++y) {
        for (int x = 0; x < N; ++x) {
            const int start = matrix.start_at(y, x);
            for (int t = 0; t < T; ++t) {
                const bool on = t >= start && t < start + matrix.bump_len();
                cube[(static_cast<std::size_t>(t) * M + y) * N + x] = on ? 1 : 0;
            }
        }
    }
    std::vector<uint32_t> sums(static_cast<std::size_t>(M) * N, 0);
    for (int t = 0; t < T; ++t) {
        for (int y = 0; y < M; ++y) {
            for (int x = 0; x < N; ++x) {
                sums[static_cast<std::size_t>(y) * N + x] +=
                    cube[(static_cast<std::size_t>(t) * M + y) * N + x] *
                    static_cast<uint32_t>(chunk.at(y, x, t));
            }
        }
    }
    return sums;
}

// Envelope AP recomputed from scratch: matching re-run per prefix, envelope
// by direct max scans.
inline double brute_force_average_precision(
    std::vector<pce::BoundingBox> detections,
    const std::vector<pce::BoundingBox>& truths, double threshold) {
    if (truths.empty()) return 0.0;
    if (detections.empty()) return 0.0;

    // Selection sort by confidence descending, earlier index wins ties.
    for (std::size_t i = 0; i < detections.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < detections.size(); ++j) {
            if (*detections[j].confidence > *detections[best].confidence) {
                best = j;
            }
        }
        if (best != i) {
            auto moved = detections[best];
            detections.erase(detections.begin() +
                             static_cast<std::ptrdiff_t>(best));
            detections.insert(detections.begin() +
                                  static_cast<std::ptrdiff_t>(i),
                              moved);
        }
    }

    const std::size_t n = detections.size();
    std::vector<double> precision(n), recall(n);
    for (std::size_t prefix = 1; prefix <= n; ++prefix) {
        // Re-run greedy matching on the first `prefix` detections.
        std::vector<bool> taken(truths.size(), false);
        std::size_t tp = 0;
        for (std::size_t d = 0; d < prefix; ++d) {
            double best_iou = 0.0;
            std::ptrdiff_t best = -1;
            for (std::size_t t = 0; t < truths.size(); ++t) {
                if (taken[t]) continue;
                const double o = pce::iou(detections[d], truths[t]);
                if (o >= threshold && o > best_iou) {
                    best_iou = o;
                    best = static_cast<std::ptrdiff_t>(t);
                }
            }
            if (best >= 0) {
                taken[static_cast<std::size_t>(best)] = true;
                ++tp;
            }
        }
        precision[prefix - 1] =
            static_cast<double>(tp) / static_cast<double>(prefix);
        recall[prefix - 1] =
            static_cast<double>(tp) / static_cast<double>(truths.size());
    }

    double ap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double prev_recall = i == 0 ? 0.0 : recall[i - 1];
        if (recall[i] <= prev_recall) continue;
        double envelope = 0.0;
        for (std::size_t j = i; j < n; ++j) {
            envelope = std::max(envelope, precision[j]);
        }
        ap += (recall[i] - prev_recall) * envelope;
    }
    return ap;
}

// Componentwise min/max envelope over every generated box.
inline pce::BoundingBox brute_force_merge(
    const std::vector<pce::BoundingBox>& boxes) {
    pce::BoundingBox merged = boxes.front();
    merged.confidence.reset();
    for (const auto& box : boxes) {
        merged.x_min = std::min(merged.x_min, box.x_min);
        merged.y_min = std::min(merged.y_min, box.y_min);
        merged.x_max = std::max(merged.x_max, box.x_max);
        merged.y_max = std::max(merged.y_max, box.y_max);
    }
    return merged;
}

// Chi-square statistic of observed counts against a uniform expectation.
inline double chi_square_statistic(const std::vector<std::size_t>& counts,
                                   std::size_t total) {
    const double expected =
        static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::size_t count : counts) {
        const double d = static_cast<double>(count) - expected;
        stat += d * d / expected;
    }
    return stat;
}

} // namespace pce_test
