#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pce/evaluation.hpp"
#include "pce/sensing.hpp"
#include "pce/video.hpp"

namespace pce {

enum class SweepAxis { Bump, Compression };

struct SweepOptions {
    // Fixed counterparts of the swept axis: a bump sweep encodes at
    // compression 13, a compression sweep uses bump time 3.
    int fixed_compression = 13;
    int fixed_bump = 3;
    uint64_t base_seed = 1;
    MatrixDistribution distribution = MatrixDistribution::uniform();
    double min_confidence = 0.99;
    EvalConfig eval;
};

struct SweepRow {
    int value = 0;
    bool available = true; // false: detections file missing for this value
    bool has_ap = false;   // AP columns vs encoding-stat columns
    std::vector<double> ap; // one per threshold
    double mean_ap = 0.0;
    // Encoding stats (no detections provider)
    long coded_frames = 0;
    double entropy_bits = 0.0;  // of the normalized coded frames
    double naive_psnr = 0.0;    // coded frame repeated chunk_len times
};

struct SweepTable {
    SweepAxis axis = SweepAxis::Bump;
    std::vector<double> thresholds;
    std::vector<SweepRow> rows;

    // One row per value; AP rows mirror the 10-threshold + mean-AP layout.
    std::string to_csv() const;
};

// Re-encodes the video at every axis value, merges the per-frame labels
// into chunk-level ground truth at the matching compression, and either
// scores the detections found via det_template (the "{value}" placeholder
// is substituted) or reports encoding statistics when no template is given.
SweepTable sweep(const Video& video,
                 const std::vector<FrameAnnotations>& labels, SweepAxis axis,
                 const std::vector<int>& values,
                 const std::optional<std::string>& det_template,
                 const SweepOptions& options);

} // namespace pce
