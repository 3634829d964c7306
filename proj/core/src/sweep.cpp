#include "pce/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include "pce/encoder.hpp"
#include "pce/log.hpp"
#include "pce/metrics.hpp"
#include "pce/reconstruct.hpp"

namespace pce {

namespace {

constexpr const char* kModule = "sweep";

std::string substitute_value(const std::string& pattern, int value) {
    const std::string placeholder = "{value}";
    std::string result = pattern;
    std::size_t pos = 0;
    while ((pos = result.find(placeholder, pos)) != std::string::npos) {
        result.replace(pos, placeholder.size(), std::to_string(value));
    }
    return result;
}

std::string format_cell(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

} // namespace

SweepTable sweep(const Video& video,
                 const std::vector<FrameAnnotations>& labels, SweepAxis axis,
                 const std::vector<int>& values,
                 const std::optional<std::string>& det_template,
                 const SweepOptions& options) {
    if (values.empty()) {
        throw ParameterError(kModule, "no axis values given");
    }
    SweepTable table;
    table.axis = axis;
    table.thresholds = options.eval.iou_thresholds;

    std::vector<FrameAnnotations> filtered = labels;
    filter_by_confidence(filtered, options.min_confidence);

    for (int value : values) {
        const int compression =
            axis == SweepAxis::Compression ? value : options.fixed_compression;
        const int bump = axis == SweepAxis::Bump ? value : options.fixed_bump;
        log_info(kModule, "encoding at compression " +
                              std::to_string(compression) + ", bump " +
                              std::to_string(bump));
        CodedSequence coded =
            encode_video(video, compression, bump, options.distribution,
                         options.base_seed);
        std::vector<ChunkLabel> truth = build_chunk_labels(
            filtered, compression, video.frame_count());

        SweepRow row;
        row.value = value;
        row.coded_frames = static_cast<long>(coded.frames.size());

        if (det_template) {
            const std::filesystem::path det_path =
                substitute_value(*det_template, value);
            if (!std::filesystem::exists(det_path)) {
                log_warn(kModule, "no detections file '" + det_path.string() +
                                      "'; row " + std::to_string(value) +
                                      " marked unavailable");
                row.available = false;
                row.has_ap = true;
                row.ap.assign(table.thresholds.size(), 0.0);
                table.rows.push_back(std::move(row));
                continue;
            }
            ChunkLabelFile detections =
                parse_chunk_labels(det_path, options.eval.classes);
            APReport report = evaluate(
                detections.chunks, truth, options.eval,
                detections.declared_chunks,
                static_cast<int>(coded.frames.size()));
            row.has_ap = true;
            row.ap.reserve(report.thresholds.size());
            for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
                double sum = 0.0;
                int n = 0;
                for (std::size_t c = 0; c < report.class_names.size(); ++c) {
                    if (!std::isnan(report.class_mean_ap[c])) {
                        sum += report.cells[c][t].ap;
                        ++n;
                    }
                }
                row.ap.push_back(n > 0 ? sum / n : 0.0);
            }
            row.mean_ap = report.mean_ap;
        } else {
            // Encoding statistics stand in when no detector output exists.
            const Video normalized = coded.normalized_video();
            row.entropy_bits = shannon_entropy(normalized.pixels());
            double error_sum = 0.0;
            std::size_t error_count = 0;
            for (const CodedFrame& frame : coded.frames) {
                const Video naive = naive_expansion(frame);
                for (int t = 0; t < compression; ++t) {
                    const int source_t = frame.chunk_index * compression + t;
                    for (int y = 0; y < video.height(); ++y) {
                        for (int x = 0; x < video.width(); ++x) {
                            const double d =
                                static_cast<double>(naive.at(y, x, t)) -
                                static_cast<double>(video.at(y, x, source_t));
                            error_sum += d * d;
                            ++error_count;
                        }
                    }
                }
            }
            row.naive_psnr =
                error_sum == 0.0
                    ? std::numeric_limits<double>::infinity()
                    : 10.0 * std::log10(255.0 * 255.0 * error_count /
                                        error_sum);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    const char* axis_name =
        axis == SweepAxis::Bump ? "bump_time" : "compression_rate";
    const bool ap_mode =
        !rows.empty() && rows.front().has_ap;
    out << "# ap_method: all-point-envelope\n";
    out << axis_name;
    if (ap_mode) {
        for (double threshold : thresholds) {
            char buffer[16];
            std::snprintf(buffer, sizeof(buffer), "%.2f", threshold);
            out << ",AP@" << buffer;
        }
        out << ",meanAP\n";
    } else {
        out << ",coded_frames,entropy_bits,naive_psnr\n";
    }
    for (const auto& row : rows) {
        out << row.value;
        if (ap_mode) {
            if (!row.available) {
                for (std::size_t i = 0; i <= thresholds.size(); ++i) {
                    out << ",unavailable";
                }
            } else {
                for (double ap : row.ap) {
                    out << "," << format_cell(ap);
                }
                out << "," << format_cell(row.mean_ap);
            }
        } else {
            out << "," << row.coded_frames << "," << format_cell(row.entropy_bits)
                << "," << format_cell(row.naive_psnr);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace pce
