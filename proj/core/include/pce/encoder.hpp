#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pce/sensing.hpp"
#include "pce/video.hpp"

namespace pce {

// One coded frame: per-pixel exact integer sums of the exposed frames,
// I(m,n) = sum_t S(m,n,t) * V(m,n,t). Sums stay within 255 * bump_len, so
// u16 storage is lossless for bump_len <= 257. The normalized export divides
// by bump_len (every pixel integrates exactly bump_len frames), which keeps
// values within [0, 255].
struct CodedFrame {
    int width = 0;
    int height = 0;
    std::vector<uint16_t> sums;
    int bump_len = 0;
    int chunk_index = 0;
    SensingMatrix matrix;

    // round(sums / bump_len), half away from zero.
    Frame normalized() const;
};

struct CodedSequence {
    std::vector<CodedFrame> frames;
    int source_height = 0;
    int source_width = 0;
    int source_frame_count = 0;
    int chunk_len = 0; // = compression rate C
    int bump_len = 0;
    uint64_t base_seed = 0;
    int dropped_frames = 0; // trailing partial chunk, if any

    // Coded samples out / source samples in = floor(T/C) / T, ~ 1/C.
    double sample_compression_ratio() const;

    // All normalized coded frames stacked as a cube (frame k = chunk k).
    Video normalized_video() const;
};

CodedFrame encode_chunk(const Video& chunk, const SensingMatrix& matrix);
// Same, reading chunk_len frames of `video` starting at `first_frame`.
CodedFrame encode_chunk(const Video& video, int first_frame,
                        const SensingMatrix& matrix);

// Splits the video into floor(T/chunk_len) chunks, regenerating the sensing
// matrix for chunk k from seed base_seed + k. A trailing partial chunk is
// dropped (logged as a warning, counted in dropped_frames).
CodedSequence encode_video(const Video& video, int chunk_len, int bump_len,
                           MatrixDistribution distribution,
                           uint64_t base_seed);

enum class ExportMode { Normalized8Bit, RawSums16Bit };

// Raw "PCEC1" container: ASCII magic `PCEC1`, u32-LE height, width,
// frame count, bump_len, then u16-LE sums frame-major row-major.
struct CodedPayload {
    int height = 0;
    int width = 0;
    int bump_len = 0;
    std::vector<std::vector<uint16_t>> frames;
};

void save_coded_payload(const CodedPayload& payload,
                        const std::filesystem::path& path);
CodedPayload load_coded_payload(const std::filesystem::path& path);

// Single coded frame + its matrix from paired files; validates that dims,
// chunk parameters and bump length agree.
void save_coded_frame(const CodedFrame& frame,
                      const std::filesystem::path& coded_path);
CodedFrame load_coded_frame(const std::filesystem::path& coded_path,
                            const std::filesystem::path& matrix_path);

// Writes per-chunk files into a directory: raw mode emits coded_NNNN.pcec
// plus matrix_NNNN.pcesm, normalized mode emits coded_NNNN.pgm.
void export_coded(const CodedSequence& sequence,
                  const std::filesystem::path& directory, ExportMode mode);

} // namespace pce
