#include "pce/encoder.hpp"

#include <cstdio>
#include <string>

#include "binary_io.hpp"
#include "pce/log.hpp"
#include "pce/video_io.hpp"

namespace pce {

namespace {

constexpr const char* kModule = "encoder";
constexpr const char* kCodedMagic = "PCEC1";
// 255 * 257 = 65535: largest bump length whose sums still fit in u16.
constexpr int kMaxBumpLen = 257;

void check_bump_fits(int bump_len) {
    if (bump_len > kMaxBumpLen) {
        throw ParameterError(kModule,
                             "bump_len " + std::to_string(bump_len) +
                                 " overflows u16 sums (max " +
                                 std::to_string(kMaxBumpLen) + ")");
    }
}

} // namespace

Frame CodedFrame::normalized() const {
    Frame out(height, width);
    for (std::size_t p = 0; p < sums.size(); ++p) {
        // round half away from zero; sums are non-negative
        out.pixels[p] = static_cast<uint8_t>(
            (2 * static_cast<unsigned>(sums[p]) + bump_len) / (2U * bump_len));
    }
    return out;
}

double CodedSequence::sample_compression_ratio() const {
    if (source_frame_count == 0) return 0.0;
    return static_cast<double>(frames.size()) / source_frame_count;
}

Video CodedSequence::normalized_video() const {
    std::vector<uint8_t> pixels;
    pixels.reserve(static_cast<std::size_t>(source_height) * source_width *
                   frames.size());
    for (const CodedFrame& f : frames) {
        Frame n = f.normalized();
        pixels.insert(pixels.end(), n.pixels.begin(), n.pixels.end());
    }
    return Video(source_height, source_width, static_cast<int>(frames.size()),
                 std::move(pixels));
}

CodedFrame encode_chunk(const Video& video, int first_frame,
                        const SensingMatrix& matrix) {
    if (video.height() != matrix.height() ||
        video.width() != matrix.width()) {
        throw ParameterError(
            kModule, "video is " + std::to_string(video.height()) + "x" +
                         std::to_string(video.width()) + ", matrix is " +
                         std::to_string(matrix.height()) + "x" +
                         std::to_string(matrix.width()));
    }
    if (first_frame < 0 ||
        first_frame + matrix.chunk_len() > video.frame_count()) {
        throw ParameterError(kModule,
                             "chunk [" + std::to_string(first_frame) + "," +
                                 std::to_string(first_frame +
                                                matrix.chunk_len()) +
                                 ") out of range for " +
                                 std::to_string(video.frame_count()) +
                                 " frames");
    }
    check_bump_fits(matrix.bump_len());

    std::vector<uint16_t> sums(video.frame_pixels(), 0);
    const auto& starts = matrix.start_times();
    for (std::size_t p = 0; p < sums.size(); ++p) {
        const int start = starts[p];
        unsigned sum = 0;
        for (int t = 0; t < matrix.bump_len(); ++t) {
            sum += video.pixels()[static_cast<std::size_t>(first_frame + start + t) *
                                      video.frame_pixels() +
                                  p];
        }
        sums[p] = static_cast<uint16_t>(sum);
    }
    return CodedFrame{.width = matrix.width(),
                      .height = matrix.height(),
                      .sums = std::move(sums),
                      .bump_len = matrix.bump_len(),
                      .chunk_index = 0,
                      .matrix = matrix};
}

CodedFrame encode_chunk(const Video& chunk, const SensingMatrix& matrix) {
    if (chunk.frame_count() != matrix.chunk_len()) {
        throw ParameterError(kModule,
                             "chunk has " + std::to_string(chunk.frame_count()) +
                                 " frames, matrix chunk_len is " +
                                 std::to_string(matrix.chunk_len()));
    }
    return encode_chunk(chunk, 0, matrix);
}

CodedSequence encode_video(const Video& video, int chunk_len, int bump_len,
                           MatrixDistribution distribution,
                           uint64_t base_seed) {
    if (chunk_len < 1 || bump_len < 1 || bump_len > chunk_len) {
        throw ParameterError(kModule,
                             "need chunk_len >= bump_len >= 1, got chunk_len " +
                                 std::to_string(chunk_len) + ", bump_len " +
                                 std::to_string(bump_len));
    }
    check_bump_fits(bump_len);
    if (video.frame_count() < chunk_len) {
        throw ParameterError(kModule,
                             "empty output: video has " +
                                 std::to_string(video.frame_count()) +
                                 " frames, shorter than one chunk of " +
                                 std::to_string(chunk_len));
    }

    CodedSequence seq;
    seq.source_height = video.height();
    seq.source_width = video.width();
    seq.source_frame_count = video.frame_count();
    seq.chunk_len = chunk_len;
    seq.bump_len = bump_len;
    seq.base_seed = base_seed;

    const int chunk_count = video.frame_count() / chunk_len;
    seq.dropped_frames = video.frame_count() - chunk_count * chunk_len;
    if (seq.dropped_frames > 0) {
        log_warn(kModule, "dropping trailing partial chunk of " +
                              std::to_string(seq.dropped_frames) + " frame(s)");
    }

    seq.frames.reserve(chunk_count);
    for (int k = 0; k < chunk_count; ++k) {
        SensingMatrix matrix =
            generate_matrix(video.height(), video.width(), chunk_len, bump_len,
                            distribution, base_seed + static_cast<uint64_t>(k));
        CodedFrame coded = encode_chunk(video, k * chunk_len, matrix);
        coded.chunk_index = k;
        seq.frames.push_back(std::move(coded));
    }
    return seq;
}

void save_coded_payload(const CodedPayload& payload,
                        const std::filesystem::path& path) {
    check_bump_fits(payload.bump_len);
    auto out = detail::open_output(path, kModule);
    out.write(kCodedMagic, 5);
    detail::write_u32_le(out, static_cast<uint32_t>(payload.height));
    detail::write_u32_le(out, static_cast<uint32_t>(payload.width));
    detail::write_u32_le(out, static_cast<uint32_t>(payload.frames.size()));
    detail::write_u32_le(out, static_cast<uint32_t>(payload.bump_len));
    const std::size_t frame_pixels =
        static_cast<std::size_t>(payload.height) * payload.width;
    for (const auto& frame : payload.frames) {
        if (frame.size() != frame_pixels) {
            throw ParameterError(kModule, "coded frame payload size mismatch");
        }
        for (uint16_t s : frame) {
            detail::write_u16_le(out, s);
        }
    }
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

CodedPayload load_coded_payload(const std::filesystem::path& path) {
    auto in = detail::open_input(path, kModule);
    // A PCEV1 or PGM input here means the caller kept only the 8-bit export.
    char head[5] = {0};
    in.read(head, 5);
    if (in.gcount() == 5 && std::string(head, 5) == "PCEV1") {
        throw ValidationError(
            kModule, "'" + path.string() +
                         "' is a normalized 8-bit container; reconstruction "
                         "needs raw sums (re-export with raw mode)");
    }
    if (in.gcount() >= 2 && head[0] == 'P' && head[1] == '5') {
        throw ValidationError(
            kModule, "'" + path.string() +
                         "' is a normalized PGM image; reconstruction needs "
                         "raw sums (re-export with raw mode)");
    }
    if (in.gcount() != 5 || std::string(head, 5) != kCodedMagic) {
        throw FormatError(kModule, "bad magic (expected 'PCEC1') at byte offset 0 in '" +
                                       path.string() + "'");
    }
    CodedPayload payload;
    const uint32_t height = detail::read_u32_le(in, 5, kModule, "height");
    const uint32_t width = detail::read_u32_le(in, 9, kModule, "width");
    const uint32_t frames = detail::read_u32_le(in, 13, kModule, "frame count");
    const uint32_t bump_len = detail::read_u32_le(in, 17, kModule, "bump_len");
    if (height == 0 || width == 0 || frames == 0 || bump_len == 0) {
        throw FormatError(kModule, "zero field in header of '" +
                                       path.string() + "'");
    }
    payload.height = static_cast<int>(height);
    payload.width = static_cast<int>(width);
    payload.bump_len = static_cast<int>(bump_len);
    const std::size_t frame_pixels = static_cast<std::size_t>(height) * width;
    const unsigned max_sum = 255U * bump_len;
    std::size_t offset = 21;
    payload.frames.resize(frames);
    for (auto& frame : payload.frames) {
        frame.resize(frame_pixels);
        for (auto& s : frame) {
            s = detail::read_u16_le(in, offset, kModule, "sum");
            offset += 2;
            if (s > max_sum) {
                throw ValidationError(
                    kModule, "sum " + std::to_string(s) + " exceeds 255*bump_len = " +
                                 std::to_string(max_sum) + " in '" +
                                 path.string() + "'");
            }
        }
    }
    return payload;
}

void save_coded_frame(const CodedFrame& frame,
                      const std::filesystem::path& coded_path) {
    CodedPayload payload;
    payload.height = frame.height;
    payload.width = frame.width;
    payload.bump_len = frame.bump_len;
    payload.frames.push_back(frame.sums);
    save_coded_payload(payload, coded_path);
}

CodedFrame load_coded_frame(const std::filesystem::path& coded_path,
                            const std::filesystem::path& matrix_path) {
    CodedPayload payload = load_coded_payload(coded_path);
    if (payload.frames.size() != 1) {
        throw ParameterError(kModule,
                             "'" + coded_path.string() + "' holds " +
                                 std::to_string(payload.frames.size()) +
                                 " coded frames; one matrix pairs with one");
    }
    SensingMatrix matrix = load_matrix(matrix_path);
    if (matrix.height() != payload.height ||
        matrix.width() != payload.width) {
        throw DimensionError(
            kModule, "coded frame '" + coded_path.string() + "' is " +
                         std::to_string(payload.height) + "x" +
                         std::to_string(payload.width) + ", matrix '" +
                         matrix_path.string() + "' is " +
                         std::to_string(matrix.height()) + "x" +
                         std::to_string(matrix.width()));
    }
    if (matrix.bump_len() != payload.bump_len) {
        throw ValidationError(kModule,
                              "bump_len disagrees: coded file says " +
                                  std::to_string(payload.bump_len) +
                                  ", matrix says " +
                                  std::to_string(matrix.bump_len()));
    }
    return CodedFrame{.width = payload.width,
                      .height = payload.height,
                      .sums = std::move(payload.frames.front()),
                      .bump_len = payload.bump_len,
                      .chunk_index = 0,
                      .matrix = std::move(matrix)};
}

void export_coded(const CodedSequence& sequence,
                  const std::filesystem::path& directory, ExportMode mode) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory)) {
        throw IoError(kModule,
                      "cannot create directory '" + directory.string() + "'");
    }
    char name[32];
    for (const CodedFrame& frame : sequence.frames) {
        if (mode == ExportMode::RawSums16Bit) {
            std::snprintf(name, sizeof(name), "coded_%04d.pcec",
                          frame.chunk_index);
            save_coded_frame(frame, directory / name);
            std::snprintf(name, sizeof(name), "matrix_%04d.pcesm",
                          frame.chunk_index);
            save_matrix(frame.matrix, directory / name);
        } else {
            std::snprintf(name, sizeof(name), "coded_%04d.pgm",
                          frame.chunk_index);
            save_pgm(frame.normalized(), directory / name);
        }
    }
}

} // namespace pce
