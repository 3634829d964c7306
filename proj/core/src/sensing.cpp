#include "pce/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "binary_io.hpp"
#include "pce/rng.hpp"

namespace pce {

namespace {

constexpr const char* kModule = "sensing";
constexpr const char* kMatrixMagic = "PCESM1";

void check_params(int height, int width, int chunk_len, int bump_len) {
    if (height < 1 || width < 1) {
        throw ParameterError(kModule, "dimensions must be >= 1, got " +
                                          std::to_string(height) + "x" +
                                          std::to_string(width));
    }
    if (bump_len < 1) {
        throw ParameterError(kModule, "bump_len must be >= 1, got " +
                                          std::to_string(bump_len));
    }
    if (bump_len > chunk_len) {
        throw ParameterError(kModule,
                             "bump_len " + std::to_string(bump_len) +
                                 " exceeds chunk_len " +
                                 std::to_string(chunk_len));
    }
    // Start times are stored as u16; the legal range must fit.
    if (chunk_len > std::numeric_limits<uint16_t>::max()) {
        throw ParameterError(kModule, "chunk_len " + std::to_string(chunk_len) +
                                          " exceeds u16 start-time storage");
    }
}

} // namespace

SensingMatrix::SensingMatrix(int height, int width, int chunk_len,
                             int bump_len, Distribution distribution,
                             uint64_t seed, std::vector<uint16_t> start_times)
    : height_(height), width_(width), chunk_len_(chunk_len),
      bump_len_(bump_len), distribution_(distribution), seed_(seed),
      start_times_(std::move(start_times)) {
    check_params(height, width, chunk_len, bump_len);
    const std::size_t expected =
        static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    if (start_times_.size() != expected) {
        throw ValidationError(kModule, "start-time array holds " +
                                           std::to_string(start_times_.size()) +
                                           " entries, dimensions require " +
                                           std::to_string(expected));
    }
    const uint16_t max_start = static_cast<uint16_t>(chunk_len - bump_len);
    for (std::size_t p = 0; p < start_times_.size(); ++p) {
        if (start_times_[p] > max_start) {
            throw ValidationError(
                kModule, "start time " + std::to_string(start_times_[p]) +
                             " at pixel " + std::to_string(p) +
                             " exceeds chunk_len - bump_len = " +
                             std::to_string(max_start));
        }
    }
}

Frame SensingMatrix::mask_at(int frame_index) const {
    if (frame_index < 0 || frame_index >= chunk_len_) {
        throw ParameterError(kModule, "frame index " +
                                          std::to_string(frame_index) +
                                          " out of range [0," +
                                          std::to_string(chunk_len_) + ")");
    }
    Frame mask(height_, width_);
    for (std::size_t p = 0; p < start_times_.size(); ++p) {
        const int start = start_times_[p];
        mask.pixels[p] =
            (start <= frame_index && frame_index < start + bump_len_) ? 1 : 0;
    }
    return mask;
}

SensingMatrix generate_matrix(int height, int width, int chunk_len,
                              int bump_len, MatrixDistribution distribution,
                              uint64_t seed) {
    check_params(height, width, chunk_len, bump_len);
    const int max_start = chunk_len - bump_len;
    if (distribution.kind == Distribution::TruncatedGaussian && max_start == 0) {
        throw ParameterError(kModule,
                             "truncated-gaussian needs chunk_len > bump_len "
                             "(stddev would be 0)");
    }

    const std::size_t count =
        static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    std::vector<uint16_t> starts(count);
    Rng rng(seed);
    if (distribution.kind == Distribution::Uniform) {
        for (auto& s : starts) {
            s = static_cast<uint16_t>(
                rng.below(static_cast<uint64_t>(max_start) + 1));
        }
    } else {
        const double mean = distribution.mean(chunk_len, bump_len);
        const double stddev = distribution.stddev(chunk_len, bump_len);
        for (auto& s : starts) {
            const double sample = rng.gaussian(mean, stddev);
            const long rounded = std::lround(sample);
            s = static_cast<uint16_t>(
                std::clamp(rounded, 0L, static_cast<long>(max_start)));
        }
    }
    return SensingMatrix(height, width, chunk_len, bump_len, distribution.kind,
                         seed, std::move(starts));
}

void save_matrix(const SensingMatrix& matrix,
                 const std::filesystem::path& path) {
    auto out = detail::open_output(path, kModule);
    out.write(kMatrixMagic, 6);
    detail::write_u32_le(out, static_cast<uint32_t>(matrix.height()));
    detail::write_u32_le(out, static_cast<uint32_t>(matrix.width()));
    detail::write_u32_le(out, static_cast<uint32_t>(matrix.chunk_len()));
    detail::write_u32_le(out, static_cast<uint32_t>(matrix.bump_len()));
    detail::write_u64_le(out, matrix.seed());
    out.put(static_cast<char>(matrix.distribution()));
    for (uint16_t s : matrix.start_times()) {
        detail::write_u16_le(out, s);
    }
    if (!out) {
        throw IoError(kModule, "write failed for '" + path.string() + "'");
    }
}

SensingMatrix load_matrix(const std::filesystem::path& path) {
    auto in = detail::open_input(path, kModule);
    detail::expect_magic(in, kMatrixMagic, kModule);
    const uint32_t height = detail::read_u32_le(in, 6, kModule, "height");
    const uint32_t width = detail::read_u32_le(in, 10, kModule, "width");
    const uint32_t chunk_len = detail::read_u32_le(in, 14, kModule, "chunk_len");
    const uint32_t bump_len = detail::read_u32_le(in, 18, kModule, "bump_len");
    const uint64_t seed = detail::read_u64_le(in, 22, kModule, "seed");
    const int tag = in.get();
    if (tag == std::ifstream::traits_type::eof()) {
        throw FormatError(kModule, "truncated header: distribution tag at byte offset 30");
    }
    if (tag != 0 && tag != 1) {
        throw FormatError(kModule, "unknown distribution tag " +
                                       std::to_string(tag) +
                                       " at byte offset 30");
    }
    if (height == 0 || width == 0 || chunk_len == 0 || bump_len == 0 ||
        bump_len > chunk_len) {
        throw ValidationError(kModule, "invalid geometry in header of '" +
                                           path.string() + "'");
    }
    const std::size_t count = static_cast<std::size_t>(height) * width;
    std::vector<uint16_t> starts(count);
    std::size_t offset = 31;
    for (std::size_t p = 0; p < count; ++p) {
        starts[p] = detail::read_u16_le(in, offset, kModule, "start time");
        offset += 2;
    }
    // The constructor re-validates start ranges and names the pixel index.
    return SensingMatrix(static_cast<int>(height), static_cast<int>(width),
                         static_cast<int>(chunk_len),
                         static_cast<int>(bump_len),
                         static_cast<Distribution>(tag), seed,
                         std::move(starts));
}

} // namespace pce
