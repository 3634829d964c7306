#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pce/video.hpp"

namespace pce {

enum class Distribution : uint8_t { Uniform = 0, TruncatedGaussian = 1 };

// How per-pixel exposure start frames are drawn over [0, chunk_len - bump_len].
// TruncatedGaussian uses mean (chunk_len-bump_len)/2 and stddev
// (chunk_len-bump_len)/4, each real sample rounded to the nearest integer and
// clamped into the legal range; it requires chunk_len > bump_len so the
// stddev is positive. Uniform is the default.
struct MatrixDistribution {
    Distribution kind = Distribution::Uniform;

    static MatrixDistribution uniform() { return {Distribution::Uniform}; }
    static MatrixDistribution truncated_gaussian() {
        return {Distribution::TruncatedGaussian};
    }

    double mean(int chunk_len, int bump_len) const {
        return (chunk_len - bump_len) / 2.0;
    }
    double stddev(int chunk_len, int bump_len) const {
        return (chunk_len - bump_len) / 4.0;
    }
};

// Per-chunk exposure code: each pixel has one contiguous bump of bump_len
// frames starting at start_times[p] within [0, chunk_len - bump_len].
// The implied binary cube S(m,n,t) = 1 iff start <= t < start + bump_len,
// so storing start times instead of the cube loses nothing.
// Immutable after generation; safe to share across threads.
class SensingMatrix {
public:
    SensingMatrix(int height, int width, int chunk_len, int bump_len,
                  Distribution distribution, uint64_t seed,
                  std::vector<uint16_t> start_times);

    int height() const { return height_; }
    int width() const { return width_; }
    int chunk_len() const { return chunk_len_; }
    int bump_len() const { return bump_len_; }
    Distribution distribution() const { return distribution_; }
    uint64_t seed() const { return seed_; }

    uint16_t start_at(int y, int x) const {
        return start_times_[static_cast<std::size_t>(y) * width_ + x];
    }
    const std::vector<uint16_t>& start_times() const { return start_times_; }

    // Binary slice S(.,.,frame_index) as a 0/1 frame.
    Frame mask_at(int frame_index) const;

    bool operator==(const SensingMatrix&) const = default;

private:
    int height_;
    int width_;
    int chunk_len_;
    int bump_len_;
    Distribution distribution_;
    uint64_t seed_;
    std::vector<uint16_t> start_times_;
};

SensingMatrix generate_matrix(int height, int width, int chunk_len,
                              int bump_len, MatrixDistribution distribution,
                              uint64_t seed);

// "PCESM1" container: ASCII magic, u32-LE height, width, chunk_len,
// bump_len, u64-LE seed, u8 distribution tag (0=uniform,
// 1=truncated-gaussian), then height*width start times as u16-LE, row-major.
void save_matrix(const SensingMatrix& matrix,
                 const std::filesystem::path& path);
SensingMatrix load_matrix(const std::filesystem::path& path);

} // namespace pce
