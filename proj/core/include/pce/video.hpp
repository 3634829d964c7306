#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pce/error.hpp"

namespace pce {

// Single 8-bit grayscale image, row-major.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;

    Frame() = default;
    Frame(int height_, int width_, uint8_t fill = 0);
    Frame(int height_, int width_, std::vector<uint8_t> pixels_);

    std::size_t pixel_count() const { return pixels.size(); }

    uint8_t at(int y, int x) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    uint8_t& at(int y, int x) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const Frame&) const = default;
};

// M x N x T grayscale cube: frame-major, row-major within each frame.
// Treated as immutable once built; safe to share across threads.
class Video {
public:
    Video() = default;
    Video(int height, int width, int frame_count, uint8_t fill = 0);
    Video(int height, int width, int frame_count, std::vector<uint8_t> pixels);

    int height() const { return height_; }
    int width() const { return width_; }
    int frame_count() const { return frame_count_; }
    std::size_t frame_pixels() const {
        return static_cast<std::size_t>(height_) * width_;
    }

    uint8_t at(int y, int x, int t) const {
        return pixels_[voxel_index(y, x, t)];
    }
    uint8_t& at(int y, int x, int t) { return pixels_[voxel_index(y, x, t)]; }

    std::span<const uint8_t> frame_span(int t) const {
        return {pixels_.data() + static_cast<std::size_t>(t) * frame_pixels(),
                frame_pixels()};
    }
    Frame frame(int t) const;

    const std::vector<uint8_t>& pixels() const { return pixels_; }

    bool operator==(const Video&) const = default;

private:
    std::size_t voxel_index(int y, int x, int t) const {
        return static_cast<std::size_t>(t) * frame_pixels() +
               static_cast<std::size_t>(y) * width_ + x;
    }

    int height_ = 0;
    int width_ = 0;
    int frame_count_ = 0;
    std::vector<uint8_t> pixels_;
};

} // namespace pce
