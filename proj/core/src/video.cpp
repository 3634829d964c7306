#include "pce/video.hpp"

#include <string>

namespace pce {

namespace {

void check_dims(const char* module, int height, int width, int frames) {
    if (height < 1 || width < 1 || frames < 1) {
        throw ParameterError(module, "dimensions must be >= 1, got " +
                                         std::to_string(height) + "x" +
                                         std::to_string(width) + "x" +
                                         std::to_string(frames));
    }
}

} // namespace

Frame::Frame(int height_, int width_, uint8_t fill)
    : width(width_), height(height_) {
    check_dims("video-io", height_, width_, 1);
    pixels.assign(static_cast<std::size_t>(height_) * width_, fill);
}

Frame::Frame(int height_, int width_, std::vector<uint8_t> pixels_)
    : width(width_), height(height_), pixels(std::move(pixels_)) {
    check_dims("video-io", height_, width_, 1);
    const std::size_t expected = static_cast<std::size_t>(height_) * width_;
    if (pixels.size() != expected) {
        throw DimensionError("video-io",
                             "frame payload holds " +
                                 std::to_string(pixels.size()) +
                                 " pixels, dimensions require " +
                                 std::to_string(expected));
    }
}

Video::Video(int height, int width, int frame_count, uint8_t fill)
    : height_(height), width_(width), frame_count_(frame_count) {
    check_dims("video-io", height, width, frame_count);
    pixels_.assign(frame_pixels() * frame_count, fill);
}

Video::Video(int height, int width, int frame_count,
             std::vector<uint8_t> pixels)
    : height_(height), width_(width), frame_count_(frame_count),
      pixels_(std::move(pixels)) {
    check_dims("video-io", height, width, frame_count);
    const std::size_t expected = frame_pixels() * frame_count;
    if (pixels_.size() != expected) {
        throw DimensionError("video-io",
                             "video payload holds " +
                                 std::to_string(pixels_.size()) +
                                 " pixels, dimensions require " +
                                 std::to_string(expected));
    }
}

Frame Video::frame(int t) const {
    if (t < 0 || t >= frame_count_) {
        throw ParameterError("video-io",
                             "frame index " + std::to_string(t) +
                                 " out of range [0," +
                                 std::to_string(frame_count_) + ")");
    }
    auto span = frame_span(t);
    return Frame(height_, width_,
                 std::vector<uint8_t>(span.begin(), span.end()));
}

} // namespace pce
