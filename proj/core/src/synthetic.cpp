#include "pce/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "pce/rng.hpp"

namespace pce {

Video constant_video(int height, int width, int frame_count, uint8_t value) {
    return Video(height, width, frame_count, value);
}

Video block_video(int height, int width, int frame_count) {
    Video video(height, width, frame_count);
    const uint8_t levels[4] = {32, 96, 160, 224};
    for (int t = 0; t < frame_count; ++t) {
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const int quadrant = (y >= height / 2 ? 2 : 0) +
                                     (x >= width / 2 ? 1 : 0);
                video.at(y, x, t) = levels[quadrant];
            }
        }
    }
    return video;
}

Video random_video(int height, int width, int frame_count, uint64_t seed) {
    Video video(height, width, frame_count);
    Rng rng(seed);
    for (int t = 0; t < frame_count; ++t) {
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                video.at(y, x, t) = static_cast<uint8_t>(rng.below(256));
            }
        }
    }
    return video;
}

namespace {

// Position after reflecting t steps of velocity v inside [0, limit].
double bounce(double start, double velocity, int t, double limit) {
    if (limit <= 0.0) return 0.0;
    double pos = std::fmod(start + velocity * t, 2.0 * limit);
    if (pos < 0.0) pos += 2.0 * limit;
    return pos <= limit ? pos : 2.0 * limit - pos;
}

} // namespace

SyntheticScene moving_square(const MovingSquareSpec& spec) {
    SyntheticScene scene{
        Video(spec.height, spec.width, spec.frame_count, spec.background),
        {}};
    const double x_limit = spec.width - spec.square;
    const double y_limit = spec.height - spec.square;
    scene.labels.reserve(static_cast<std::size_t>(spec.frame_count));
    for (int t = 0; t < spec.frame_count; ++t) {
        const double x = bounce(spec.x0, spec.vx, t, x_limit);
        const double y = bounce(spec.y0, spec.vy, t, y_limit);
        const int ix = static_cast<int>(std::lround(x));
        const int iy = static_cast<int>(std::lround(y));
        for (int dy = 0; dy < spec.square; ++dy) {
            for (int dx = 0; dx < spec.square; ++dx) {
                scene.video.at(iy + dy, ix + dx, t) = spec.foreground;
            }
        }
        FrameAnnotations annotations;
        annotations.frame_index = t;
        annotations.boxes.push_back(
            BoundingBox{static_cast<double>(ix), static_cast<double>(iy),
                        static_cast<double>(ix + spec.square),
                        static_cast<double>(iy + spec.square), spec.class_id,
                        std::nullopt});
        scene.labels.push_back(std::move(annotations));
    }
    return scene;
}

} // namespace pce
