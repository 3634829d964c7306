#pragma once

#include <cstdint>
#include <vector>

#include "pce/annotations.hpp"
#include "pce/video.hpp"

namespace pce {

Video constant_video(int height, int width, int frame_count, uint8_t value);

// Static 2x2 grid of four gray levels; exercises spatial structure with no
// motion.
Video block_video(int height, int width, int frame_count);

// Uniformly random pixels, deterministic in the seed.
Video random_video(int height, int width, int frame_count, uint64_t seed);

struct MovingSquareSpec {
    int height = 64;
    int width = 64;
    int frame_count = 52;
    int square = 16;
    uint8_t foreground = 230;
    uint8_t background = 40;
    double x0 = 4.0;
    double y0 = 8.0;
    double vx = 1.5; // pixels per frame, reflects off borders
    double vy = 0.75;
    int class_id = 0;
};

// Moving bright square over a flat background, with exact per-frame
// bounding boxes derived from the same trajectory the renderer uses.
struct SyntheticScene {
    Video video;
    std::vector<FrameAnnotations> labels;
};

SyntheticScene moving_square(const MovingSquareSpec& spec);

} // namespace pce
