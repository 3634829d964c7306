#pragma once

#include <filesystem>

#include "pce/video.hpp"

namespace pce {

// Storage formats for grayscale cubes.
//
// RawContainer "PCEV1": ASCII magic `PCEV1`, then u32-LE height (M),
// width (N), frame count (T), then M*N*T payload bytes, frame-major,
// row-major within each frame.
//
// PgmSequence: one binary P5 file (maxval 255) per frame in a directory,
// frame order given by lexicographic filename order. save_video emits
// zero-padded names (frame_000000.pgm, ...) so the order is stable.
enum class VideoFormat { RawContainer, PgmSequence };

Video load_video(const std::filesystem::path& path, VideoFormat format);
void save_video(const Video& video, const std::filesystem::path& path,
                VideoFormat format);

Frame load_pgm(const std::filesystem::path& path);
void save_pgm(const Frame& frame, const std::filesystem::path& path);

} // namespace pce
