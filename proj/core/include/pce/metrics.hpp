#pragma once

#include <span>

#include "pce/video.hpp"

namespace pce {

// Peak signal-to-noise ratio against an 8-bit peak of 255, in dB.
// Returns +infinity for identical inputs.
double psnr(const Video& a, const Video& b);
double psnr(const Frame& a, const Frame& b);

// Shannon entropy of the byte histogram, bits per symbol.
double shannon_entropy(std::span<const uint8_t> data);

} // namespace pce
