#include "pce/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace pce {

namespace {

double psnr_from_sums(double squared_error, std::size_t count) {
    if (squared_error == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double mse = squared_error / static_cast<double>(count);
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double squared_error(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum += d * d;
    }
    return sum;
}

} // namespace

double psnr(const Video& a, const Video& b) {
    if (a.height() != b.height() || a.width() != b.width() ||
        a.frame_count() != b.frame_count()) {
        throw ParameterError("metrics", "psnr inputs must share dimensions");
    }
    return psnr_from_sums(squared_error(a.pixels(), b.pixels()),
                          a.pixels().size());
}

double psnr(const Frame& a, const Frame& b) {
    if (a.height != b.height || a.width != b.width) {
        throw ParameterError("metrics", "psnr inputs must share dimensions");
    }
    return psnr_from_sums(squared_error(a.pixels, b.pixels), a.pixels.size());
}

double shannon_entropy(std::span<const uint8_t> data) {
    if (data.empty()) return 0.0;
    std::array<std::size_t, 256> histogram{};
    for (uint8_t byte : data) {
        ++histogram[byte];
    }
    const double total = static_cast<double>(data.size());
    double entropy = 0.0;
    for (std::size_t count : histogram) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

} // namespace pce
