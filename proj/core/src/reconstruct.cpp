#include "pce/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace pce {

namespace {

constexpr const char* kModule = "reconstruction";

// Window origins along one axis: multiples of stride, with the final window
// shifted inward so it ends exactly at the border (no padding, no
// fabricated pixels).
std::vector<int> window_origins(int extent, int patch, int stride) {
    std::vector<int> origins;
    for (int o = 0;; o += stride) {
        if (o + patch >= extent) {
            const int last = extent - patch;
            if (origins.empty() || origins.back() != last) {
                origins.push_back(last);
            }
            break;
        }
        origins.push_back(o);
    }
    return origins;
}

} // namespace

Video naive_expansion(const CodedFrame& coded) {
    const Frame normalized = coded.normalized();
    std::vector<uint8_t> pixels;
    pixels.reserve(normalized.pixel_count() * coded.matrix.chunk_len());
    for (int t = 0; t < coded.matrix.chunk_len(); ++t) {
        pixels.insert(pixels.end(), normalized.pixels.begin(),
                      normalized.pixels.end());
    }
    return Video(coded.height, coded.width, coded.matrix.chunk_len(),
                 std::move(pixels));
}

ReconstructionResult reconstruct_chunk(const CodedFrame& coded,
                                       const Dictionary3D& dict,
                                       const OmpConfig& cfg, int workers) {
    const int p = dict.patch_size();
    const int chunk_len = dict.chunk_len();
    if (coded.matrix.chunk_len() != chunk_len) {
        throw ParameterError(kModule,
                             "dictionary chunk_len " +
                                 std::to_string(chunk_len) +
                                 " does not match matrix chunk_len " +
                                 std::to_string(coded.matrix.chunk_len()));
    }
    if (coded.height < p || coded.width < p) {
        throw ParameterError(kModule, "image " + std::to_string(coded.height) +
                                          "x" + std::to_string(coded.width) +
                                          " smaller than patch size " +
                                          std::to_string(p));
    }
    if (cfg.patch_stride < 1 || cfg.patch_stride > p) {
        throw ParameterError(kModule, "patch_stride must be in [1, patch_size]");
    }
    if (workers < 1) {
        throw ParameterError(kModule, "workers must be >= 1");
    }

    const auto start_time = std::chrono::steady_clock::now();

    const std::vector<int> ys = window_origins(coded.height, p, cfg.patch_stride);
    const std::vector<int> xs = window_origins(coded.width, p, cfg.patch_stride);
    struct Window {
        int y0, x0;
    };
    std::vector<Window> windows;
    windows.reserve(ys.size() * xs.size());
    for (int y0 : ys) {
        for (int x0 : xs) {
            windows.push_back({y0, x0});
        }
    }

    // Phase 1: solve every patch independently (parallel).
    struct PatchOutput {
        Eigen::VectorXd estimate; // D * alpha, length p*p*chunk_len
        bool rank_deficient = false;
    };
    std::vector<PatchOutput> outputs(windows.size());

    auto solve_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Window& win = windows[i];
            PatchProblem problem;
            problem.patch_size = p;
            problem.chunk_len = chunk_len;
            problem.bump_len = coded.bump_len;
            problem.measurement.resize(p * p);
            problem.starts.resize(static_cast<std::size_t>(p) * p);
            for (int wy = 0; wy < p; ++wy) {
                for (int wx = 0; wx < p; ++wx) {
                    const int iy = win.y0 + wy;
                    const int ix = win.x0 + wx;
                    const std::size_t image_pixel =
                        static_cast<std::size_t>(iy) * coded.width + ix;
                    problem.measurement(wy * p + wx) = coded.sums[image_pixel];
                    problem.starts[static_cast<std::size_t>(wy) * p + wx] =
                        coded.matrix.start_times()[image_pixel];
                }
            }
            OmpResult omp = omp_solve(problem, dict, cfg);
            outputs[i].estimate = dict.atoms() * omp.coefficients;
            outputs[i].rank_deficient = omp.rank_deficient;
        }
    };

    const std::size_t count = windows.size();
    const int used_workers =
        static_cast<int>(std::min<std::size_t>(workers, count));
    if (used_workers <= 1) {
        solve_range(0, count);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(used_workers);
        const std::size_t per_worker =
            (count + used_workers - 1) / used_workers;
        for (int w = 0; w < used_workers; ++w) {
            const std::size_t begin = per_worker * w;
            const std::size_t end = std::min(count, begin + per_worker);
            if (begin >= end) break;
            pool.emplace_back(solve_range, begin, end);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // Phase 2: scatter in fixed patch order so the result does not depend
    // on the worker count.
    const std::size_t frame_pixels =
        static_cast<std::size_t>(coded.height) * coded.width;
    std::vector<double> accumulator(frame_pixels * chunk_len, 0.0);
    std::vector<uint32_t> coverage(frame_pixels, 0);
    int rank_deficient_patches = 0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const Window& win = windows[i];
        const Eigen::VectorXd& estimate = outputs[i].estimate;
        if (outputs[i].rank_deficient) ++rank_deficient_patches;
        for (int wy = 0; wy < p; ++wy) {
            for (int wx = 0; wx < p; ++wx) {
                const std::size_t image_pixel =
                    static_cast<std::size_t>(win.y0 + wy) * coded.width +
                    (win.x0 + wx);
                ++coverage[image_pixel];
                for (int t = 0; t < chunk_len; ++t) {
                    accumulator[static_cast<std::size_t>(t) * frame_pixels +
                                image_pixel] +=
                        estimate((wy * p + wx) * chunk_len + t);
                }
            }
        }
    }

    std::vector<uint8_t> pixels(frame_pixels * chunk_len);
    for (std::size_t pix = 0; pix < frame_pixels; ++pix) {
        const double denom = coverage[pix]; // >= 1: windows tile the image
        for (int t = 0; t < chunk_len; ++t) {
            const double value =
                accumulator[static_cast<std::size_t>(t) * frame_pixels + pix] /
                denom;
            const double rounded = std::round(value);
            pixels[static_cast<std::size_t>(t) * frame_pixels + pix] =
                static_cast<uint8_t>(std::clamp(rounded, 0.0, 255.0));
        }
    }

    ReconstructionResult result{
        Video(coded.height, coded.width, chunk_len, std::move(pixels)),
        ReconstructionStats{}};
    result.stats.patch_count = static_cast<int>(windows.size());
    result.stats.rank_deficient_patches = rank_deficient_patches;
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_time)
            .count();
    return result;
}

} // namespace pce
