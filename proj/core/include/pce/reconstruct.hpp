#pragma once

#include "pce/encoder.hpp"
#include "pce/omp.hpp"
#include "pce/video.hpp"

namespace pce {

struct ReconstructionStats {
    double seconds = 0.0; // wall time for the whole chunk
    int patch_count = 0;
    int rank_deficient_patches = 0;
};

struct ReconstructionResult {
    Video video; // chunk_len frames
    ReconstructionStats stats;
};

// Patch-wise sparse reconstruction of one chunk from raw coded sums.
// Windows step by cfg.patch_stride and are clamped so the last window ends
// at the image border; every window solves an independent OMP problem and
// the overlapping estimates are averaged per pixel. Output is bit-identical
// for any worker count: patches are solved in parallel but scattered in
// patch order.
ReconstructionResult reconstruct_chunk(const CodedFrame& coded,
                                       const Dictionary3D& dict,
                                       const OmpConfig& cfg, int workers = 1);

// Baseline the sparse reconstruction is judged against: the normalized
// coded frame repeated chunk_len times.
Video naive_expansion(const CodedFrame& coded);

} // namespace pce
