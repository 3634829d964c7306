#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pce/dictionary.hpp"

namespace pce {

struct OmpConfig {
    int max_sparsity = 16;      // greedy support cap
    double residual_tol = 1e-3; // relative l2 stopping threshold
    int patch_stride = 3;       // window step used by reconstruction
    // When set, omp_solve keeps the residual vector and support after every
    // iteration so tests can verify the greedy invariants independently.
    bool record_trace = false;
};

struct OmpIteration {
    int selected_atom = -1;
    std::vector<int> support;
    Eigen::VectorXd residual;
};

struct OmpResult {
    std::vector<int> support;        // atoms in selection order
    Eigen::VectorXd coefficients;    // dense, zeros off-support
    Eigen::VectorXd residual;        // y - A_support * alpha_support
    std::vector<double> residual_norms; // ||y||, then after each iteration
    int iterations = 0;
    bool rank_deficient = false;     // newest atom dropped, stopped early
    std::vector<OmpIteration> trace; // populated when cfg.record_trace
};

// One patch-wise measurement: y holds the coded sums of a patch window and
// the per-pixel start times describe the binary operator that produced
// them. Row r of the implied operator has exactly bump_len ones, at
// columns r*chunk_len + t for t in [starts[r], starts[r]+bump_len).
struct PatchProblem {
    Eigen::VectorXd measurement;   // length patch_size^2
    std::vector<uint16_t> starts;  // per patch pixel, row-major
    int bump_len = 0;
    int patch_size = 0;
    int chunk_len = 0;

    // Dense binary operator, patch_size^2 x patch_size^2*chunk_len.
    Eigen::MatrixXd measurement_operator() const;
    // Phi * D without materializing Phi: each row sums bump_len rows of D.
    Eigen::MatrixXd effective_dictionary(const Dictionary3D& dict) const;
};

// Greedy pursuit: select the atom maximizing |a_j^T r| / ||a_j|| (zero
// columns skipped), re-fit by least squares on the support, stop when the
// support reaches max_sparsity or ||r|| <= residual_tol * ||y||. A
// rank-deficient support solve drops the newest atom and stops, flagged in
// the result.
OmpResult omp_solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                          const OmpConfig& cfg);
OmpResult omp_solve(const PatchProblem& problem, const Dictionary3D& dict,
                    const OmpConfig& cfg);

} // namespace pce
