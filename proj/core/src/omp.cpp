#include "pce/omp.hpp"

#include <string>

#include "pce/error.hpp"

namespace pce {

namespace {

constexpr const char* kModule = "reconstruction";

void check_problem(const PatchProblem& problem) {
    const std::size_t pixels =
        static_cast<std::size_t>(problem.patch_size) * problem.patch_size;
    if (problem.patch_size < 1 || problem.chunk_len < 1 ||
        problem.bump_len < 1 || problem.bump_len > problem.chunk_len) {
        throw ParameterError(kModule, "invalid patch problem geometry");
    }
    if (problem.starts.size() != pixels ||
        static_cast<std::size_t>(problem.measurement.size()) != pixels) {
        throw ParameterError(kModule,
                             "patch problem arrays do not match patch_size^2");
    }
    for (uint16_t s : problem.starts) {
        if (s + problem.bump_len > problem.chunk_len) {
            throw ParameterError(kModule, "patch start time " +
                                              std::to_string(s) +
                                              " overruns chunk");
        }
    }
}

} // namespace

Eigen::MatrixXd PatchProblem::measurement_operator() const {
    check_problem(*this);
    const int pixels = patch_size * patch_size;
    Eigen::MatrixXd phi =
        Eigen::MatrixXd::Zero(pixels, static_cast<long>(pixels) * chunk_len);
    for (int r = 0; r < pixels; ++r) {
        for (int t = 0; t < bump_len; ++t) {
            phi(r, static_cast<long>(r) * chunk_len + starts[r] + t) = 1.0;
        }
    }
    return phi;
}

Eigen::MatrixXd PatchProblem::effective_dictionary(
    const Dictionary3D& dict) const {
    check_problem(*this);
    if (dict.patch_size() != patch_size || dict.chunk_len() != chunk_len) {
        throw ParameterError(kModule,
                             "dictionary geometry does not match problem");
    }
    const int pixels = patch_size * patch_size;
    Eigen::MatrixXd effective(pixels, dict.atom_count());
    for (int r = 0; r < pixels; ++r) {
        effective.row(r) =
            dict.atoms()
                .middleRows(static_cast<long>(r) * chunk_len + starts[r],
                            bump_len)
                .colwise()
                .sum();
    }
    return effective;
}

OmpResult omp_solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                          const OmpConfig& cfg) {
    if (A.rows() != y.size()) {
        throw ParameterError(kModule, "operator rows do not match measurement");
    }
    if (cfg.max_sparsity < 1) {
        throw ParameterError(kModule, "max_sparsity must be >= 1");
    }

    const long n = A.cols();
    OmpResult result;
    result.coefficients = Eigen::VectorXd::Zero(n);
    result.residual = y;

    const double y_norm = y.norm();
    result.residual_norms.push_back(y_norm);
    if (y_norm == 0.0) {
        return result; // zero measurement: zero iterations by contract
    }

    const Eigen::VectorXd column_norms = A.colwise().norm();
    const double zero_column_tol = 1e-12 * column_norms.maxCoeff();

    Eigen::VectorXd alpha_support;
    while (static_cast<int>(result.support.size()) < cfg.max_sparsity) {
        // Correlation scores normalized by effective column norm; masking
        // destroys the dictionary's unit norms so |a^T r| alone would bias
        // selection toward heavily observed atoms.
        Eigen::VectorXd scores =
            (A.transpose() * result.residual).cwiseAbs();
        for (long j = 0; j < n; ++j) {
            if (column_norms(j) <= zero_column_tol) {
                scores(j) = -1.0;
            } else {
                scores(j) /= column_norms(j);
            }
        }
        for (int j : result.support) {
            scores(j) = -1.0;
        }
        long best = -1;
        const double best_score = scores.maxCoeff(&best);
        if (best < 0 || best_score <= 0.0) {
            break; // residual orthogonal to every selectable atom
        }

        result.support.push_back(static_cast<int>(best));
        Eigen::MatrixXd support_cols(A.rows(),
                                     static_cast<long>(result.support.size()));
        for (std::size_t i = 0; i < result.support.size(); ++i) {
            support_cols.col(static_cast<long>(i)) = A.col(result.support[i]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(support_cols);
        if (qr.rank() < static_cast<long>(result.support.size())) {
            result.support.pop_back();
            result.rank_deficient = true;
            break; // keep the previous fit
        }
        alpha_support = qr.solve(y);
        result.residual = y - support_cols * alpha_support;
        ++result.iterations;
        result.residual_norms.push_back(result.residual.norm());
        if (cfg.record_trace) {
            result.trace.push_back(OmpIteration{static_cast<int>(best),
                                                result.support,
                                                result.residual});
        }
        if (result.residual.norm() <= cfg.residual_tol * y_norm) {
            break;
        }
    }

    for (std::size_t i = 0; i < result.support.size(); ++i) {
        result.coefficients(result.support[i]) =
            alpha_support(static_cast<long>(i));
    }
    return result;
}

OmpResult omp_solve(const PatchProblem& problem, const Dictionary3D& dict,
                    const OmpConfig& cfg) {
    const Eigen::MatrixXd effective = problem.effective_dictionary(dict);
    return omp_solve_dense(effective, problem.measurement, cfg);
}

} // namespace pce
