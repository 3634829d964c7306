#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "pce/error.hpp"
#include "pce/omp.hpp"

using namespace pce;

namespace {

// Random patch problem over a 4x4x4 patch with bump 2: starts in {0,1,2}.
PatchProblem random_problem(uint64_t seed) {
    std::mt19937_64 rng(seed);
    PatchProblem problem;
    problem.patch_size = 4;
    problem.chunk_len = 4;
    problem.bump_len = 2;
    problem.starts.resize(16);
    for (auto& s : problem.starts) {
        s = static_cast<uint16_t>(rng() % 3);
    }
    problem.measurement = Eigen::VectorXd::Zero(16);
    return problem;
}

} // namespace

TEST_CASE("each operator row carries exactly bump_len ones") {
    for (uint64_t seed : {1u, 2u, 3u}) {
        const PatchProblem problem = random_problem(seed);
        const Eigen::MatrixXd phi = problem.measurement_operator();
        for (long r = 0; r < phi.rows(); ++r) {
            CHECK(phi.row(r).sum() == doctest::Approx(problem.bump_len));
        }
    }
}

TEST_CASE("effective dictionary equals the dense product Phi * D") {
    const PatchProblem problem = random_problem(5);
    const Dictionary3D dict(4, 4);
    const Eigen::MatrixXd direct =
        problem.measurement_operator() * dict.atoms();
    const Eigen::MatrixXd effective = problem.effective_dictionary(dict);
    CHECK((direct - effective).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("an exactly 1-sparse measurement is recovered in one iteration") {
    const Dictionary3D dict(4, 4);
    PatchProblem problem = random_problem(7);
    const Eigen::MatrixXd A = problem.effective_dictionary(dict);
    const int atom = 11;
    problem.measurement = 3.7 * A.col(atom);

    OmpConfig cfg;
    cfg.max_sparsity = 5;
    const OmpResult result = omp_solve(problem, dict, cfg);
    CHECK(result.iterations == 1);
    REQUIRE(result.support.size() == 1);
    CHECK(result.support[0] == atom);
    CHECK(result.coefficients(atom) == doctest::Approx(3.7).epsilon(1e-10));
    CHECK(result.residual.norm() < 1e-9);
}

TEST_CASE("zero measurement returns zero coefficients and zero iterations") {
    const Dictionary3D dict(4, 4);
    const PatchProblem problem = random_problem(9); // measurement all zero
    const OmpResult result = omp_solve(problem, dict, OmpConfig{});
    CHECK(result.iterations == 0);
    CHECK(result.support.empty());
    CHECK(result.coefficients.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("well-conditioned k<=3-sparse measurements are recovered exactly") {
    // "Well-conditioned" is checked, not assumed: an instance counts only
    // if the exact recovery condition max_j ||pinv(An_S) an_j||_1 < 0.99
    // holds on the column-normalized effective dictionary. Masked columns
    // can coincide exactly (ERC = 1), making the support unidentifiable;
    // those draws are skipped.
    const Dictionary3D dict(4, 4);
    std::mt19937_64 rng(2718);
    int valid = 0;
    for (int trial = 0; trial < 150; ++trial) {
        PatchProblem problem;
        problem.patch_size = 4;
        problem.chunk_len = 4;
        problem.bump_len = 1 + static_cast<int>(rng() % 3);
        problem.starts.resize(16);
        for (auto& s : problem.starts) {
            s = static_cast<uint16_t>(rng() % (4 - problem.bump_len + 1));
        }
        problem.measurement = Eigen::VectorXd::Zero(16);
        const Eigen::MatrixXd A = problem.effective_dictionary(dict);
        Eigen::MatrixXd normalized = A;
        std::vector<double> norms(static_cast<std::size_t>(A.cols()));
        for (long j = 0; j < A.cols(); ++j) {
            norms[static_cast<std::size_t>(j)] = A.col(j).norm();
            if (norms[static_cast<std::size_t>(j)] > 1e-12) {
                normalized.col(j) /= norms[static_cast<std::size_t>(j)];
            }
        }
        const int sparsity = 1 + static_cast<int>(rng() % 3);
        std::vector<int> support;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dict.atom_count());
        while (static_cast<int>(support.size()) < sparsity) {
            const int atom = static_cast<int>(rng() % dict.atom_count());
            if (norms[static_cast<std::size_t>(atom)] < 1e-9) continue;
            if (std::find(support.begin(), support.end(), atom) !=
                support.end()) {
                continue;
            }
            support.push_back(atom);
            x(atom) = (0.5 + 2.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53) *
                      (rng() % 2 ? 1.0 : -1.0);
        }
        Eigen::MatrixXd support_cols(16, sparsity);
        for (int i = 0; i < sparsity; ++i) {
            support_cols.col(i) = normalized.col(support[i]);
        }
        const auto svd = support_cols.jacobiSvd(Eigen::ComputeThinU |
                                                Eigen::ComputeThinV);
        if (svd.singularValues()(sparsity - 1) < 1e-8) continue;
        double erc = 0.0;
        for (long j = 0; j < A.cols(); ++j) {
            if (norms[static_cast<std::size_t>(j)] < 1e-9) continue;
            if (std::find(support.begin(), support.end(),
                          static_cast<int>(j)) != support.end()) {
                continue;
            }
            erc = std::max(erc, svd.solve(normalized.col(j)).lpNorm<1>());
        }
        if (erc >= 0.99) continue;
        ++valid;

        problem.measurement = A * x;
        OmpConfig cfg;
        cfg.max_sparsity = sparsity;
        cfg.residual_tol = 1e-12;
        const OmpResult result = omp_solve(problem, dict, cfg);
        REQUIRE((result.coefficients - x).cwiseAbs().maxCoeff() < 1e-6);
    }
    CHECK(valid >= 20);
}

TEST_CASE("every least-squares refit matches an independent SVD solve") {
    const Dictionary3D dict(4, 4);
    PatchProblem problem = random_problem(55);
    const Eigen::MatrixXd A = problem.effective_dictionary(dict);
    std::mt19937_64 rng(55);
    problem.measurement.resize(16);
    for (int i = 0; i < 16; ++i) {
        problem.measurement(i) =
            static_cast<double>(rng() % 1000) / 10.0;
    }

    OmpConfig cfg;
    cfg.max_sparsity = 8;
    cfg.residual_tol = 0.0;
    cfg.record_trace = true;
    const OmpResult result = omp_solve(problem, dict, cfg);
    REQUIRE(!result.trace.empty());
    for (const auto& step : result.trace) {
        Eigen::MatrixXd support_cols(A.rows(),
                                     static_cast<long>(step.support.size()));
        for (std::size_t i = 0; i < step.support.size(); ++i) {
            support_cols.col(static_cast<long>(i)) = A.col(step.support[i]);
        }
        const Eigen::VectorXd oracle_coeffs =
            support_cols.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                .solve(problem.measurement);
        const Eigen::VectorXd oracle_residual =
            problem.measurement - support_cols * oracle_coeffs;
        CHECK((step.residual - oracle_residual).norm() <
              1e-8 * problem.measurement.norm());
    }
}

TEST_CASE("residual norms never increase and stay orthogonal to the support") {
    const Dictionary3D dict(4, 4);
    for (uint64_t seed = 0; seed < 8; ++seed) {
        PatchProblem problem = random_problem(200 + seed);
        const Eigen::MatrixXd A = problem.effective_dictionary(dict);
        std::mt19937_64 rng(seed);
        problem.measurement.resize(16);
        for (int i = 0; i < 16; ++i) {
            problem.measurement(i) = static_cast<double>(rng() % 256);
        }
        OmpConfig cfg;
        cfg.max_sparsity = 10;
        cfg.residual_tol = 0.0;
        cfg.record_trace = true;
        const OmpResult result = omp_solve(problem, dict, cfg);
        for (std::size_t i = 1; i < result.residual_norms.size(); ++i) {
            CHECK(result.residual_norms[i] <=
                  result.residual_norms[i - 1] + 1e-12);
        }
        const double y_norm = problem.measurement.norm();
        for (const auto& step : result.trace) {
            for (int atom : step.support) {
                CHECK(std::abs(A.col(atom).dot(step.residual)) <=
                      1e-8 * y_norm);
            }
        }
        // support never exceeds k and never repeats an atom
        CHECK(result.support.size() <=
              static_cast<std::size_t>(cfg.max_sparsity));
        auto sorted = result.support;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) ==
              sorted.end());
    }
}

TEST_CASE("near-dependent selection trips the rank-deficiency early stop") {
    // col1 differs from col0 by 1e-17: correlation with the residual stays
    // positive after col0 is fitted, but the support solve is numerically
    // rank deficient, so the newest atom must be dropped.
    Eigen::MatrixXd A(2, 2);
    A.col(0) << 1.0, 0.0;
    A.col(1) << 1.0, 1e-17;
    Eigen::VectorXd y(2);
    y << 1.0, 2e-17;

    OmpConfig cfg;
    cfg.max_sparsity = 2;
    cfg.residual_tol = 0.0;
    const OmpResult result = omp_solve_dense(A, y, cfg);
    CHECK(result.rank_deficient);
    CHECK(result.support == std::vector<int>{0});
    CHECK(result.coefficients(0) == doctest::Approx(1.0));
}

TEST_CASE("zero columns are never selected") {
    Eigen::MatrixXd A(2, 3);
    A.col(0) << 0.0, 0.0;
    A.col(1) << 1.0, 0.0;
    A.col(2) << 0.0, 1.0;
    Eigen::VectorXd y(2);
    y << 3.0, 4.0;
    OmpConfig cfg;
    cfg.max_sparsity = 3;
    const OmpResult result = omp_solve_dense(A, y, cfg);
    for (int atom : result.support) {
        CHECK(atom != 0);
    }
    CHECK(result.residual.norm() < 1e-12);
}

TEST_CASE("full-basis identity with an all-observed degenerate mask") {
    // chunk_len 1 with bump 1 observes everything: Phi is the identity and
    // D * (D^T y) must reproduce y.
    const Dictionary3D dict(3, 1);
    PatchProblem problem;
    problem.patch_size = 3;
    problem.chunk_len = 1;
    problem.bump_len = 1;
    problem.starts.assign(9, 0);
    std::mt19937_64 rng(4);
    problem.measurement.resize(9);
    for (int i = 0; i < 9; ++i) {
        problem.measurement(i) = static_cast<double>(rng() % 256);
    }
    const Eigen::VectorXd reproduced =
        dict.atoms() * (dict.atoms().transpose() * problem.measurement);
    CHECK((reproduced - problem.measurement).norm() <
          1e-8 * problem.measurement.norm());
}

TEST_CASE("invalid problems are rejected") {
    const Dictionary3D dict(4, 4);
    PatchProblem problem = random_problem(1);
    problem.starts[0] = 3; // start 3 + bump 2 > chunk 4
    CHECK_THROWS_AS(omp_solve(problem, dict, OmpConfig{}), ParameterError);

    PatchProblem mismatched = random_problem(1);
    const Dictionary3D other(4, 5);
    CHECK_THROWS_AS(omp_solve(mismatched, other, OmpConfig{}), ParameterError);
}
