#include "pce/dictionary.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pce/error.hpp"

namespace pce {

namespace {

// 1D orthonormal DCT-II table: basis(k, i) = a_k cos(pi (2i+1) k / (2n)),
// a_0 = sqrt(1/n), a_k = sqrt(2/n) otherwise.
Eigen::MatrixXd dct_table(int n) {
    Eigen::MatrixXd table(n, n);
    const double a0 = std::sqrt(1.0 / n);
    const double ak = std::sqrt(2.0 / n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            table(k, i) = (k == 0 ? a0 : ak) *
                          std::cos(std::numbers::pi * (2.0 * i + 1.0) * k /
                                   (2.0 * n));
        }
    }
    return table;
}

} // namespace

Dictionary3D::Dictionary3D(int patch_size, int chunk_len)
    : patch_size_(patch_size), chunk_len_(chunk_len) {
    if (patch_size < 1 || chunk_len < 1) {
        throw ParameterError("reconstruction",
                             "dictionary needs patch_size >= 1 and "
                             "chunk_len >= 1, got " +
                                 std::to_string(patch_size) + ", " +
                                 std::to_string(chunk_len));
    }
    const int p = patch_size;
    const int T = chunk_len;
    const Eigen::MatrixXd spatial = dct_table(p);
    const Eigen::MatrixXd temporal = dct_table(T);

    const int n = p * p * T;
    atoms_.resize(n, n);
    for (int u = 0; u < p; ++u) {
        for (int v = 0; v < p; ++v) {
            for (int w = 0; w < T; ++w) {
                const int col = (u * p + v) * T + w;
                for (int y = 0; y < p; ++y) {
                    for (int x = 0; x < p; ++x) {
                        const double spatial_part =
                            spatial(u, y) * spatial(v, x);
                        for (int t = 0; t < T; ++t) {
                            atoms_((y * p + x) * T + t, col) =
                                spatial_part * temporal(w, t);
                        }
                    }
                }
            }
        }
    }
}

Dictionary3D build_dictionary(int patch_size, int chunk_len) {
    return Dictionary3D(patch_size, chunk_len);
}

} // namespace pce
