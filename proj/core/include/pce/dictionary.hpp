#pragma once

#include <Eigen/Dense>

namespace pce {

// Orthonormal separable 3D DCT-II basis over a patch_size x patch_size x
// chunk_len patch, stored as a square column matrix. Column order is
// frequency-major lexicographic (u, v, w) with u the vertical, v the
// horizontal and w the temporal frequency: column (u*p + v)*T + w.
// Row order matches the patch signal layout: row (y*p + x)*T + t.
class Dictionary3D {
public:
    Dictionary3D(int patch_size, int chunk_len);

    int patch_size() const { return patch_size_; }
    int chunk_len() const { return chunk_len_; }
    int atom_count() const { return static_cast<int>(atoms_.cols()); }

    const Eigen::MatrixXd& atoms() const { return atoms_; }

private:
    int patch_size_;
    int chunk_len_;
    Eigen::MatrixXd atoms_;
};

Dictionary3D build_dictionary(int patch_size, int chunk_len);

} // namespace pce
