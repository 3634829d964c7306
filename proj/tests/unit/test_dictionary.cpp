#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pce/dictionary.hpp"
#include "pce/error.hpp"

using namespace pce;

namespace {

double gram_identity_error(const Dictionary3D& dict) {
    const Eigen::MatrixXd gram = dict.atoms().transpose() * dict.atoms();
    const long n = gram.rows();
    return (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("1x1x1 dictionary is the scalar identity") {
    const Dictionary3D dict(1, 1);
    CHECK(dict.atom_count() == 1);
    CHECK(dict.atoms()(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("2x2 spatial basis with T=1 matches analytic DCT-II values") {
    const Dictionary3D dict(2, 1);
    REQUIRE(dict.atom_count() == 4);
    // DC atom: all entries 1/2.
    for (int r = 0; r < 4; ++r) {
        CHECK(dict.atoms()(r, 0) == doctest::Approx(0.5));
    }
    // Column order (u,v): (0,1) flips along x, (1,0) along y, (1,1) both.
    const double c = 0.5; // (sqrt(2)/2)^2
    // atom (0,1): + - + -  over (y,x) = (0,0),(0,1),(1,0),(1,1)
    CHECK(dict.atoms()(0, 1) == doctest::Approx(c));
    CHECK(dict.atoms()(1, 1) == doctest::Approx(-c));
    CHECK(dict.atoms()(2, 1) == doctest::Approx(c));
    CHECK(dict.atoms()(3, 1) == doctest::Approx(-c));
    // atom (1,0): + + - -
    CHECK(dict.atoms()(0, 2) == doctest::Approx(c));
    CHECK(dict.atoms()(1, 2) == doctest::Approx(c));
    CHECK(dict.atoms()(2, 2) == doctest::Approx(-c));
    CHECK(dict.atoms()(3, 2) == doctest::Approx(-c));
    // atom (1,1): + - - +
    CHECK(dict.atoms()(0, 3) == doctest::Approx(c));
    CHECK(dict.atoms()(1, 3) == doctest::Approx(-c));
    CHECK(dict.atoms()(2, 3) == doctest::Approx(-c));
    CHECK(dict.atoms()(3, 3) == doctest::Approx(c));
}

TEST_CASE("gram matrix is the identity within 1e-10") {
    CHECK(gram_identity_error(Dictionary3D(2, 3)) < 1e-10);
    CHECK(gram_identity_error(Dictionary3D(4, 4)) < 1e-10);
    CHECK(gram_identity_error(Dictionary3D(3, 5)) < 1e-10);
    CHECK(gram_identity_error(Dictionary3D(7, 13)) < 1e-10);
}

TEST_CASE("atom ordering is frequency-major (u, v, w) lexicographic") {
    const Dictionary3D dict(2, 3);
    // Column (u*p + v)*T + w for p=2, T=3: column 1 must be (0,0,1), a
    // purely temporal atom: constant over space, first temporal frequency.
    const int col = 1;
    const double a0 = std::sqrt(1.0 / 2.0); // spatial DC coefficient, n=2
    const double t1_0 =
        std::sqrt(2.0 / 3.0) * std::cos(std::numbers::pi / 6.0);
    // row (y=0, x=0, t=0) = a0 * a0 * t1(0)
    CHECK(dict.atoms()(0, col) == doctest::Approx(a0 * a0 * t1_0));
}

TEST_CASE("invalid geometry is rejected") {
    CHECK_THROWS_AS(Dictionary3D(0, 3), ParameterError);
    CHECK_THROWS_AS(Dictionary3D(7, 0), ParameterError);
}
