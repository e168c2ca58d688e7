#include <cmath>
#include <numbers>

#include "bkit/metric_ops.hpp"
#include "bkit/reciprocal.hpp"
#include "bkit/types.hpp"
#include "bkit/verify.hpp"
#include "doctest.h"

using namespace bkit;
using std::numbers::pi;

namespace {

BasisGeometry geom2(double l1, double l2, double a12) {
    BasisGeometry g;
    g.n = 2;
    g.lengths = {l1, l2, 0.0};
    g.angles[0] = a12;
    return g;
}

BasisGeometry geom3(double l1, double l2, double l3, double a12, double a13, double a23) {
    BasisGeometry g;
    g.n = 3;
    g.lengths = {l1, l2, l3};
    g.angles = {a12, a13, a23};
    return g;
}

ReciprocalPair reciprocal_geometry(const BasisGeometry& g) {
    return g.n == 2 ? reciprocal_geometry_2d(g) : reciprocal_geometry_3d(g);
}

// oracle chain: realize the geometry, invert-transpose, and read the dual
// geometry off the resulting Gram matrix
BasisGeometry dual_geometry_oracle(const BasisGeometry& g) {
    const Mat a = cholesky_factor(build_metric(g));
    return geometry_from_metric(gram_from_basis(reciprocal_basis(a)));
}

}  // namespace

TEST_CASE("reciprocal_basis inverts the dot products") {
    const Mat a = random_basis(3, 31, 0, 1e3);
    const Mat astar = reciprocal_basis(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k) dot += a(k, i) * astar(k, j);
            CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("reciprocal_basis is an involution") {
    const Mat a = random_basis(2, 32, 0, 1e3);
    const Mat back = reciprocal_basis(reciprocal_basis(a));
    CHECK((back - a).max_abs() < 1e-12);
}

TEST_CASE("square 2D cell is self-reciprocal up to the beta flip") {
    const auto rp = reciprocal_geometry_2d(geom2(1.0, 1.0, pi / 2));
    CHECK(rp.dual.lengths[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rp.dual.lengths[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rp.dual.angles[0] == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(rp.gamma_diag[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hexagonal 2D cell fixed point") {
    const auto rp = reciprocal_geometry_2d(geom2(1.0, 1.0, 2 * pi / 3));
    CHECK(rp.dual.lengths[0] == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rp.dual.lengths[1] == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    // beta_12 = pi - alpha_12
    CHECK(rp.dual.angles[0] == doctest::Approx(pi / 3).epsilon(1e-12));
    CHECK(rp.gamma_diag[0] == doctest::Approx(std::sin(2 * pi / 3)).epsilon(1e-12));
}

TEST_CASE("2D lengths (2,3) at pi/6 fixed point") {
    const auto rp = reciprocal_geometry_2d(geom2(2.0, 3.0, pi / 6));
    // |a*_i| = 1/(|a_i| sin a12), sin(pi/6) = 1/2
    CHECK(rp.dual.lengths[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rp.dual.lengths[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rp.dual.angles[0] == doctest::Approx(5 * pi / 6).epsilon(1e-12));
}

TEST_CASE("rhombohedral 60-degree cell fixed point") {
    const auto rp = reciprocal_geometry_3d(geom3(1, 1, 1, pi / 3, pi / 3, pi / 3));
    // Delta = 1/2, sin(pi/3) = sqrt(3)/2 -> |a*| = sqrt(3/2)
    const double lstar = std::sqrt(1.5);
    for (int i = 0; i < 3; ++i) CHECK(rp.dual.lengths[i] == doctest::Approx(lstar).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        CHECK(std::cos(rp.dual.angles[i]) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    // cos(gamma_ii) = sqrt(Delta)/sin(alpha_jk) = sqrt(1/2)/(sqrt(3)/2)
    for (int i = 0; i < 3; ++i)
        CHECK(rp.gamma_diag[i] == doctest::Approx(std::sqrt(0.5) / std::sin(pi / 3)).epsilon(1e-12));
}

TEST_CASE("3D closed forms match the inverse-transpose oracle") {
    const BasisGeometry cases[] = {
        geom3(1, 2, 3, pi / 2, pi / 3, pi / 4),
        geom3(0.5, 1.5, 2.5, 1.9, 1.1, 0.9),
        geom3(1, 1, 1, pi / 3, pi / 3, pi / 3),
    };
    for (const auto& g : cases) {
        const auto rp = reciprocal_geometry_3d(g);
        const auto oracle = dual_geometry_oracle(g);
        for (int i = 0; i < 3; ++i) {
            CHECK(rp.dual.lengths[i] == doctest::Approx(oracle.lengths[i]).epsilon(1e-11));
            CHECK(std::cos(rp.dual.angles[i]) ==
                  doctest::Approx(std::cos(oracle.angles[i])).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("2D closed forms match the inverse-transpose oracle") {
    const BasisGeometry cases[] = {geom2(1, 1, 2 * pi / 3), geom2(2, 3, pi / 6),
                                   geom2(0.7, 1.3, 2.8)};
    for (const auto& g : cases) {
        const auto rp = reciprocal_geometry_2d(g);
        const auto oracle = dual_geometry_oracle(g);
        for (int i = 0; i < 2; ++i)
            CHECK(rp.dual.lengths[i] == doctest::Approx(oracle.lengths[i]).epsilon(1e-11));
        CHECK(rp.dual.angles[0] == doctest::Approx(oracle.angles[0]).epsilon(1e-11));
    }
}

TEST_CASE("reciprocal geometry is an involution") {
    const auto g = geom3(1.2, 0.8, 2.0, 1.3, 1.8, 0.7);
    const auto rp = reciprocal_geometry_3d(g);
    const auto back = reciprocal_geometry_3d(rp.dual).dual;
    for (int i = 0; i < 3; ++i) {
        CHECK(back.lengths[i] == doctest::Approx(g.lengths[i]).epsilon(1e-12));
        CHECK(back.angles[i] == doctest::Approx(g.angles[i]).epsilon(1e-12));
    }
}

TEST_CASE("normalization |a_i||a*_i| cos(gamma_ii) = 1") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const Mat a = random_basis(3, 41, t, 100.0);
        const auto g = geometry_from_metric(gram_from_basis(a));
        const auto rp = reciprocal_geometry_3d(g);
        for (int i = 0; i < 3; ++i)
            CHECK(g.lengths[i] * rp.dual.lengths[i] * rp.gamma_diag[i] ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("volume reciprocity V V* = 1") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const Mat a = random_basis(3, 42, t, 100.0);
        const auto g = geometry_from_metric(gram_from_basis(a));
        const auto rp = reciprocal_geometry_3d(g);
        CHECK(cell_volume(g) * cell_volume(rp.dual) == doctest::Approx(1.0).epsilon(1e-10));
        // independent determinant oracle
        CHECK(cell_volume(g) == doctest::Approx(std::abs(a.det())).epsilon(1e-10));
    }
}

TEST_CASE("norm form with Q = I reduces to sum x_i x*_i") {
    const Mat a = random_basis(3, 43, 0, 100.0);
    const Mat astar = reciprocal_basis(a);
    const Mat g = gram_from_basis(a);
    const Mat gstar = gram_from_basis(astar);
    const std::vector<double> x = {0.3, -1.2, 0.8};
    CoordinateVector xv{3, x, Frame::primal};
    TransformContext ctx;
    ctx.basis = a;
    ctx.dual_basis = astar;
    const auto xs = transform_coords(xv, ctx);
    const auto forms = quadratic_norm(x, xs.coords, g, gstar, Mat::identity(3));
    double dot = 0;
    for (int i = 0; i < 3; ++i) dot += x[i] * xs.coords[i];
    for (double f : forms) CHECK(f == doctest::Approx(dot).epsilon(1e-10));
}

TEST_CASE("delta fixed point: lengths (1,2,3) with Delta = 0.75") {
    // a13 = a23 = pi/2, a12 = pi/3 gives Delta = 1 - 1/4 = 0.75
    const auto g = geom3(1, 2, 3, pi / 3, pi / 2, pi / 2);
    CHECK(delta_omega(g.angles).delta == doctest::Approx(0.75).epsilon(1e-14));
    const auto rp = reciprocal_geometry_3d(g);
    // |a*_1| = sin(a23)/(l1 sqrt(Delta)) etc.
    const double rt = std::sqrt(0.75);
    CHECK(rp.dual.lengths[0] == doctest::Approx(1.0 / rt).epsilon(1e-12));
    CHECK(rp.dual.lengths[1] == doctest::Approx(0.5 / rt).epsilon(1e-12));
    CHECK(rp.dual.lengths[2] == doctest::Approx(std::sin(pi / 3) / (3.0 * rt)).epsilon(1e-12));
}

TEST_CASE("reciprocal geometry rejects invalid input") {
    CHECK_THROWS_AS(reciprocal_geometry_2d(geom2(0.0, 1.0, pi / 2)), error);
    CHECK_THROWS_AS(reciprocal_geometry_3d(geom3(1, 1, 1, 0.1, 0.1, 0.3)), error);
}
