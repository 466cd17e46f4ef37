#include <doctest.h>

#include <cmath>
#include <vector>

#include <spdmean/random.hpp>
#include <spdmean/spaces.hpp>
#include <spdmean/spectral.hpp>

using spdmean::Matrix;
using spdmean::Vector;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("spd_distance closed forms") {
  const Matrix eye = Matrix::Identity(2, 2);
  CHECK(spdmean::spd_distance(eye, eye) == doctest::Approx(0.0).epsilon(1e-14));
  const double e2 = std::exp(2.0);
  CHECK(spdmean::spd_distance(eye, Matrix(e2 * eye)) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(spdmean::spd_distance(diag2(1, 4), diag2(4, 1)) ==
        doctest::Approx(std::sqrt(2.0) * std::log(4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(spdmean::spd_distance(eye, Matrix::Identity(3, 3)),
                  spdmean::DimensionMismatch);
}

TEST_CASE("spd_geodesic endpoints, commuting case, midpoint") {
  spdmean::SplitMix64 rng(5);
  const Matrix a = spdmean::random_spd(3, 30.0, rng);
  const Matrix b = spdmean::random_spd(3, 30.0, rng);

  CHECK(spdmean::spd_geodesic(a, b, 0.0) == a);
  CHECK(spdmean::spd_geodesic(a, b, 1.0) == b);
  CHECK(spdmean::spd_geodesic(diag2(1, 4), diag2(4, 1), 0.5).isApprox(diag2(2, 2), 1e-12));

  const Matrix mid = spdmean::spd_geodesic(a, b, 0.5);
  const double dab = spdmean::spd_distance(a, b);
  CHECK(spdmean::spd_distance(a, mid) == doctest::Approx(dab / 2).epsilon(1e-8));
  CHECK(spdmean::spd_distance(mid, b) == doctest::Approx(dab / 2).epsilon(1e-8));

  CHECK_THROWS_AS(spdmean::spd_geodesic(a, b, -0.1), spdmean::InvalidParameter);
  CHECK_THROWS_AS(spdmean::spd_geodesic(a, b, 1.1), spdmean::InvalidParameter);
}

TEST_CASE("geodesic symmetry x#ty = y#(1-t)x") {
  spdmean::SplitMix64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = spdmean::random_spd(3, 50.0, rng);
    const Matrix b = spdmean::random_spd(3, 50.0, rng);
    const double t = rng.next_double();
    const Matrix lhs = spdmean::spd_geodesic(a, b, t);
    const Matrix rhs = spdmean::spd_geodesic(b, a, 1.0 - t);
    CHECK((lhs - rhs).norm() < 1e-9 * lhs.norm());
  }
}

TEST_CASE("geodesic reparametrization is proportional to |s - t|") {
  spdmean::SplitMix64 rng(8);
  const spdmean::SpdSpace spd;
  const spdmean::EuclideanSpace euc;
  const spdmean::OrthantSpace orth;
  for (int trial = 0; trial < 8; ++trial) {
    const double s = rng.next_double();
    const double t = rng.next_double();

    const Matrix a = spdmean::random_spd(2, 40.0, rng);
    const Matrix b = spdmean::random_spd(2, 40.0, rng);
    const double d = spd.distance(a, b);
    CHECK(spd.distance(spd.geodesic(a, b, s), spd.geodesic(a, b, t)) ==
          doctest::Approx(std::abs(s - t) * d).epsilon(1e-8));

    Vector x(3), y(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.next_normal();
    for (int i = 0; i < 3; ++i) y(i) = rng.next_normal();
    CHECK(euc.distance(euc.geodesic(x, y, s), euc.geodesic(x, y, t)) ==
          doctest::Approx(std::abs(s - t) * euc.distance(x, y)).epsilon(1e-8));

    const Vector p = x.array().exp();
    const Vector q = y.array().exp();
    CHECK(orth.distance(orth.geodesic(p, q, s), orth.geodesic(p, q, t)) ==
          doctest::Approx(std::abs(s - t) * orth.distance(p, q)).epsilon(1e-8));
  }
}

TEST_CASE("euclidean closed forms and parallelogram equality") {
  CHECK(spdmean::euclid_geodesic(vec2(0, 0), vec2(2, 2), 0.5) == vec2(1, 1));
  CHECK(spdmean::euclid_distance(vec2(0, 0), vec2(3, 4)) == doctest::Approx(5.0));
  CHECK_THROWS_AS(spdmean::euclid_distance(vec2(0, 0), Vector::Ones(3)),
                  spdmean::DimensionMismatch);

  spdmean::SplitMix64 rng(17);
  const spdmean::EuclideanSpace euc;
  for (int trial = 0; trial < 50; ++trial) {
    Vector x(3), y(3), z(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = rng.next_normal();
      y(i) = rng.next_normal();
      z(i) = rng.next_normal();
    }
    const double slack = spdmean::check_semiparallelogram(euc, x, y, z, rng.next_double());
    CHECK(std::abs(slack) < 1e-10);
  }
}

TEST_CASE("orthant matches the SPD instance on diagonal matrices") {
  CHECK(spdmean::orthant_geodesic(vec2(1, 4), vec2(4, 1), 0.5).isApprox(vec2(2, 2), 1e-14));
  const double e2 = std::exp(2.0);
  CHECK(spdmean::orthant_distance(vec2(1, 1), vec2(e2, e2)) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(spdmean::orthant_distance(vec2(-1, 1), vec2(1, 1)), spdmean::InvalidInput);

  spdmean::SplitMix64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Vector a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a(i) = std::exp(2.0 * rng.next_double() - 1.0);
      b(i) = std::exp(2.0 * rng.next_double() - 1.0);
    }
    const Matrix da = a.asDiagonal();
    const Matrix db = b.asDiagonal();
    CHECK(std::abs(spdmean::orthant_distance(a, b) - spdmean::spd_distance(da, db)) < 1e-12);
    const double t = rng.next_double();
    const Vector g = spdmean::orthant_geodesic(a, b, t);
    const Matrix gm = spdmean::spd_geodesic(da, db, t);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(g(i) - gm(i, i)) < 1e-12);
  }
}

TEST_CASE("metric axioms hold on random triples in every instance") {
  const spdmean::SpdSpace spd;
  const spdmean::EuclideanSpace euc;
  const spdmean::OrthantSpace orth;
  const double slack = 1e-10;

  spdmean::SplitMix64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix a = spdmean::random_spd(2, 50.0, rng);
    const Matrix b = spdmean::random_spd(2, 50.0, rng);
    const Matrix c = spdmean::random_spd(2, 50.0, rng);
    const double dab = spd.distance(a, b);
    CHECK(std::abs(dab - spd.distance(b, a)) <= slack);
    CHECK(spd.distance(a, a) <= slack);
    CHECK(dab <= spd.distance(a, c) + spd.distance(c, b) + slack);

    Vector x(2), y(2), z(2);
    for (int i = 0; i < 2; ++i) {
      x(i) = rng.next_normal();
      y(i) = rng.next_normal();
      z(i) = rng.next_normal();
    }
    CHECK(euc.distance(x, y) <= euc.distance(x, z) + euc.distance(z, y) + slack);

    const Vector p = x.array().exp();
    const Vector q = y.array().exp();
    const Vector r = z.array().exp();
    CHECK(orth.distance(p, q) <= orth.distance(p, r) + orth.distance(r, q) + slack);
  }
}

TEST_CASE("semiparallelogram slack is nonnegative on the SPD instance") {
  const spdmean::SpdSpace spd;
  spdmean::SplitMix64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix x = spdmean::random_spd(2, 50.0, rng);
    const Matrix y = spdmean::random_spd(2, 50.0, rng);
    const Matrix z = spdmean::random_spd(2, 50.0, rng);
    CHECK(spdmean::check_semiparallelogram(spd, x, y, z, rng.next_double()) >= -1e-9);
  }
  // t = 0 collapses both sides to d^2(x, z); the slack is exactly zero.
  const Matrix x = spdmean::random_spd(3, 50.0, rng);
  const Matrix y = spdmean::random_spd(3, 50.0, rng);
  const Matrix z = spdmean::random_spd(3, 50.0, rng);
  CHECK(spdmean::check_semiparallelogram(spd, x, y, z, 0.0) == 0.0);
  // z on the geodesic drops the last term; what is left is nonnegative.
  const double t = 0.3;
  CHECK(spdmean::check_semiparallelogram(spd, x, y, spd.geodesic(x, y, t), t) >= -1e-12);
}

TEST_CASE("congruence and inversion are isometries of the SPD instance") {
  spdmean::SplitMix64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = spdmean::random_spd(3, 50.0, rng);
    const Matrix b = spdmean::random_spd(3, 50.0, rng);
    const Matrix m = spdmean::random_matrix(3, 3, rng);
    if (std::abs(Eigen::PartialPivLU<Matrix>(m).determinant()) <= 1e-12) continue;
    const double d = spdmean::spd_distance(a, b);
    CHECK(spdmean::spd_distance(spdmean::congruence(m, a), spdmean::congruence(m, b)) ==
          doctest::Approx(d).epsilon(1e-9));
    CHECK(spdmean::spd_distance(spdmean::spd_inverse(a), spdmean::spd_inverse(b)) ==
          doctest::Approx(d).epsilon(1e-9));
  }
}
