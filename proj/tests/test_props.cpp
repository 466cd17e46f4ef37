#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <vector>

#include <spdmean/props.hpp>

#include "corpus.hpp"

using spdmean::Matrix;
using spdmean::TrialReport;
using spdmean::Vector;
using spdmean::Weight;

namespace {

const std::vector<int> kDims{2, 3};
const std::vector<int> kN{3, 4, 5};

}  // namespace

TEST_CASE("dedicated checks pass on small seeded runs") {
  CHECK(spdmean::check_monotonicity(20, kDims, kN, 42).pass);
  CHECK(spdmean::check_concavity(20, kDims, kN, 42).pass);
  CHECK(spdmean::check_agh(20, kDims, kN, 42).pass);
  CHECK(spdmean::check_nonexpansive(20, kDims, kN, 42).pass);
}

TEST_CASE("monotonicity on 1x1 scalars reduces to the weighted geometric mean of reals") {
  const auto report = spdmean::check_monotonicity(50, {1}, kN, 7);
  CHECK(report.pass);
}

TEST_CASE("checks are deterministic in the seed") {
  const auto a = spdmean::check_agh(10, kDims, kN, 123);
  const auto b = spdmean::check_agh(10, kDims, kN, 123);
  CHECK(a.to_line() == b.to_line());
  const auto c = spdmean::check_agh(10, kDims, kN, 124);
  CHECK(a.to_line() != c.to_line());
}

TEST_CASE("axiom suite produces ten reports and delegates P4/P7/P10") {
  const auto reports = spdmean::check_axioms(10, kDims, kN, 42);
  REQUIRE(reports.size() == 10);
  const char* expected[] = {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10"};
  for (int i = 0; i < 10; ++i) {
    CHECK(reports[static_cast<std::size_t>(i)].property == expected[i]);
    CHECK(reports[static_cast<std::size_t>(i)].pass);
  }

  const auto mono = spdmean::check_monotonicity(10, kDims, kN, 42);
  CHECK(reports[3].worst_slack == mono.worst_slack);
  CHECK(reports[3].failures == mono.failures);
}

TEST_CASE("report lines carry six fields and a full-precision slack") {
  const auto report = spdmean::check_agh(5, kDims, kN, 9);
  const std::string line = report.to_line();

  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) fields.push_back(item);
  REQUIRE(fields.size() == 6);
  CHECK(fields[0] == "agh");
  CHECK(fields[1] == "5");
  CHECK(fields[2] == "0");
  CHECK(std::strtod(fields[3].c_str(), nullptr) == report.worst_slack);
  CHECK(fields[4] == "9");
  CHECK(fields[5] == "true");
}

TEST_CASE("trivial equality cases hold with zero-level slack") {
  // zero perturbation: the two means coincide, margin is zero
  spdmean::SplitMix64 rng(55);
  spdmean::SpdTuple a;
  for (int i = 0; i < 3; ++i) a.push_back(spdmean::random_spd(2, 20.0, rng));
  const Weight w = Weight::uniform(3);
  const Matrix g1 = spdmean::solve_fixed_point(w, a).mean;
  const Matrix g2 = spdmean::solve_fixed_point(w, a).mean;
  CHECK(spdmean::loewner_margin(g1, g2) >= -1e-14);

  // concavity at t in {0, 1} is an equality
  for (double t : {0.0, 1.0}) {
    spdmean::SpdTuple b;
    for (int i = 0; i < 3; ++i) b.push_back(spdmean::random_spd(2, 20.0, rng));
    spdmean::SpdTuple mixed;
    for (int i = 0; i < 3; ++i)
      mixed.push_back(spdmean::symmetrize(t * a[static_cast<std::size_t>(i)] +
                                          (1.0 - t) * b[static_cast<std::size_t>(i)]));
    const Matrix lhs = spdmean::symmetrize(t * spdmean::solve_fixed_point(w, a).mean +
                                           (1.0 - t) * spdmean::solve_fixed_point(w, b).mean);
    CHECK(spdmean::loewner_margin(lhs, spdmean::solve_fixed_point(w, mixed).mean) >= -1e-9);
  }

  // all inputs equal: harmonic, least squares and arithmetic means coincide
  const Matrix p = spdmean::random_spd(3, 10.0, rng);
  const spdmean::SpdTuple same{p, p, p};
  const Matrix g = spdmean::solve_fixed_point(w, same).mean;
  CHECK(spdmean::spd_distance(g, spdmean::arithmetic_mean(w, same)) < 1e-9);
  CHECK(spdmean::spd_distance(g, spdmean::harmonic_mean(w, same)) < 1e-9);
}

TEST_CASE("P3 at n=3: all six permutations agree pairwise") {
  spdmean::SplitMix64 rng(60);
  spdmean::SpdTuple a;
  for (int i = 0; i < 3; ++i) a.push_back(spdmean::random_spd(2, 30.0, rng));
  Vector u(3);
  for (int i = 0; i < 3; ++i) u(i) = 0.1 + rng.next_double();
  const Weight w{Vector(u / u.sum())};

  std::vector<Matrix> means;
  int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& p : perm) {
    spdmean::SpdTuple ap{a[static_cast<std::size_t>(p[0])], a[static_cast<std::size_t>(p[1])],
                         a[static_cast<std::size_t>(p[2])]};
    const Weight wp{w[p[0]], w[p[1]], w[p[2]]};
    means.push_back(spdmean::solve_fixed_point(wp, ap).mean);
  }
  for (std::size_t i = 0; i < means.size(); ++i)
    for (std::size_t j = i + 1; j < means.size(); ++j)
      CHECK(spdmean::spd_distance(means[i], means[j]) <= 1e-8);
}

TEST_CASE("common scaling commutes with the mean and preserves comparisons") {
  spdmean::SplitMix64 rng(66);
  spdmean::SpdTuple a, b;
  for (int i = 0; i < 3; ++i) {
    a.push_back(spdmean::random_spd(2, 20.0, rng));
    const Matrix g = spdmean::random_matrix(2, 2, rng);
    b.push_back(spdmean::symmetrize(a.back() + g.transpose() * g));
  }
  const Weight w = Weight::uniform(3);
  const double c = 3.5;
  spdmean::SpdTuple ca, cb;
  for (int i = 0; i < 3; ++i) {
    ca.push_back(Matrix(c * a[static_cast<std::size_t>(i)]));
    cb.push_back(Matrix(c * b[static_cast<std::size_t>(i)]));
  }
  const Matrix ga = spdmean::solve_fixed_point(w, a).mean;
  const Matrix gca = spdmean::solve_fixed_point(w, ca).mean;
  CHECK(spdmean::spd_distance(gca, Matrix(c * ga)) <= 1e-8);
  CHECK(spdmean::loewner_leq(ga, spdmean::solve_fixed_point(w, b).mean, 1e-8));
  CHECK(spdmean::loewner_leq(gca, spdmean::solve_fixed_point(w, cb).mean, 1e-8));
}

// Heavy-tail stress: condition numbers at 1e4 amplify eigensolver roundoff,
// so this suite reports but does not gate.
TEST_CASE("stress: dedicated checks at condition cap 1e4" * doctest::may_fail()) {
  CHECK(spdmean::check_monotonicity(25, kDims, {3}, 42, 1e-8, 1e4).pass);
  CHECK(spdmean::check_agh(25, kDims, {3}, 42, 1e-8, 1e4).pass);
  CHECK(spdmean::check_concavity(25, kDims, {3}, 42, 1e-8, 1e4).pass);
  CHECK(spdmean::check_nonexpansive(25, kDims, {3}, 42, 1e-8, 1e4).pass);
}

TEST_CASE("exploratory: orthant (commuting) mean is jointly concave") {
  // On the positive orthant the least squares mean has the closed form
  // exp(sum_i w_i log a_i), so concavity reduces to the scalar inequality.
  // Exploratory coverage only; the SPD suite is the gating one.
  spdmean::SplitMix64 rng(70);
  const auto orthant_mean = [](const Weight& w, const std::vector<Vector>& pts) {
    Vector acc = Vector::Zero(pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      acc += w[static_cast<Eigen::Index>(i)] * pts[i].array().log().matrix();
    return Vector(acc.array().exp());
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> a, b, mixed;
    const double t = rng.next_double();
    for (int i = 0; i < 3; ++i) {
      Vector u(4), v(4);
      for (int j = 0; j < 4; ++j) {
        u(j) = std::exp(2.0 * rng.next_double() - 1.0);
        v(j) = std::exp(2.0 * rng.next_double() - 1.0);
      }
      a.push_back(u);
      b.push_back(v);
      mixed.push_back(Vector(t * u + (1.0 - t) * v));
    }
    const Weight w = Weight::uniform(3);
    const Vector lhs = t * orthant_mean(w, a) + (1.0 - t) * orthant_mean(w, b);
    const Vector rhs = orthant_mean(w, mixed);
    CHECK((rhs - lhs).minCoeff() >= -1e-12);
  }
}

TEST_CASE("walk convergence check on SPD and Euclidean instances") {
  const spdmean::SpdSpace spd;
  spdmean::WalkInstance<spdmean::SpdSpace> inst{Weight::uniform(3), corpus::trio2x2(),
                                                Matrix()};
  inst.reference = spdmean::solve_fixed_point(inst.w, inst.points).mean;
  const auto report = spdmean::check_walk_convergence(spd, {inst}, 10000, 8, 7);
  CHECK(report.pass);
  CHECK(report.property == "walk");

  const spdmean::EuclideanSpace euc;
  spdmean::WalkInstance<spdmean::EuclideanSpace> einst{Weight{0.3, 0.3, 0.4}, {}, Vector()};
  for (double v : {0.0, 1.0, 3.0}) einst.points.push_back(Vector::Constant(2, v));
  einst.reference = Vector::Zero(2);
  for (int i = 0; i < 3; ++i)
    einst.reference += einst.w[i] * einst.points[static_cast<std::size_t>(i)];
  CHECK(spdmean::check_walk_convergence(euc, {einst}, 10000, 8, 7).pass);

  const spdmean::OrthantSpace orth;
  spdmean::WalkInstance<spdmean::OrthantSpace> oinst{Weight{0.3, 0.3, 0.4}, {}, Vector()};
  for (double v : {0.5, 1.0, 3.0}) oinst.points.push_back(Vector::Constant(2, v));
  Vector log_mean = Vector::Zero(2);
  for (int i = 0; i < 3; ++i)
    log_mean += oinst.w[i] * oinst.points[static_cast<std::size_t>(i)].array().log().matrix();
  oinst.reference = log_mean.array().exp();
  CHECK(spdmean::check_walk_convergence(orth, {oinst}, 10000, 8, 7).pass);
}

TEST_CASE("walk convergence check validates its parameters") {
  const spdmean::SpdSpace spd;
  std::vector<spdmean::WalkInstance<spdmean::SpdSpace>> none;
  CHECK_THROWS_AS(spdmean::check_walk_convergence(spd, none, 10000, 8, 7),
                  spdmean::EmptyInput);
  CHECK_THROWS_AS(spdmean::check_monotonicity(0, kDims, kN, 1), spdmean::InvalidParameter);
}
