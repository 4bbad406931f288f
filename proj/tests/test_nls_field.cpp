#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bflab/nls_field.hpp"

using namespace bflab;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

ModeSet single_mode(double alpha) { return ModeSet{0, {Cplx{alpha, 0.0}}}; }

// Residual of the field built from fixed ModeSets on a (t, x) grid of given
// resolution; used for the refinement studies.
double residual_at(double t_center, double dt, double x_lo, double x_hi, double h,
                   const std::vector<ModeSet>& snapshots_at, double mass) {
  const std::vector<double> times = {t_center - dt, t_center, t_center + dt};
  const int nx = static_cast<int>(std::round((x_hi - x_lo) / h)) + 1;
  return nls_residual(times, linspace(x_lo, x_hi, nx), snapshots_at, mass);
}

}  // namespace

TEST_CASE("evaluate_u single-mode identities") {
  const double alpha = 0.7;
  const ModeSet m = single_mode(alpha);
  for (double t : {0.05, 0.3, 1.0}) {
    CHECK(std::abs(evaluate_u(t, 0.0, m) - Cplx{alpha / std::sqrt(t), 0.0}) < 1e-15);
    for (double x : {-2.3, 0.4, 7.9})
      CHECK(std::abs(evaluate_u(t, x, m) - self_similar_u(alpha, t, x)) < 1e-15);
  }
  CHECK_THROWS_AS(evaluate_u(0.0, 0.0, m), std::domain_error);
  CHECK_THROWS_AS(self_similar_u(0.5, -1.0, 0.0), std::domain_error);
}

TEST_CASE("evaluate_u is linear in the amplitudes") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ModeSet a{-2, {}}, b{-2, {}}, sum{-2, {}};
    for (int i = 0; i < 5; ++i) {
      a.amplitudes.emplace_back(d(rng), d(rng));
      b.amplitudes.emplace_back(d(rng), d(rng));
      sum.amplitudes.push_back(a.amplitudes.back() + b.amplitudes.back());
    }
    const double t = 0.2 + 0.1 * trial;
    const double x = 3.0 * d(rng);
    CHECK(std::abs(evaluate_u(t, x, sum) - evaluate_u(t, x, a) - evaluate_u(t, x, b)) <
          1e-13);
  }
}

TEST_CASE("evaluate_ux matches a centered finite difference at second order") {
  ModeSet m{-1, {Cplx{0.4, 0.1}, Cplx{-0.2, 0.3}, Cplx{0.5, 0.0}}};
  const double t = 0.3;
  for (double x : {-1.7, 0.25, 2.0}) {
    const Cplx exact = evaluate_ux(t, x, m);
    auto fd = [&](double h) {
      return (evaluate_u(t, x + h, m) - evaluate_u(t, x - h, m)) / (2.0 * h);
    };
    const double e1 = std::abs(fd(1e-3) - exact);
    const double e2 = std::abs(fd(5e-4) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
  // Single mode: u_x(t, 0) = 0 and |u_x| = alpha |x| / (2 t sqrt(t)).
  const ModeSet s = single_mode(0.6);
  CHECK(std::abs(evaluate_ux(0.4, 0.0, s)) == 0.0);
  for (double x : {0.5, -3.0})
    CHECK(std::abs(evaluate_ux(0.4, x, s)) ==
          doctest::Approx(0.6 * std::abs(x) / (2.0 * 0.4 * std::sqrt(0.4))).epsilon(1e-13));
}

TEST_CASE("self-similar field modulus and scaling invariance") {
  const double alpha = 0.45;
  for (double t : {0.1, 0.7})
    for (double x : {-4.0, 0.0, 2.5})
      CHECK(std::abs(self_similar_u(alpha, t, x)) ==
            doctest::Approx(alpha / std::sqrt(t)).epsilon(1e-14));
  CHECK(self_similar_u(alpha, 1.0, 0.0) == Cplx{alpha, 0.0});
  // lambda u_alpha(lambda^2 t, lambda x) = u_alpha(t, x): the self-similar
  // family is the fixed point of the scaling map.
  const double lambda = 1.9;
  for (double t : {0.2, 0.9})
    for (double x : {-1.1, 0.8, 3.0})
      CHECK(std::abs(lambda * self_similar_u(alpha, lambda * lambda * t, lambda * x) -
                     self_similar_u(alpha, t, x)) < 1e-14);
}

TEST_CASE("scaling maps ansatz fields to ansatz fields on rescaled corners") {
  // u_lambda(t,x) = lambda u(lambda^2 t, lambda x) turns corners at integers
  // into corners at j/lambda with the same amplitudes: checked pointwise.
  const ModeSet m{0, {Cplx{0.3, 0.0}, Cplx{0.2, -0.1}}};
  const double lambda = 2.0;
  auto rescaled = [&](double t, double x) {
    // sum_j A_j e^{i(x - j/lambda)^2 lambda^2 / 4 lambda^2 t} ...
    Cplx sum{};
    for (size_t i = 0; i < m.amplitudes.size(); ++i) {
      const double corner = static_cast<double>(m.j_min + static_cast<int>(i)) / lambda;
      const double d = x - corner;
      sum += m.amplitudes[i] * std::polar(1.0 / std::sqrt(t), lambda * lambda * d * d / (4.0 * lambda * lambda * t));
    }
    return sum;
  };
  for (double t : {0.3, 0.8})
    for (double x : {-0.7, 0.1, 1.3}) {
      const Cplx lhs = lambda * evaluate_u(lambda * lambda * t, lambda * x, m);
      CHECK(std::abs(lhs - rescaled(t, x)) < 1e-13);
    }
}

TEST_CASE("galilean transform basics") {
  const ModeSet m{0, {Cplx{0.5, 0.0}, Cplx{0.3, 0.2}}};
  const std::vector<double> times = {0.4, 0.5};
  const std::vector<double> xs = linspace(-2.0, 2.0, 41);
  const std::vector<ModeSet> snaps = {m, m};

  // eta = 0 is the identity.
  const auto id = galilean_transform(times, xs, snaps, 0.0);
  for (size_t s = 0; s < times.size(); ++s)
    for (size_t i = 0; i < xs.size(); ++i)
      CHECK(std::abs(id[s][i] - evaluate_u(times[s], xs[i], snaps[s])) < 1e-14);

  // |u_eta(t,x)| = |u(t, x - 2 eta t)|.
  const double eta = 0.8;
  const auto tr = galilean_transform(times, xs, snaps, eta);
  for (size_t s = 0; s < times.size(); ++s)
    for (size_t i = 0; i < xs.size(); ++i)
      CHECK(std::abs(std::abs(tr[s][i]) -
                     std::abs(evaluate_u(times[s], xs[i] - 2 * eta * times[s], snaps[s]))) <
            1e-13);
}

TEST_CASE("sampled galilean transform requires exact node hits") {
  const ModeSet m = single_mode(0.5);
  const std::vector<double> sample_xs = linspace(-2.0, 2.0, 41);  // h = 0.1
  const std::vector<double> eval_xs = linspace(-1.0, 1.0, 21);
  const double t = 0.5;
  std::vector<std::vector<Cplx>> samples(1);
  for (double x : sample_xs) samples[0].push_back(evaluate_u(t, x, m));

  // 2 eta t = 0.2 = 2 h: every shifted point is a sample node.
  const auto ok = galilean_transform_sampled({t}, eval_xs, sample_xs, samples, 0.2);
  const auto ref = galilean_transform({t}, eval_xs, {m}, 0.2);
  for (size_t i = 0; i < eval_xs.size(); ++i)
    CHECK(std::abs(ok[0][i] - ref[0][i]) < 1e-12);

  // 2 eta t = 0.13: between nodes -> argument error.
  CHECK_THROWS_AS(galilean_transform_sampled({t}, eval_xs, sample_xs, samples, 0.13),
                  std::invalid_argument);
  // Shifted points leave the sampled grid -> argument error.
  CHECK_THROWS_AS(galilean_transform_sampled({t}, sample_xs, sample_xs, samples, 10.0),
                  std::invalid_argument);
}

TEST_CASE("nls_residual: single mode converges at second order") {
  const double alpha = 0.5;
  const std::vector<ModeSet> snaps(3, single_mode(alpha));
  const double mass = alpha * alpha;
  const double r0 = residual_at(1.0, 0.02, -2.0, 2.0, 0.05, snaps, mass);
  const double r1 = residual_at(1.0, 0.01, -2.0, 2.0, 0.025, snaps, mass);
  const double r2 = residual_at(1.0, 0.005, -2.0, 2.0, 0.0125, snaps, mass);
  CHECK(r0 / r1 == doctest::Approx(4.0).epsilon(0.10));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("nls_residual: frozen unequal coefficients do not satisfy the equation") {
  // A_j(t) = alpha_j frozen with two unequal corners misses the nonlinear
  // coupling; the residual converges to a nonzero limit.
  const ModeSet frozen{0, {Cplx{0.4, 0.0}, Cplx{0.25, 0.0}}};
  const std::vector<ModeSet> snaps(3, frozen);
  const double mass = 0.4 * 0.4 + 0.25 * 0.25;
  const double r1 = residual_at(0.5, 0.01, -1.0, 2.0, 0.02, snaps, mass);
  const double r2 = residual_at(0.5, 0.005, -1.0, 2.0, 0.01, snaps, mass);
  CHECK(r2 > 0.01);
  CHECK(r2 / r1 > 0.5);  // not converging to zero
}

TEST_CASE("nls_residual argument validation") {
  const ModeSet m = single_mode(0.5);
  CHECK_THROWS_AS(nls_residual({1.0, 1.1}, linspace(-1, 1, 11), {m, m}, 0.25),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      nls_residual({1.0, 1.1, 1.25}, linspace(-1, 1, 11), {m, m, m}, 0.25),
      std::invalid_argument);
}
