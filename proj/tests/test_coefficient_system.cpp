#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bflab/coefficient_system.hpp"
#include "bflab/initial_data.hpp"

using namespace bflab;

namespace {

// Independent brute-force oracle. It enumerates ALL constrained quadruples
// (j1, j2, j3) with j1 - j2 + j3 = k, including the resonant ones, applies
// the gauge factors explicitly per term, and adds the resonant counter-term
// in closed form:
//
//   i dA~_k/dt = -(1/2t) sum_ALL e^{-i omega/4t} e^{-i Delta log sqrt t}
//                         A~_j1 conj(A~_j2) A~_j3
//               + (1/2t) (2 sum_m |A~_m|^2 - |alpha_k|^2) A~_k.
//
// Splitting sum_ALL into resonant (j1 = k or j3 = k, gauge factors = 1)
// and nonresonant parts reproduces the production right-hand side for any
// state, so the two must agree to rounding.
std::vector<Cplx> oracle_rhs(double t, const CoefficientState& state,
                             const AlphaSequence& alphas) {
  const int j_min = state.j_min;
  const int j_max = state.j_max();
  const double L = std::log(std::sqrt(t));
  double inst_mass = 0.0;
  for (const Cplx& a : state.a_tilde) inst_mass += std::norm(a);

  std::vector<Cplx> out(state.a_tilde.size());
  for (int k = j_min; k <= j_max; ++k) {
    Cplx total{0.0, 0.0};
    for (int j1 = j_min; j1 <= j_max; ++j1)
      for (int j2 = j_min; j2 <= j_max; ++j2)
        for (int j3 = j_min; j3 <= j_max; ++j3) {
          if (j1 - j2 + j3 != k) continue;
          const double omega = double(k) * k - double(j1) * j1 + double(j2) * j2 -
                               double(j3) * j3;
          const double delta = std::norm(alphas.alpha(j1)) - std::norm(alphas.alpha(j2)) +
                               std::norm(alphas.alpha(j3)) - std::norm(alphas.alpha(k));
          const Cplx gauge = std::exp(Cplx{0.0, -(omega / (4.0 * t) + delta * L)});
          total += gauge * state.at(j1) * std::conj(state.at(j2)) * state.at(j3);
        }
    const Cplx ak = state.at(k);
    const Cplx i_rhs = (-1.0 / (2.0 * t)) * total +
                       (1.0 / (2.0 * t)) * (2.0 * inst_mass - std::norm(alphas.alpha(k))) * ak;
    out[static_cast<size_t>(k - j_min)] = Cplx{0.0, -1.0} * i_rhs;  // dA~/dt = -i (i dA~/dt)
  }
  return out;
}

AlphaSequence random_alphas(std::mt19937& rng, int j_min, int j_max, double amp) {
  std::uniform_real_distribution<double> a(0.0, amp), ph(0.0, 6.2831853);
  std::vector<Cplx> v(static_cast<size_t>(j_max - j_min + 1));
  for (auto& c : v) c = std::polar(a(rng), ph(rng));
  return AlphaSequence(j_min, v);
}

CoefficientState random_state(std::mt19937& rng, double t, int j_min, int j_max,
                              double amp) {
  std::uniform_real_distribution<double> a(0.0, amp), ph(0.0, 6.2831853);
  CoefficientState s;
  s.t = t;
  s.j_min = j_min;
  s.a_tilde.resize(static_cast<size_t>(j_max - j_min + 1));
  for (auto& c : s.a_tilde) c = std::polar(a(rng), ph(rng));
  return s;
}

}  // namespace

TEST_CASE("resonance_frequency factors as 2(k-j1)(k-j3) on the constraint") {
  CHECK(resonance_frequency(0, 1, 2, 1) == 2);
  CHECK(resonance_frequency(1, 1, 2, 2) == 0);
  CHECK_THROWS_AS(resonance_frequency(0, 1, 2, 3), std::domain_error);

  for (int k = -10; k <= 10; ++k)
    for (int j1 = -10; j1 <= 10; ++j1)
      for (int j2 = -10; j2 <= 10; ++j2) {
        const int j3 = k - j1 + j2;
        if (j3 < -10 || j3 > 10) continue;
        const auto w = resonance_frequency(k, j1, j2, j3);
        CHECK(w == 2ll * (k - j1) * (k - j3));
        if (j1 == k || j3 == k) CHECK(w == 0);
      }
}

TEST_CASE("single nonzero mode is a fixed point of the gauged system") {
  const AlphaSequence alphas(-2, {Cplx{}, Cplx{}, Cplx{0.7, 0.0}, Cplx{}, Cplx{}});
  CoefficientState s = initial_state(alphas, 0.3);
  // Any unimodular rotation of A~_0 with |A~_0| = |alpha_0| is also fixed.
  s.a_tilde[2] = std::polar(0.7, 1.1);
  const auto rhs = gauged_rhs(0.3, s, alphas);
  for (const Cplx& r : rhs) CHECK(std::abs(r) == 0.0);
}

TEST_CASE("gauged_rhs conserves mass differentially for any state") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto alphas = random_alphas(rng, -4, 4, 0.8);
    const auto s = random_state(rng, 0.17 + 0.2 * trial, -4, 4, 0.9);
    const auto rhs = gauged_rhs(s.t, s, alphas);
    double ddt_mass = 0.0;
    for (size_t i = 0; i < rhs.size(); ++i)
      ddt_mass += 2.0 * (std::conj(s.a_tilde[i]) * rhs[i]).real();
    // Scale: |rhs| ~ l1^3 / t.
    CHECK(std::abs(ddt_mass) < 1e-12);
  }
}

TEST_CASE("gauged_rhs equals the brute-force quadruple oracle") {
  // The spec's worked case: two modes alpha_0 = alpha_1 = 0.5 at t = 1.
  {
    const AlphaSequence alphas(0, {Cplx{0.5, 0}, Cplx{0.5, 0}});
    const CoefficientState s = initial_state(alphas, 1.0);
    const auto a = gauged_rhs(1.0, s, alphas);
    const auto b = oracle_rhs(1.0, s, alphas);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
  // Random windows and random (generally off-shell) states.
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto alphas = random_alphas(rng, -5, 5, 0.7);
    const auto s = random_state(rng, 0.05 + 1.2 * (trial / 100.0), -5, 5, 0.7);
    const auto a = gauged_rhs(s.t, s, alphas);
    const auto b = oracle_rhs(s.t, s, alphas);
    for (size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("errors: nonpositive time and window mismatch") {
  const AlphaSequence alphas(0, {Cplx{0.5, 0}, Cplx{0.5, 0}});
  const CoefficientState s = initial_state(alphas, 1.0);
  CHECK_THROWS_AS(gauged_rhs(0.0, s, alphas), std::domain_error);
  const AlphaSequence other(0, {Cplx{0.5, 0}});
  CHECK_THROWS_AS(gauged_rhs(1.0, s, other), std::invalid_argument);
  CHECK_THROWS_AS(ungauge(CoefficientState{-1.0, 0, {Cplx{}}},
                          AlphaSequence(0, {Cplx{}})),
                  std::domain_error);
}

TEST_CASE("evolve keeps the single mode exactly self-similar") {
  const AlphaSequence alphas = AlphaSequence::single(Cplx{0.5, 0.0});
  CoefficientState s = initial_state(alphas, 1.0);
  EvolutionConfig cfg;
  cfg.t_start = 1.0;
  cfg.t_end = 0.05;
  const auto end = evolve(s, alphas, cfg);
  CHECK(end.t == 0.05);
  CHECK(std::abs(end.a_tilde[0] - Cplx{0.5, 0.0}) < 1e-10);
}

TEST_CASE("two adjacent corners on their minimal window are a fixed point") {
  // With the window exactly {0, 1} every constrained triple is resonant
  // (NR_k is empty), so the truncated gauged system is constant.
  const AlphaSequence alphas(0, {Cplx{0.3, 0}, Cplx{0.3, 0}});
  CoefficientState s = initial_state(alphas, 1.0);
  EvolutionConfig cfg;
  cfg.t_start = 1.0;
  cfg.t_end = 0.1;
  const auto down = evolve(s, alphas, cfg);
  CHECK(std::abs(mass(down) - alphas.mass()) / alphas.mass() < 1e-8);
  for (size_t i = 0; i < down.a_tilde.size(); ++i)
    CHECK(std::abs(down.a_tilde[i] - s.a_tilde[i]) < 1e-10);
}

TEST_CASE("evolve conserves mass and reverses on a coupled window") {
  // Two corners padded with empty modes: nonresonant couplings are active
  // and the padding modes pick up amplitude.
  std::vector<Cplx> v(8, Cplx{0, 0});
  v[3] = Cplx{0.3, 0.0};
  v[4] = Cplx{0.3, 0.0};
  const AlphaSequence alphas(-3, v);
  CoefficientState s = initial_state(alphas, 1.0);
  EvolutionConfig fwd;
  fwd.t_start = 1.0;
  fwd.t_end = 0.1;
  const auto down = evolve(s, alphas, fwd);
  CHECK(std::abs(mass(down) - alphas.mass()) / alphas.mass() < 1e-8);
  // The coupling really moved amplitude into the padding.
  double outside = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    if (i != 3 && i != 4) outside += std::abs(down.a_tilde[i]);
  CHECK(outside > 1e-4);

  EvolutionConfig bwd;
  bwd.t_start = 0.1;
  bwd.t_end = 1.0;
  const auto back = evolve(down, alphas, bwd);
  for (size_t i = 0; i < back.a_tilde.size(); ++i)
    CHECK(std::abs(back.a_tilde[i] - s.a_tilde[i]) < 10.0 * 1e-9);
}

TEST_CASE("evolve failure modes") {
  const AlphaSequence alphas(0, {Cplx{0.3, 0}, Cplx{0.3, 0}});
  CoefficientState s = initial_state(alphas, 1.0);
  EvolutionConfig cfg;
  cfg.t_start = 1.0;
  cfg.t_end = -0.5;
  CHECK_THROWS_AS(evolve(s, alphas, cfg), std::domain_error);

  cfg.t_end = 0.05;
  cfg.max_steps = 3;
  bool caught = false;
  try {
    evolve(s, alphas, cfg);
  } catch (const EvolutionError& e) {
    caught = true;
    CHECK(e.last_state.t > 0.05);
    CHECK(e.last_state.t <= 1.0);
  }
  CHECK(caught);
}

TEST_CASE("ungauge phases") {
  const AlphaSequence alphas(0, {Cplx{0.4, 0}, Cplx{0.25, 0.1}});
  CoefficientState s = initial_state(alphas, 1.0);
  // t = 1: log sqrt(1) = 0, identity.
  auto a = ungauge(s, alphas);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == s.a_tilde[i]);

  // Single mode: exponent |alpha_0|^2 - M vanishes for all t.
  const AlphaSequence one = AlphaSequence::single(Cplx{0.6, 0.2});
  CoefficientState s1 = initial_state(one, 0.37);
  auto a1 = ungauge(s1, one);
  CHECK(a1[0] == s1.a_tilde[0]);

  // |A_j| = |A~_j| always.
  std::mt19937 rng(5);
  const auto alphas2 = random_alphas(rng, -3, 3, 0.8);
  const auto s2 = random_state(rng, 0.23, -3, 3, 0.8);
  const auto a2 = ungauge(s2, alphas2);
  for (size_t i = 0; i < a2.size(); ++i)
    CHECK(std::abs(a2[i]) == doctest::Approx(std::abs(s2.a_tilde[i])).epsilon(1e-15));
}

TEST_CASE("gauged coefficients flatten towards t = 0") {
  std::vector<Cplx> v(8, Cplx{0, 0});
  v[3] = Cplx{0.3, 0.0};
  v[4] = Cplx{0.3, 0.0};
  const AlphaSequence alphas(-3, v);
  CoefficientState s = initial_state(alphas, 0.8);
  auto at = [&](double t) {
    EvolutionConfig cfg;
    cfg.t_start = s.t;
    cfg.t_end = t;
    return evolve(s, alphas, cfg);
  };
  auto diff = [&](const CoefficientState& a, const CoefficientState& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.a_tilde.size(); ++i)
      d = std::max(d, std::abs(a.a_tilde[i] - b.a_tilde[i]));
    return d;
  };
  const auto s04 = at(0.4), s02 = at(0.2), s01 = at(0.1), s005 = at(0.05);
  const double d1 = diff(s04, s02);   // |A~(0.4) - A~(0.2)|
  const double d2 = diff(s02, s01);   // |A~(0.2) - A~(0.1)|
  const double d3 = diff(s01, s005);  // |A~(0.1) - A~(0.05)|
  CHECK(d2 < d1);
  CHECK(d3 < d2);
}
