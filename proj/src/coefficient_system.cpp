#include "bflab/coefficient_system.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace bflab {

namespace {

void check_window(const CoefficientState& state, const AlphaSequence& alphas) {
  if (state.j_min != alphas.j_min() ||
      static_cast<int>(state.a_tilde.size()) != alphas.size())
    throw std::invalid_argument("coefficient state and alphas use different index windows");
}

}  // namespace

CoefficientState initial_state(const AlphaSequence& alphas, double t) {
  if (!(t > 0.0)) throw std::domain_error("initial_state: t must be > 0");
  return CoefficientState{t, alphas.j_min(), alphas.values()};
}

std::int64_t resonance_frequency(int k, int j1, int j2, int j3) {
  if (k - j1 + j2 - j3 != 0)
    throw std::domain_error("resonance_frequency: k - j1 + j2 - j3 != 0");
  const auto q = [](int v) { return static_cast<std::int64_t>(v) * v; };
  return q(k) - q(j1) + q(j2) - q(j3);
}

std::int64_t max_resonance_frequency(int j_min, int j_max) {
  std::int64_t best = 0;
  for (int k = j_min; k <= j_max; ++k)
    for (int j1 = j_min; j1 <= j_max; ++j1) {
      if (j1 == k) continue;
      for (int j2 = j_min; j2 <= j_max; ++j2) {
        if (j2 == j1) continue;  // j3 == k
        const int j3 = k - j1 + j2;
        if (j3 < j_min || j3 > j_max) continue;
        const std::int64_t w = 2ll * (k - j1) * (k - j3);
        best = std::max(best, std::abs(w));
      }
    }
  return best;
}

std::vector<Cplx> gauged_rhs(double t, const CoefficientState& state,
                             const AlphaSequence& alphas) {
  if (!(t > 0.0)) throw std::domain_error("gauged_rhs: t must be > 0");
  check_window(state, alphas);

  const int j_min = state.j_min;
  const int n = static_cast<int>(state.a_tilde.size());
  const double log_sqrt_t = 0.5 * std::log(t);
  const double inv_4t = 1.0 / (4.0 * t);

  // |alpha_j|^2 per index.
  std::vector<double> a2(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) a2[i] = std::norm(alphas.values()[i]);

  // The per-term phase splits over index pairs,
  //   -omega/4t - Delta log sqrt(t)
  //     = -[(k^2-j1^2)/4t + (|a_j1|^2-|a_k|^2) L]
  //       -[(j2^2-j3^2)/4t + (|a_j3|^2-|a_j2|^2) L],
  // so exp(i phase) = pair_phase[k][j1] * pair_phase[j2][j3] with one n x n
  // table, pair_phase[a][b] = exp(-i[(a^2-b^2)/4t + (|alpha_b|^2-|alpha_a|^2) L]).
  std::vector<Cplx> pair_phase(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    const double ja = j_min + a;
    for (int b = 0; b < n; ++b) {
      const double jb = j_min + b;
      const double phase = -((ja * ja - jb * jb) * inv_4t + (a2[b] - a2[a]) * log_sqrt_t);
      pair_phase[static_cast<size_t>(a) * n + b] = std::polar(1.0, phase);
    }
  }

  std::vector<Cplx> rhs(static_cast<size_t>(n));
  const Cplx i_over_2t{0.0, 0.5 / t};

  for (int k = 0; k < n; ++k) {
    Cplx sum{0.0, 0.0};
    for (int i1 = 0; i1 < n; ++i1) {
      if (i1 == k) continue;
      const Cplx a1 = state.a_tilde[static_cast<size_t>(i1)];
      if (a1 == Cplx{0.0, 0.0}) continue;
      const Cplx pk1 = pair_phase[static_cast<size_t>(k) * n + i1];
      Cplx inner{0.0, 0.0};
      for (int i2 = 0; i2 < n; ++i2) {
        if (i2 == i1) continue;  // j3 == k
        const int i3 = k - i1 + i2;
        if (i3 < 0 || i3 >= n) continue;
        inner += pair_phase[static_cast<size_t>(i2) * n + i3] *
                 std::conj(state.a_tilde[static_cast<size_t>(i2)]) *
                 state.a_tilde[static_cast<size_t>(i3)];
      }
      sum += pk1 * a1 * inner;
    }
    const Cplx ak = state.a_tilde[static_cast<size_t>(k)];
    const double local = std::norm(ak) - a2[static_cast<size_t>(k)];
    rhs[static_cast<size_t>(k)] = i_over_2t * sum - i_over_2t * (local * ak);
  }
  return rhs;
}

double mass(const CoefficientState& state) {
  double m = 0.0;
  for (const Cplx& a : state.a_tilde) m += std::norm(a);
  return m;
}

std::vector<Cplx> ungauge(const CoefficientState& state, const AlphaSequence& alphas) {
  if (!(state.t > 0.0)) throw std::domain_error("ungauge: t must be > 0");
  check_window(state, alphas);
  const double log_sqrt_t = 0.5 * std::log(state.t);
  const double m = alphas.mass();
  std::vector<Cplx> out(state.a_tilde.size());
  for (size_t i = 0; i < out.size(); ++i) {
    const double phase = -(std::norm(alphas.values()[i]) - m) * log_sqrt_t;
    out[i] = std::polar(1.0, phase) * state.a_tilde[i];
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84,  0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

CoefficientState evolve(const CoefficientState& state, const AlphaSequence& alphas,
                        const EvolutionConfig& config) {
  check_window(state, alphas);
  if (!(config.t_start > 0.0) || !(config.t_end > 0.0))
    throw std::domain_error("evolve: the time interval must not cross t = 0");
  if (state.t != config.t_start)
    throw std::invalid_argument("evolve: state.t != config.t_start");
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0))
    throw std::invalid_argument("evolve: tolerances must be > 0");
  if (config.t_start == config.t_end) return state;

  const int n = static_cast<int>(state.a_tilde.size());
  const double direction = config.t_end > config.t_start ? 1.0 : -1.0;
  const double span = std::abs(config.t_end - config.t_start);
  const std::int64_t omega_max = max_resonance_frequency(state.j_min, state.j_max());
  const double pi = 3.14159265358979323846;

  // Phase cap: |d(omega/4t)| = omega_max dt / (4 t^2) <= pi/4.
  const auto phase_cap = [&](double t_low) {
    if (omega_max == 0) return span;
    return pi * t_low * t_low / static_cast<double>(omega_max);
  };

  CoefficientState cur = state;
  std::vector<Cplx> k_stage[7];
  std::vector<Cplx> y_tmp(static_cast<size_t>(n));

  double t = config.t_start;
  double dt = std::min({span / 64.0, 0.05 * t, phase_cap(std::min(t, t + direction * span))});
  dt = std::max(dt, 1e-14 * span);
  bool have_k0 = false;

  for (std::int64_t step = 0; step < config.max_steps; ++step) {
    const double remaining = std::abs(config.t_end - t);
    if (remaining <= 1e-15 * std::abs(config.t_end)) {
      cur.t = config.t_end;
      return cur;
    }
    dt = std::min(dt, remaining);
    const double t_low = std::min(t, t + direction * dt);
    dt = std::min(dt, phase_cap(t_low));
    const double h = direction * dt;

    if (!have_k0) {
      k_stage[0] = gauged_rhs(t, cur, alphas);
      have_k0 = true;
    }
    for (int s = 1; s < 7; ++s) {
      for (int i = 0; i < n; ++i) {
        Cplx acc = cur.a_tilde[static_cast<size_t>(i)];
        for (int q = 0; q < s; ++q)
          acc += h * kA[s][q] * k_stage[q][static_cast<size_t>(i)];
        y_tmp[static_cast<size_t>(i)] = acc;
      }
      const double ts = t + kC[s] * h;
      CoefficientState tmp{ts, cur.j_min, y_tmp};
      k_stage[s] = gauged_rhs(ts, tmp, alphas);
    }

    // 5th-order solution and embedded error estimate.
    double err = 0.0;
    std::vector<Cplx> y5(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Cplx acc5 = cur.a_tilde[static_cast<size_t>(i)];
      Cplx acc4 = cur.a_tilde[static_cast<size_t>(i)];
      for (int s = 0; s < 7; ++s) {
        acc5 += h * kB5[s] * k_stage[s][static_cast<size_t>(i)];
        acc4 += h * kB4[s] * k_stage[s][static_cast<size_t>(i)];
      }
      y5[static_cast<size_t>(i)] = acc5;
      const double sc = config.abs_tol +
                        config.rel_tol * std::max(std::abs(cur.a_tilde[static_cast<size_t>(i)]),
                                                  std::abs(acc5));
      const double e = std::abs(acc5 - acc4) / sc;
      err += e * e;
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {
      t += h;
      cur.t = t;
      cur.a_tilde = std::move(y5);
      k_stage[0] = std::move(k_stage[6]);  // FSAL
    }
    // On rejection k_stage[0] is still the derivative at the unchanged state.
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw EvolutionError("evolve: step size collapsed", cur);
  }
  throw EvolutionError("evolve: max_steps exceeded", cur);
}

CoefficientProvider make_coefficient_provider(const AlphaSequence& alphas,
                                              const CoefficientState& start,
                                              double rel_tol, double abs_tol) {
  auto cache = std::make_shared<CoefficientState>(start);
  return [cache, alphas, rel_tol, abs_tol](double t) {
    if (t != cache->t) {
      EvolutionConfig cfg;
      cfg.t_start = cache->t;
      cfg.t_end = t;
      cfg.rel_tol = rel_tol;
      cfg.abs_tol = abs_tol;
      *cache = evolve(*cache, alphas, cfg);
    }
    return ModeSet{cache->j_min, ungauge(*cache, alphas)};
  };
}

}  // namespace bflab
