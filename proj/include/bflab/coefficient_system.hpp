#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bflab/initial_data.hpp"
#include "bflab/nls_field.hpp"
#include "bflab/vec.hpp"

namespace bflab {

// Gauged coefficients {A~_j(t)} on the AlphaSequence window. The gauge
// removes the unimodular phase exp(-i (|alpha_j|^2 - M) log sqrt(t)) from
// A_j(t), so A~_j varies slowly and tends to alpha_j as t -> 0.
struct CoefficientState {
  double t = 0.0;
  int j_min = 0;
  std::vector<Cplx> a_tilde;

  int j_max() const { return j_min + static_cast<int>(a_tilde.size()) - 1; }
  Cplx at(int j) const { return a_tilde[static_cast<size_t>(j - j_min)]; }
};

struct EvolutionConfig {
  double t_start = 1.0;
  double t_end = 0.05;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::int64_t max_steps = 4'000'000;
};

class EvolutionError : public std::runtime_error {
 public:
  EvolutionError(const std::string& what, CoefficientState last)
      : std::runtime_error(what), last_state(std::move(last)) {}
  CoefficientState last_state;
};

// A~_j(t_0) = alpha_j, the t -> 0 limit used to seed integrations.
CoefficientState initial_state(const AlphaSequence& alphas, double t);

// omega = k^2 - j1^2 + j2^2 - j3^2 on the constraint k - j1 + j2 - j3 = 0,
// where it factors as 2 (k - j1)(k - j3).
std::int64_t resonance_frequency(int k, int j1, int j2, int j3);

// Right-hand side of the gauged system
//   i dA~_k/dt = -(1/2t) sum_{NR_k} e^{-i omega/4t}
//                e^{-i (|a_j1|^2-|a_j2|^2+|a_j3|^2-|a_k|^2) log sqrt(t)}
//                A~_j1 conj(A~_j2) A~_j3
//              + (1/2t) (|A~_k|^2 - |alpha_k|^2) A~_k,
// NR_k = { j1 - j2 + j3 = k in the window, j1 != k, j3 != k }. Triples that
// leave the window are dropped; the truncated system still conserves
// sum |A~_j|^2 exactly. Accumulation is in lexicographic (j1, j2) order.
std::vector<Cplx> gauged_rhs(double t, const CoefficientState& state,
                             const AlphaSequence& alphas);

// sum_j |A~_j|^2, left to right.
double mass(const CoefficientState& state);

// A_j(t) = e^{-i (|alpha_j|^2 - M) log sqrt(t)} A~_j(t).
std::vector<Cplx> ungauge(const CoefficientState& state, const AlphaSequence& alphas);

// Adaptive embedded Dormand-Prince 5(4) integration of gauged_rhs from
// state.t = config.t_start to config.t_end (either direction, both > 0).
// Steps are additionally capped so the fastest retained oscillation phase
// omega_max/(4t) advances by at most pi/4 per step.
CoefficientState evolve(const CoefficientState& state, const AlphaSequence& alphas,
                        const EvolutionConfig& config);

// Largest |omega| over nonresonant in-window quadruples; 0 if none.
std::int64_t max_resonance_frequency(int j_min, int j_max);

// Incremental provider of ungauged amplitudes A(t): keeps an internal state
// and evolves it to each requested time (cheap for monotone sequences).
CoefficientProvider make_coefficient_provider(const AlphaSequence& alphas,
                                              const CoefficientState& start,
                                              double rel_tol = 1e-10,
                                              double abs_tol = 1e-12);

}  // namespace bflab
