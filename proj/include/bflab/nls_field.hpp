#pragma once

#include <functional>
#include <vector>

#include "bflab/vec.hpp"

namespace bflab {

// Ungauged mode amplitudes A_j(t) on an integer index window, the data the
// ansatz field u(t,x) = sum_j A_j e^{i(x-j)^2/4t} / sqrt(t) is built from.
struct ModeSet {
  int j_min = 0;
  std::vector<Cplx> amplitudes;

  int j_max() const { return j_min + static_cast<int>(amplitudes.size()) - 1; }
  double l1_norm() const;
};

struct FieldSample {
  double x = 0.0;
  Cplx u{};
  Cplx ux{};
};

// Supplies ungauged amplitudes A(t) at arbitrary t > 0.
using CoefficientProvider = std::function<ModeSet(double)>;

// u(t,x) = sum_j A_j e^{i(x-j)^2/4t} / sqrt(t), summed in increasing j.
Cplx evaluate_u(double t, double x, const ModeSet& modes);

// Analytic x-derivative: sum_j A_j (i(x-j)/2t) e^{i(x-j)^2/4t} / sqrt(t).
Cplx evaluate_ux(double t, double x, const ModeSet& modes);

// One-corner self-similar field alpha e^{i x^2/4t} / sqrt(t).
Cplx self_similar_u(double alpha, double t, double x);

std::vector<FieldSample> sample_field(double t, const std::vector<double>& xs,
                                      const ModeSet& modes);

// u_eta(t,x) = e^{-i eta^2 t + i eta x} u(t, x - 2 eta t), evaluated
// analytically from per-snapshot coefficients (one ModeSet per time).
std::vector<std::vector<Cplx>> galilean_transform(const std::vector<double>& times,
                                                  const std::vector<double>& xs,
                                                  const std::vector<ModeSet>& snapshots,
                                                  double eta);

// Same transform from bare samples on sample_xs; every shifted point
// x - 2 eta t of the evaluation grid must land exactly on a sample node
// (no interpolation), otherwise argument error.
std::vector<std::vector<Cplx>> galilean_transform_sampled(
    const std::vector<double>& times, const std::vector<double>& eval_xs,
    const std::vector<double>& sample_xs,
    const std::vector<std::vector<Cplx>>& samples, double eta);

// Discrete sup-norm of i D_t u + D_xx u + (1/2)(|u|^2 - M/t) u with centered
// second-order differences, evaluated at interior snapshots and interior x.
// times must be uniform and hold >= 3 entries; snapshots align with times.
double nls_residual(const std::vector<double>& times, const std::vector<double>& xs,
                    const std::vector<ModeSet>& snapshots, double mass);

// Same residual from precomputed samples u[time][x].
double nls_residual(const std::vector<double>& times, const std::vector<double>& xs,
                    const std::vector<std::vector<Cplx>>& u_samples, double mass);

}  // namespace bflab
