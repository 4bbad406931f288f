#include "bflab/nls_field.hpp"

#include <cmath>
#include <stdexcept>

namespace bflab {

double ModeSet::l1_norm() const {
  double s = 0.0;
  for (const Cplx& a : amplitudes) s += std::abs(a);
  return s;
}

Cplx evaluate_u(double t, double x, const ModeSet& modes) {
  if (!(t > 0.0)) throw std::domain_error("evaluate_u: t must be > 0");
  const double inv_4t = 1.0 / (4.0 * t);
  const double inv_sqrt_t = 1.0 / std::sqrt(t);
  Cplx sum{0.0, 0.0};
  for (size_t i = 0; i < modes.amplitudes.size(); ++i) {
    const double d = x - (modes.j_min + static_cast<int>(i));
    sum += modes.amplitudes[i] * std::polar(inv_sqrt_t, d * d * inv_4t);
  }
  return sum;
}

Cplx evaluate_ux(double t, double x, const ModeSet& modes) {
  if (!(t > 0.0)) throw std::domain_error("evaluate_ux: t must be > 0");
  const double inv_4t = 1.0 / (4.0 * t);
  const double inv_sqrt_t = 1.0 / std::sqrt(t);
  Cplx sum{0.0, 0.0};
  for (size_t i = 0; i < modes.amplitudes.size(); ++i) {
    const double d = x - (modes.j_min + static_cast<int>(i));
    const Cplx phase = std::polar(inv_sqrt_t, d * d * inv_4t);
    sum += modes.amplitudes[i] * Cplx{0.0, d / (2.0 * t)} * phase;
  }
  return sum;
}

Cplx self_similar_u(double alpha, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("self_similar_u: t must be > 0");
  return std::polar(alpha / std::sqrt(t), x * x / (4.0 * t));
}

std::vector<FieldSample> sample_field(double t, const std::vector<double>& xs,
                                      const ModeSet& modes) {
  std::vector<FieldSample> out;
  out.reserve(xs.size());
  for (double x : xs)
    out.push_back({x, evaluate_u(t, x, modes), evaluate_ux(t, x, modes)});
  return out;
}

std::vector<std::vector<Cplx>> galilean_transform(const std::vector<double>& times,
                                                  const std::vector<double>& xs,
                                                  const std::vector<ModeSet>& snapshots,
                                                  double eta) {
  if (times.size() != snapshots.size())
    throw std::invalid_argument("galilean_transform: one ModeSet per time required");
  std::vector<std::vector<Cplx>> out(times.size());
  for (size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    out[s].reserve(xs.size());
    for (double x : xs) {
      const Cplx pre = std::polar(1.0, -eta * eta * t + eta * x);
      out[s].push_back(pre * evaluate_u(t, x - 2.0 * eta * t, snapshots[s]));
    }
  }
  return out;
}

std::vector<std::vector<Cplx>> galilean_transform_sampled(
    const std::vector<double>& times, const std::vector<double>& eval_xs,
    const std::vector<double>& sample_xs,
    const std::vector<std::vector<Cplx>>& samples, double eta) {
  if (times.size() != samples.size())
    throw std::invalid_argument("galilean_transform_sampled: one sample row per time");
  if (sample_xs.size() < 2)
    throw std::invalid_argument("galilean_transform_sampled: need >= 2 sample nodes");
  const double h = sample_xs[1] - sample_xs[0];
  std::vector<std::vector<Cplx>> out(times.size());
  for (size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    const double shift = 2.0 * eta * t;
    out[s].reserve(eval_xs.size());
    for (double x : eval_xs) {
      const double src = x - shift;
      const double steps = (src - sample_xs.front()) / h;
      const double rounded = std::round(steps);
      if (std::abs(steps - rounded) > 1e-9)
        throw std::invalid_argument(
            "galilean_transform_sampled: shifted point falls between samples; "
            "evaluate analytically from coefficients instead");
      const long idx = static_cast<long>(rounded);
      if (idx < 0 || idx >= static_cast<long>(sample_xs.size()))
        throw std::invalid_argument(
            "galilean_transform_sampled: shifted point outside the sampled grid");
      const Cplx pre = std::polar(1.0, -eta * eta * t + eta * x);
      out[s].push_back(pre * samples[s][static_cast<size_t>(idx)]);
    }
  }
  return out;
}

double nls_residual(const std::vector<double>& times, const std::vector<double>& xs,
                    const std::vector<ModeSet>& snapshots, double mass) {
  if (times.size() != snapshots.size())
    throw std::invalid_argument("nls_residual: one ModeSet per time required");
  std::vector<std::vector<Cplx>> u(times.size());
  for (size_t s = 0; s < times.size(); ++s) {
    u[s].reserve(xs.size());
    for (double x : xs) u[s].push_back(evaluate_u(times[s], x, snapshots[s]));
  }
  return nls_residual(times, xs, u, mass);
}

double nls_residual(const std::vector<double>& times, const std::vector<double>& xs,
                    const std::vector<std::vector<Cplx>>& u, double mass) {
  if (times.size() < 3) throw std::invalid_argument("nls_residual: need >= 3 snapshots");
  if (times.size() != u.size())
    throw std::invalid_argument("nls_residual: one sample row per time required");
  if (xs.size() < 3) throw std::invalid_argument("nls_residual: need >= 3 grid points");
  const double dt = times[1] - times[0];
  for (size_t s = 1; s + 1 < times.size(); ++s)
    if (std::abs((times[s + 1] - times[s]) - dt) > 1e-12 * std::abs(dt))
      throw std::invalid_argument("nls_residual: time snapshots must be uniform");
  const double h = xs[1] - xs[0];
  for (size_t i = 1; i + 1 < xs.size(); ++i)
    if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-12 * std::abs(h))
      throw std::invalid_argument("nls_residual: x grid must be uniform");

  double sup = 0.0;
  for (size_t s = 1; s + 1 < times.size(); ++s) {
    const double t = times[s];
    for (size_t i = 1; i + 1 < xs.size(); ++i) {
      const Cplx dudt = (u[s + 1][i] - u[s - 1][i]) / (2.0 * dt);
      const Cplx dxx = (u[s][i + 1] - 2.0 * u[s][i] + u[s][i - 1]) / (h * h);
      const Cplx r = Cplx{0.0, 1.0} * dudt + dxx +
                     0.5 * (std::norm(u[s][i]) - mass / t) * u[s][i];
      sup = std::max(sup, std::abs(r));
    }
  }
  return sup;
}

}  // namespace bflab
