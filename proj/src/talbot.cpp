#include "bflab/talbot.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bflab/initial_data.hpp"

namespace bflab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RationalTime::RationalTime(int p_, int q_) : p(p_), q(q_) {
  if (p < 1 || q < 1) throw std::domain_error("RationalTime: p, q must be positive");
  if (std::gcd(p, q) != 1) throw std::domain_error("RationalTime: gcd(p, q) must be 1");
  if (q % 2 == 0) throw std::domain_error("RationalTime: q must be odd");
}

Cplx gauss_sum(long p, long q, long m) {
  if (q < 1) throw std::domain_error("gauss_sum: q must be >= 1");
  Cplx sum{0.0, 0.0};
  for (long l = 0; l < q; ++l) {
    // Reduce the rational phase exactly in integers before the trig call.
    const long long r = (static_cast<long long>(p) * l * l +
                         static_cast<long long>(m) * l) % q;
    const long long rr = r < 0 ? r + q : r;
    sum += std::polar(1.0, 2.0 * kPi * static_cast<double>(rr) / static_cast<double>(q));
  }
  return sum;
}

double psi_hat_zero(int sides, double alpha) {
  if (sides < 3) throw std::domain_error("psi_hat_zero: need N >= 3");
  if (!(alpha >= 0.0)) throw std::domain_error("psi_hat_zero: alpha must be >= 0");
  return alpha * sides;
}

double predicted_angle(int sides, int q) {
  if (sides < 3) throw std::domain_error("predicted_angle: need N >= 3");
  if (q < 1) throw std::domain_error("predicted_angle: need q >= 1");
  return 2.0 * std::asin(std::pow(std::sin(kPi / sides), 1.0 / q));
}

double talbot_time(int sides, const RationalTime& rt) {
  if (sides < 3) throw std::domain_error("talbot_time: need N >= 3");
  return (1.0 / (2.0 * kPi * sides * sides)) * static_cast<double>(rt.p) / rt.q;
}

TalbotResult talbot_coefficients(int sides, const RationalTime& rt) {
  TalbotResult res;
  res.sides = sides;
  res.alpha = alpha_for_regular_polygon(sides);
  res.gauss.reserve(static_cast<size_t>(rt.q));
  for (int m = 0; m < rt.q; ++m) res.gauss.push_back(gauss_sum(rt.p, rt.q, m));
  res.coeff_magnitude = res.alpha / std::sqrt(static_cast<double>(rt.q));
  res.theta_pq = predicted_angle(sides, rt.q);
  return res;
}

std::vector<Cplx> regularized_psi(int sides, double alpha, double t,
                                  const std::vector<double>& xs, double sigma) {
  if (sides < 3) throw std::domain_error("regularized_psi: need N >= 3");
  if (!(sigma > 0.0)) throw std::domain_error("regularized_psi: sigma must be > 0");
  // Gaussian cutoff e^{-(2 pi N j sigma)^2 / 2} < 1e-12 beyond J.
  const double two_pi_n = 2.0 * kPi * sides;
  const long J = static_cast<long>(std::ceil(std::sqrt(2.0 * std::log(1e12)) /
                                             (two_pi_n * sigma))) + 1;
  const double amp = alpha * sides;
  std::vector<Cplx> out;
  out.reserve(xs.size());
  for (double x : xs) {
    Cplx sum{0.0, 0.0};
    for (long j = -J; j <= J; ++j) {
      const double k = two_pi_n * static_cast<double>(j);
      const double cutoff = std::exp(-0.5 * (k * sigma) * (k * sigma));
      sum += cutoff * std::polar(1.0, t * k * k + k * x);
    }
    out.push_back(amp * sum);
  }
  return out;
}

}  // namespace bflab
