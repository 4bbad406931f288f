#pragma once

#include <vector>

#include "bflab/vec.hpp"

namespace bflab {

// Rational time label p/q with gcd(p, q) = 1 and q odd (the even-q case is
// out of scope).
struct RationalTime {
  int p = 1;
  int q = 1;

  RationalTime(int p_, int q_);
};

// Generalized quadratic Gauss sum G(p, q, m) = sum_{l=0}^{q-1}
// e^{2 pi i (p l^2 + m l)/q}, summed in increasing l. |G| = sqrt(q) for odd q
// with gcd(p, q) = 1.
Cplx gauss_sum(long p, long q, long m);

// psi^(t, 0) = alpha N for the N-sided regular polygon, time independent.
double psi_hat_zero(int sides, double alpha);

// Skew-polygon angle at rational time: sin(theta_pq / 2) = sin(pi/N)^(1/q).
double predicted_angle(int sides, int q);

// Talbot normalization t_{p,q} = (1 / (2 pi N^2)) (p / q), which makes the
// j-sum phase e^{i t (2 pi N j)^2} = e^{2 pi i p j^2 / q} q-periodic.
double talbot_time(int sides, const RationalTime& rt);

struct TalbotResult {
  int sides = 0;
  double alpha = 0.0;               // corner strength of the regular polygon
  std::vector<Cplx> gauss;          // G(p, q, m), m = 0..q-1
  double coeff_magnitude = 0.0;     // |alpha_{l,m}| = alpha / sqrt(q)
  double theta_pq = 0.0;            // predicted skew-polygon angle
};

TalbotResult talbot_coefficients(int sides, const RationalTime& rt);

// Gaussian-regularized periodic field
//   alpha N sum_j e^{-(2 pi N j sigma)^2/2} e^{i t (2 pi N j)^2 + i (2 pi N j) x},
// with the j-range chosen so the dropped tail is < 1e-12.
std::vector<Cplx> regularized_psi(int sides, double alpha, double t,
                                  const std::vector<double>& xs, double sigma);

}  // namespace bflab
