#pragma once

#include <vector>

#include "bflab/vec.hpp"

namespace bflab {

// Complex corner strengths {alpha_j} on an integer index window
// [j_min, j_max], with mass M = sum_j |alpha_j|^2 accumulated left to right
// so the value is bit-reproducible across runs.
class AlphaSequence {
 public:
  AlphaSequence(int j_min, std::vector<Cplx> values);

  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(values_.size()) - 1; }
  int size() const { return static_cast<int>(values_.size()); }
  bool contains(int j) const { return j >= j_min() && j <= j_max(); }

  Cplx alpha(int j) const { return values_[static_cast<size_t>(j - j_min_)]; }
  const std::vector<Cplx>& values() const { return values_; }

  double mass() const { return mass_; }

  // Indices with |alpha_j| > 0, in increasing order.
  std::vector<int> corner_positions() const;

  static AlphaSequence single(Cplx alpha, int position = 0);

 private:
  int j_min_;
  std::vector<Cplx> values_;
  double mass_;
};

// Corner angle theta in (0, pi] at integer position j; theta = pi means no
// corner (alpha = 0).
struct CornerSpec {
  double theta = 0.0;
  int position = 0;
};

AlphaSequence alpha_sequence_from_corners(const std::vector<CornerSpec>& corners);

// sin(theta/2) = exp(-pi alpha^2 / 2), inverted: alpha(theta).
// Domain: theta in (0, pi]. Accuracy degrades as theta -> pi where the map
// collapses to alpha = 0 at double precision.
double alpha_from_angle(double theta);

// theta(alpha) = 2 asin(exp(-pi alpha^2 / 2)), alpha >= 0.
double angle_from_alpha(double alpha);

// Turning angle phi of the tangent across a corner of strength alpha:
// cos(phi) = 2 exp(-pi alpha^2) - 1, i.e. phi = pi - angle_from_alpha(alpha).
double turning_angle_from_alpha(double alpha);

// |A+ - A-|^2 = 4 (1 - exp(-pi alpha^2)), the per-corner contribution to the
// spectral energy at the singular time. Equals 2 (1 - cos(phi)) with phi the
// turning angle above.
double jump_energy(double alpha);

// 4 sum_j (1 - exp(-pi |alpha_j|^2)); strictly below 4 pi M for M > 0.
double energy_at_zero(const AlphaSequence& alphas);

// Corner strength of a regular planar polygon with N >= 3 sides:
// sin(pi/N) = exp(-pi alpha^2 / 2).
double alpha_for_regular_polygon(int sides);

}  // namespace bflab
