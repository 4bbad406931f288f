#include "bflab/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bflab {

namespace {
constexpr double kPi = std::numbers::pi;
}

AlphaSequence::AlphaSequence(int j_min, std::vector<Cplx> values)
    : j_min_(j_min), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("AlphaSequence: empty window");
  mass_ = 0.0;
  for (const Cplx& a : values_) mass_ += std::norm(a);
}

std::vector<int> AlphaSequence::corner_positions() const {
  std::vector<int> out;
  for (int j = j_min(); j <= j_max(); ++j)
    if (std::abs(alpha(j)) > 0.0) out.push_back(j);
  return out;
}

AlphaSequence AlphaSequence::single(Cplx alpha, int position) {
  return AlphaSequence(position, {alpha});
}

AlphaSequence alpha_sequence_from_corners(const std::vector<CornerSpec>& corners) {
  if (corners.empty()) throw std::invalid_argument("corner list is empty");
  int j_min = corners.front().position, j_max = corners.front().position;
  for (const CornerSpec& c : corners) {
    j_min = std::min(j_min, c.position);
    j_max = std::max(j_max, c.position);
  }
  std::vector<Cplx> values(static_cast<size_t>(j_max - j_min + 1), Cplx{0.0, 0.0});
  for (const CornerSpec& c : corners)
    values[static_cast<size_t>(c.position - j_min)] = Cplx{alpha_from_angle(c.theta), 0.0};
  return AlphaSequence(j_min, std::move(values));
}

double alpha_from_angle(double theta) {
  if (!(theta > 0.0) || theta > kPi)
    throw std::domain_error("alpha_from_angle: theta must lie in (0, pi]");
  const double s = std::sin(theta / 2.0);
  // s in (0, 1]; log(s) <= 0, so the radicand is >= 0 up to rounding.
  const double r = -(2.0 / kPi) * std::log(s);
  return std::sqrt(std::max(r, 0.0));
}

double angle_from_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw std::domain_error("angle_from_alpha: alpha must be >= 0");
  return 2.0 * std::asin(std::exp(-kPi * alpha * alpha / 2.0));
}

double turning_angle_from_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw std::domain_error("turning_angle_from_alpha: alpha must be >= 0");
  // pi - 2 asin(x) = 2 acos(x), stable as alpha -> 0.
  return 2.0 * std::acos(std::exp(-kPi * alpha * alpha / 2.0));
}

double jump_energy(double alpha) {
  if (!(alpha >= 0.0)) throw std::domain_error("jump_energy: alpha must be >= 0");
  return 4.0 * (-std::expm1(-kPi * alpha * alpha));
}

double energy_at_zero(const AlphaSequence& alphas) {
  double sum = 0.0;
  for (int j = alphas.j_min(); j <= alphas.j_max(); ++j)
    sum += jump_energy(std::abs(alphas.alpha(j)));
  return sum;
}

double alpha_for_regular_polygon(int sides) {
  if (sides < 3) throw std::domain_error("alpha_for_regular_polygon: need N >= 3");
  const double s = std::sin(kPi / sides);
  return std::sqrt(-(2.0 / kPi) * std::log(s));
}

}  // namespace bflab
