#include "bflab/curve_reconstruct.hpp"

#include <cmath>
#include <stdexcept>

namespace bflab {

std::vector<Vec3> binormal_velocity(const std::vector<Frame>& frames,
                                    const std::vector<Cplx>& u_at_x0) {
  if (frames.size() != u_at_x0.size())
    throw std::invalid_argument("binormal_velocity: one u value per frame required");
  std::vector<Vec3> out;
  out.reserve(frames.size());
  for (size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    const Cplx u = u_at_x0[i];
    // T_x = Re(conj(u) N) = Re(u) e1 + Im(u) e2.
    const Vec3 tx = f.e1 * u.real() + f.e2 * u.imag();
    out.push_back(cross(f.T, tx));
  }
  return out;
}

Curve reconstruct_curve(const FrameField& field, const Vec3& P, const Vec3& time_leg) {
  Curve c;
  c.t = field.t;
  c.grid = field.grid;
  c.points.resize(static_cast<size_t>(field.grid.n));
  const int s = field.grid.seed_index;
  const double h = field.grid.h;
  c.points[static_cast<size_t>(s)] = P + time_leg;
  for (int i = s; i + 1 < field.grid.n; ++i)
    c.points[static_cast<size_t>(i + 1)] =
        c.points[static_cast<size_t>(i)] + (field.at(i).T + field.at(i + 1).T) * (0.5 * h);
  for (int i = s; i > 0; --i)
    c.points[static_cast<size_t>(i - 1)] =
        c.points[static_cast<size_t>(i)] - (field.at(i).T + field.at(i - 1).T) * (0.5 * h);
  return c;
}

std::vector<double> corner_angles_from_curve(const Curve& curve,
                                             const std::vector<int>& corner_positions) {
  const double excl = 2.0 * std::sqrt(curve.t);  // half-width of the excluded core
  if (excl >= 0.5)
    throw std::invalid_argument(
        "corner_angles_from_curve: exclusion windows overlap, t too large");
  const XGrid& g = curve.grid;
  if (g.n < 3) throw std::invalid_argument("corner_angles_from_curve: grid too short");

  // Hann-weighted mean of the discrete tangent over (a, b); the smooth weight
  // suppresses the oscillatory 1/x tail of T near the corner core.
  auto mean_tangent = [&](double a, double b) {
    Vec3 acc{};
    double wsum = 0.0;
    for (int i = 0; i + 1 < g.n; ++i) {
      const double xm = g.x(i) + 0.5 * g.h;
      if (xm <= a || xm >= b) continue;
      const double u = (xm - a) / (b - a);
      const double w = std::sin(3.14159265358979323846 * u);
      const double ww = w * w;
      const Vec3 tan = (curve.points[static_cast<size_t>(i + 1)] -
                        curve.points[static_cast<size_t>(i)]) *
                       (1.0 / g.h);
      acc += tan * ww;
      wsum += ww;
    }
    if (wsum == 0.0)
      throw std::invalid_argument("corner_angles_from_curve: no samples in a side window");
    return normalized(acc * (1.0 / wsum));
  };

  std::vector<double> out;
  out.reserve(corner_positions.size());
  for (int j : corner_positions) {
    const Vec3 left = mean_tangent(j - 1.0 + excl, j - excl);
    const Vec3 right = mean_tangent(j + excl, j + 1.0 - excl);
    out.push_back(std::atan2(norm(cross(left, right)), dot(left, right)));
  }
  return out;
}

}  // namespace bflab
