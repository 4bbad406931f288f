#pragma once

#include <vector>

#include "bflab/frame_transport.hpp"
#include "bflab/vec.hpp"

namespace bflab {

// Filament slice chi(t, x) on the frame grid, arclength-parametrized up to
// O(h^2).
struct Curve {
  double t = 0.0;
  XGrid grid;
  std::vector<Vec3> points;
};

// (T ^ T_x)(tau_i, x0) with T_x = Re(conj(u) N) evaluated analytically from
// u(tau_i, x0); one entry per frame sample.
std::vector<Vec3> binormal_velocity(const std::vector<Frame>& frames,
                                    const std::vector<Cplx>& u_at_x0);

// chi(t, x) = P + time_leg + int_{x0}^{x} T(t, s) ds by composite trapezoid
// from the seed node outward.
Curve reconstruct_curve(const FrameField& field, const Vec3& P,
                        const Vec3& time_leg = Vec3{});

// Tangent turning angle at each listed corner, measured between Hann-weighted
// average tangents over the adjacent unit intervals, excluding a neighborhood
// of total width 4 sqrt(t) around every corner (the self-similar smoothing
// scale). Throws when the exclusion windows overlap (t too large).
std::vector<double> corner_angles_from_curve(const Curve& curve,
                                             const std::vector<int>& corner_positions);

}  // namespace bflab
