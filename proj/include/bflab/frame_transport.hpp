#pragma once

#include <functional>
#include <vector>

#include "bflab/initial_data.hpp"
#include "bflab/nls_field.hpp"
#include "bflab/vec.hpp"

namespace bflab {

// Orthonormal right-handed frame (T, e1, e2); N = e1 + i e2 is derived.
struct Frame {
  Vec3 T{1.0, 0.0, 0.0};
  Vec3 e1{0.0, 1.0, 0.0};
  Vec3 e2{0.0, 0.0, 1.0};

  CVec3 N() const { return CVec3{e1, e2}; }

  // Largest deviation from unit norms, pairwise orthogonality and
  // right-handedness.
  double orthonormality_error() const;

  static Frame canonical() { return Frame{}; }
};

// Nearest-orthogonal projection (one Newton-Schulz sweep on the frame rows).
Frame reorthonormalized(const Frame& f);

// Frame update R <- exp([v]_x) R for a rotation vector v expressed in frame
// row coordinates (components along T, e1, e2). Exact rotation, no
// projection applied.
Frame rotate_frame(const Frame& f, const Vec3& v);

// Uniform grid x_min + i*h, i = 0..n-1, with the transport seed at
// seed_index.
struct XGrid {
  double x_min = 0.0;
  double h = 0.0;
  int n = 0;
  int seed_index = 0;

  double x(int i) const { return x_min + i * h; }
  double x_max() const { return x(n - 1); }
  bool valid() const { return n >= 2 && h > 0.0 && seed_index >= 0 && seed_index < n; }

  static XGrid symmetric(double half_length, double h);
};

struct FrameField {
  double t = 0.0;
  XGrid grid;
  std::vector<Frame> frames;

  const Frame& at(int i) const { return frames[static_cast<size_t>(i)]; }
};

// One exact-rotation step of the x-system
//   T_x = Re(conj(u) N),  N_x = -u T,
// with u frozen at the step midpoint value u_mid.
Frame advance_frame_x(const Frame& f, Cplx u_mid, double h);

// March the frame across the grid at fixed t, evaluating u analytically from
// the modes at each step midpoint. Frames stay orthonormal to rounding.
FrameField transport_x(double t, const Frame& seed, const XGrid& grid, const ModeSet& modes);

// Same marcher with an arbitrary coefficient function u(x) (synthetic tests).
FrameField transport_x_callable(double t, const Frame& seed, const XGrid& grid,
                                const std::function<Cplx(double)>& u);

// Transport in t at fixed x0 by the exact-rotation midpoint scheme for
//   T_t = Im(conj(u_x) N),  N_t = -i u_x T + (i/2)(|u|^2 - M/t) N.
// The observer, when set, is called at every accepted node (including both
// endpoints) with (tau, frame) and can be used to accumulate time integrals.
Frame transport_t(double x0, const Frame& seed, double t0, double t1,
                  const CoefficientProvider& provider, double mass,
                  const std::function<void(double, const Frame&)>& observer = {});

// Asymptotic limits of T and of the modulated normal N_M as x -> +-infinity,
// estimated by Richardson extrapolation in 1/<x>.
struct AsymptoticLimits {
  Vec3 T_plus{}, T_minus{};
  CVec3 N_plus{}, N_minus{};
  double error_estimate = 0.0;
};

// T limits from the outermost grid octants on each side. Requires the grid
// to extend >= 10 beyond the outermost corner on each side.
AsymptoticLimits tangent_limits(const FrameField& field, const AlphaSequence& alphas);

// N_M(t,x) = e^{i M log(<x>/sqrt(t))} N(t,x), <x> = 1 + |x|.
std::vector<CVec3> modulated_normal(const FrameField& field, double mass);

// Corner-wise modulation e^{i sum_{r != x} |alpha_r|^2 log(|x-r|/sqrt(t))} N.
// Grid points within 1e-9 of a corner are skipped and flagged.
struct TildeModulatedNormal {
  std::vector<CVec3> values;
  std::vector<char> skipped;
};
TildeModulatedNormal modulated_normal_tilde(const FrameField& field,
                                            const AlphaSequence& alphas);

// N_M limits, extrapolated like tangent_limits and re-orthonormalized so
// Re/Im parts are unit and orthogonal.
AsymptoticLimits normal_limits(const FrameField& field, double mass,
                               const AlphaSequence& alphas);

// Grid resolution rule: h small enough that |u| h stays below 0.1 and the
// ansatz phase advances < pi/4 per step at the domain edge.
double max_grid_spacing(double t, double x_extent, double u_sup);

}  // namespace bflab
