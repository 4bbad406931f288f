#include "bflab/frame_transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bflab {

namespace {

// Rows of the frame as a 3x3 matrix.
struct Mat3 {
  double m[3][3];
};

Mat3 to_matrix(const Frame& f) {
  return Mat3{{{f.T.x, f.T.y, f.T.z}, {f.e1.x, f.e1.y, f.e1.z}, {f.e2.x, f.e2.y, f.e2.z}}};
}

Frame from_matrix(const Mat3& r) {
  return Frame{{r.m[0][0], r.m[0][1], r.m[0][2]},
               {r.m[1][0], r.m[1][1], r.m[1][2]},
               {r.m[2][0], r.m[2][1], r.m[2][2]}};
}

}  // namespace

Frame rotate_frame(const Frame& f, const Vec3& v) {
  const double theta = norm(v);
  if (theta == 0.0) return f;
  const Vec3 n = v * (1.0 / theta);
  const double s = std::sin(theta);
  const double c1 = 2.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta);  // 1 - cos

  // Rodrigues: Q = I + s [n]_x + c1 [n]_x^2.
  double q[3][3];
  const double nx = n.x, ny = n.y, nz = n.z;
  q[0][0] = 1.0 + c1 * (nx * nx - 1.0);
  q[0][1] = -s * nz + c1 * nx * ny;
  q[0][2] = s * ny + c1 * nx * nz;
  q[1][0] = s * nz + c1 * nx * ny;
  q[1][1] = 1.0 + c1 * (ny * ny - 1.0);
  q[1][2] = -s * nx + c1 * ny * nz;
  q[2][0] = -s * ny + c1 * nx * nz;
  q[2][1] = s * nx + c1 * ny * nz;
  q[2][2] = 1.0 + c1 * (nz * nz - 1.0);

  const Mat3 r = to_matrix(f);
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.m[i][j] = q[i][0] * r.m[0][j] + q[i][1] * r.m[1][j] + q[i][2] * r.m[2][j];
  return from_matrix(out);
}

double Frame::orthonormality_error() const {
  double e = 0.0;
  e = std::max(e, std::abs(dot(T, T) - 1.0));
  e = std::max(e, std::abs(dot(e1, e1) - 1.0));
  e = std::max(e, std::abs(dot(e2, e2) - 1.0));
  e = std::max(e, std::abs(dot(T, e1)));
  e = std::max(e, std::abs(dot(T, e2)));
  e = std::max(e, std::abs(dot(e1, e2)));
  e = std::max(e, std::abs(dot(T, cross(e1, e2)) - 1.0));
  return e;
}

Frame reorthonormalized(const Frame& f) {
  // R' = 0.5 (3I - R R^T) R, one Newton-Schulz sweep toward the polar factor.
  const Mat3 r = to_matrix(f);
  double g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g[i][j] = r.m[i][0] * r.m[j][0] + r.m[i][1] * r.m[j][1] + r.m[i][2] * r.m[j][2];
  double w[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i][j] = 0.5 * ((i == j ? 3.0 : 0.0) - g[i][j]);
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.m[i][j] = w[i][0] * r.m[0][j] + w[i][1] * r.m[1][j] + w[i][2] * r.m[2][j];
  return from_matrix(out);
}

XGrid XGrid::symmetric(double half_length, double h) {
  if (!(half_length > 0.0) || !(h > 0.0))
    throw std::invalid_argument("XGrid::symmetric: need positive extent and spacing");
  const int half = static_cast<int>(std::ceil(half_length / h));
  XGrid g;
  g.h = h;
  g.n = 2 * half + 1;
  g.x_min = -half * h;
  g.seed_index = half;
  return g;
}

Frame advance_frame_x(const Frame& f, Cplx u_mid, double h) {
  // dT/dx = Re(conj(u) N), dN/dx = -u T is the rotation with frame-coordinate
  // vector (0, Im u, -Re u); rotation angle over the step is |u| h.
  const Vec3 w{0.0, u_mid.imag() * h, -u_mid.real() * h};
  return reorthonormalized(rotate_frame(f, w));
}

namespace {

FrameField transport_x_impl(double t, const Frame& seed, const XGrid& grid,
                            const std::function<Cplx(double)>& u) {
  if (!(t > 0.0)) throw std::domain_error("transport_x: t must be > 0");
  if (!grid.valid()) throw std::invalid_argument("transport_x: invalid grid (seed must be a grid node)");
  FrameField field;
  field.t = t;
  field.grid = grid;
  field.frames.resize(static_cast<size_t>(grid.n));
  field.frames[static_cast<size_t>(grid.seed_index)] = reorthonormalized(seed);

  for (int i = grid.seed_index; i + 1 < grid.n; ++i) {
    const Cplx um = u(grid.x(i) + 0.5 * grid.h);
    field.frames[static_cast<size_t>(i + 1)] =
        advance_frame_x(field.frames[static_cast<size_t>(i)], um, grid.h);
  }
  for (int i = grid.seed_index; i > 0; --i) {
    const Cplx um = u(grid.x(i) - 0.5 * grid.h);
    field.frames[static_cast<size_t>(i - 1)] =
        advance_frame_x(field.frames[static_cast<size_t>(i)], um, -grid.h);
  }
  return field;
}

}  // namespace

FrameField transport_x(double t, const Frame& seed, const XGrid& grid, const ModeSet& modes) {
  return transport_x_impl(t, seed, grid, [&](double x) { return evaluate_u(t, x, modes); });
}

FrameField transport_x_callable(double t, const Frame& seed, const XGrid& grid,
                                const std::function<Cplx(double)>& u) {
  return transport_x_impl(t, seed, grid, u);
}

Frame transport_t(double x0, const Frame& seed, double t0, double t1,
                  const CoefficientProvider& provider, double mass,
                  const std::function<void(double, const Frame&)>& observer) {
  if (!(t0 > 0.0) || !(t1 > 0.0))
    throw std::domain_error("transport_t: the time interval must not cross t = 0");
  Frame f = reorthonormalized(seed);
  if (observer) observer(t0, f);
  if (t0 == t1) return f;

  const double t_min = std::min(t0, t1);
  const ModeSet probe = provider(t0);
  double d_max = 0.0;
  for (int j = probe.j_min; j <= probe.j_max(); ++j)
    d_max = std::max(d_max, std::abs(x0 - j));
  const double l1 = probe.l1_norm();

  // Fastest mode phase at x0 rotates at (x0-j)^2/(4 t^2); keep it under pi/8
  // per step, and keep the frame rotation per step small.
  const double pi = 3.14159265358979323846;
  double dt_cap = (d_max > 0.0) ? (pi / 8.0) * 4.0 * t_min * t_min / (d_max * d_max)
                                : std::abs(t1 - t0);
  const double u_sup = l1 / std::sqrt(t_min);
  const double ux_sup = l1 * d_max / (2.0 * t_min * std::sqrt(t_min));
  const double beta_sup = 0.5 * (u_sup * u_sup + mass / t_min);
  const double w_sup = std::sqrt(beta_sup * beta_sup + ux_sup * ux_sup);
  if (w_sup > 0.0) dt_cap = std::min(dt_cap, 0.05 / w_sup);
  dt_cap = std::min(dt_cap, std::abs(t1 - t0) / 16.0);

  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / dt_cap)));
  const double dt = (t1 - t0) / steps;

  double tau = t0;
  for (int s = 0; s < steps; ++s) {
    const double tm = t0 + (s + 0.5) * dt;
    const ModeSet modes = provider(tm);
    const Cplx u = evaluate_u(tm, x0, modes);
    const Cplx ux = evaluate_ux(tm, x0, modes);
    const double beta = 0.5 * (std::norm(u) - mass / tm);
    // Generator of T_t = Im(conj(u_x) N), N_t = -i u_x T + i beta N in frame
    // row coordinates: (beta, Re u_x, Im u_x).
    const Vec3 w{beta * dt, ux.real() * dt, ux.imag() * dt};
    f = reorthonormalized(rotate_frame(f, w));
    tau = t0 + (s + 1) * dt;
    if (observer) observer(tau, f);
  }
  return f;
}

namespace {

struct TailBin {
  Vec3 mean_T{};
  CVec3 mean_N{};
  double mean_s = 0.0;  // mean of 1/<x>
  int count = 0;
};

// Average T (and optionally a complex field) over four bins on the outer half
// of the beyond-corner tail, then extrapolate linearly in s = 1/<x> to s = 0
// with two disjoint stencils.
template <typename Value>
struct Extrapolated {
  Value limit_a, limit_b;
};

double corner_extent(const AlphaSequence& alphas, bool positive_side) {
  const auto corners = alphas.corner_positions();
  if (corners.empty()) return 0.0;
  return positive_side ? static_cast<double>(corners.back())
                       : static_cast<double>(corners.front());
}

}  // namespace

namespace detail {

// Shared two-stencil tail extrapolation. values[i] pairs with grid point i.
template <typename V>
static void tail_extrapolate(const FrameField& field, const std::vector<V>& values,
                             double c_pos, double c_neg, V& plus_a, V& plus_b,
                             V& minus_a, V& minus_b) {
  const XGrid& g = field.grid;
  auto side = [&](bool positive, V& out_a, V& out_b) {
    const double c = positive ? c_pos : c_neg;
    const double edge = positive ? g.x_max() : g.x_min;
    const double span = std::abs(edge - c);
    // Outer half of the beyond-corner tail, in four bins.
    struct Bin {
      V sum{};
      double sum_s = 0.0;
      int count = 0;
    };
    Bin bins[4];
    const double start = c + (positive ? 0.5 * span : -0.5 * span);
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      const double along = positive ? (x - start) : (start - x);
      if (along < 0.0) continue;
      const double frac = along / (0.5 * span);
      int b = static_cast<int>(frac * 4.0);
      if (b < 0) continue;
      if (b > 3) b = 3;
      bins[b].sum += values[static_cast<size_t>(i)];
      bins[b].sum_s += 1.0 / (1.0 + std::abs(x));
      bins[b].count += 1;
    }
    for (const Bin& b : bins)
      if (b.count == 0)
        throw std::invalid_argument("tangent_limits: tail too short for octant averaging");
    auto extrap = [&](const Bin& outer, const Bin& inner) {
      const double so = outer.sum_s / outer.count;
      const double si = inner.sum_s / inner.count;
      const V vo = outer.sum * (1.0 / outer.count);
      const V vi = inner.sum * (1.0 / inner.count);
      // limit = (vo * si - vi * so) / (si - so)
      return (vo * si - vi * so) * (1.0 / (si - so));
    };
    out_a = extrap(bins[3], bins[1]);
    out_b = extrap(bins[2], bins[0]);
  };
  side(true, plus_a, plus_b);
  side(false, minus_a, minus_b);
}

}  // namespace detail

AsymptoticLimits tangent_limits(const FrameField& field, const AlphaSequence& alphas) {
  const double c_pos = corner_extent(alphas, true);
  const double c_neg = corner_extent(alphas, false);
  if (field.grid.x_max() < c_pos + 10.0 || field.grid.x_min > c_neg - 10.0)
    throw std::invalid_argument(
        "tangent_limits: grid must extend >= 10 beyond the outermost corner on each side");

  std::vector<Vec3> tangents(static_cast<size_t>(field.grid.n));
  for (int i = 0; i < field.grid.n; ++i) tangents[static_cast<size_t>(i)] = field.at(i).T;

  Vec3 pa, pb, ma, mb;
  detail::tail_extrapolate(field, tangents, c_pos, c_neg, pa, pb, ma, mb);

  AsymptoticLimits lim;
  lim.T_plus = normalized((pa + pb) * 0.5);
  lim.T_minus = normalized((ma + mb) * 0.5);
  lim.error_estimate = std::max(norm(pa - pb), norm(ma - mb));
  return lim;
}

std::vector<CVec3> modulated_normal(const FrameField& field, double mass) {
  const double sqrt_t = std::sqrt(field.t);
  std::vector<CVec3> out(static_cast<size_t>(field.grid.n));
  for (int i = 0; i < field.grid.n; ++i) {
    const double x = field.grid.x(i);
    const Cplx phase = std::polar(1.0, mass * std::log((1.0 + std::abs(x)) / sqrt_t));
    out[static_cast<size_t>(i)] = phase * field.at(i).N();
  }
  return out;
}

TildeModulatedNormal modulated_normal_tilde(const FrameField& field,
                                            const AlphaSequence& alphas) {
  const double sqrt_t = std::sqrt(field.t);
  TildeModulatedNormal out;
  out.values.resize(static_cast<size_t>(field.grid.n));
  out.skipped.assign(static_cast<size_t>(field.grid.n), 0);
  for (int i = 0; i < field.grid.n; ++i) {
    const double x = field.grid.x(i);
    double phase = 0.0;
    bool singular = false;
    for (int r = alphas.j_min(); r <= alphas.j_max(); ++r) {
      const double a2 = std::norm(alphas.alpha(r));
      if (a2 == 0.0) continue;
      const double d = std::abs(x - r);
      if (d < 1e-9) {
        singular = true;
        break;
      }
      phase += a2 * std::log(d / sqrt_t);
    }
    if (singular) {
      out.skipped[static_cast<size_t>(i)] = 1;
    } else {
      out.values[static_cast<size_t>(i)] = std::polar(1.0, phase) * field.at(i).N();
    }
  }
  return out;
}

AsymptoticLimits normal_limits(const FrameField& field, double mass,
                               const AlphaSequence& alphas) {
  const double c_pos = corner_extent(alphas, true);
  const double c_neg = corner_extent(alphas, false);
  if (field.grid.x_max() < c_pos + 10.0 || field.grid.x_min > c_neg - 10.0)
    throw std::invalid_argument(
        "normal_limits: grid must extend >= 10 beyond the outermost corner on each side");

  const std::vector<CVec3> nm = modulated_normal(field, mass);
  CVec3 pa, pb, ma, mb;
  detail::tail_extrapolate(field, nm, c_pos, c_neg, pa, pb, ma, mb);

  // Symmetric re-orthonormalization of (Re, Im) to the nearest pair of unit
  // orthogonal vectors.
  auto fix = [](const CVec3& v) {
    Vec3 p = v.real(), q = v.imag();
    for (int sweep = 0; sweep < 3; ++sweep) {
      const double gpp = dot(p, p), gqq = dot(q, q), gpq = dot(p, q);
      const Vec3 np = p * (0.5 * (3.0 - gpp)) - q * (0.5 * gpq);
      const Vec3 nq = q * (0.5 * (3.0 - gqq)) - p * (0.5 * gpq);
      p = np;
      q = nq;
    }
    return CVec3{p, q};
  };

  AsymptoticLimits lim;
  lim.N_plus = fix((pa + pb) * 0.5);
  lim.N_minus = fix((ma + mb) * 0.5);
  lim.error_estimate = std::max(norm(pa - pb), norm(ma - mb));
  return lim;
}

double max_grid_spacing(double t, double x_extent, double u_sup) {
  const double pi = 3.14159265358979323846;
  double h = 2.0 * pi * t / (5.0 * std::max(x_extent, 1.0));
  if (u_sup > 0.0) h = std::min(h, 0.1 / u_sup);
  return h;
}

}  // namespace bflab
