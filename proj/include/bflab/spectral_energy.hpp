#pragma once

#include <utility>
#include <vector>

#include "bflab/frame_transport.hpp"
#include "bflab/initial_data.hpp"
#include "bflab/nls_field.hpp"
#include "bflab/vec.hpp"

namespace bflab {

// Truncation of the infinite Fourier integral: the integrand is multiplied by
// a raised-cosine window equal to 1 on the core |x| <= (1 - taper_fraction) L
// and decaying to 0 at |x| = L. Every stationary point x = j +- 4 pi t xi of
// the completed-square phase must lie inside the core with the given margin.
struct TaperConfig {
  double L = 0.0;
  double taper_fraction = 0.2;
  double margin = 10.0;

  double core() const { return (1.0 - taper_fraction) * L; }
  double weight(double x) const;

  // Smallest L whose core reaches corner_extent + 4 pi t xi_max + margin.
  double minimal_L(double t, double corner_extent, double xi_max) const;
  // Throws std::invalid_argument naming the minimal L when violated.
  void validate(double t, double corner_extent, double xi_max) const;
};

// Samples of a transform on a frequency window [k, k+1] and its energy
// Xi_k = int |values|^2 dxi (composite Simpson).
struct SpectralWindow {
  int k = 0;
  std::vector<double> xi;
  std::vector<CVec3> values;
  double energy = 0.0;
};

// Trapezoid quadrature of w(x) f(x) e^{+2 pi i x xi} over the grid, one
// result per requested xi. The integrand samples f(x_i) align with the grid.
std::vector<CVec3> oscillatory_transform(const XGrid& grid,
                                         const std::vector<CVec3>& integrand,
                                         const TaperConfig& taper,
                                         const std::vector<double>& xi);

// T_x^(t, xi) = int e^{2 pi i x xi} Re(conj(u) N)(t, x) dx, with
// T_x = Re(conj(u) N) built analytically from the modes (no numeric
// differentiation of T).
std::vector<CVec3> fourier_transform_Tx(const FrameField& field, const ModeSet& modes,
                                        const std::vector<double>& xi,
                                        const TaperConfig& taper);

// Same with integrand N_x = -u T.
std::vector<CVec3> fourier_transform_Nx(const FrameField& field, const ModeSet& modes,
                                        const std::vector<double>& xi,
                                        const TaperConfig& taper);

// Streaming variant of fourier_transform_Tx for long domains: marches the
// frame across the grid in chunks and accumulates the quadrature without
// materializing the frame field. Chunks are reduced in a fixed order, so the
// result is independent of the thread count.
std::vector<CVec3> streaming_transform_Tx(double t, const ModeSet& modes,
                                          const Frame& seed, const XGrid& grid,
                                          const TaperConfig& taper,
                                          const std::vector<double>& xi,
                                          int n_threads = 0);

// Uniform Simpson nodes on [k, k+1] (odd count >= 33); shifted by half a step
// when a node would fall on a lattice point 4 pi t xi in Z.
std::vector<double> window_nodes(int k, int samples_per_window, double t);

// Composite Simpson of |values|^2 over uniformly spaced xi samples.
double windowed_energy(const std::vector<double>& xi, const std::vector<CVec3>& values);
double windowed_energy(const SpectralWindow& window);

SpectralWindow make_spectral_window(int k, std::vector<double> xi,
                                    std::vector<CVec3> values);

// The t = 0 window energy, identical for every k (the transform is periodic
// in xi at the singular time): the Plancherel value 4 sum (1 - e^{-pi a^2}).
double windowed_energy_at_zero(const AlphaSequence& alphas);

// Median of the upper-half k's and the max deviation from it.
struct PlateauEstimate {
  double limit = 0.0;
  double spread = 0.0;
};
PlateauEstimate plateau_estimate(const std::vector<std::pair<int, double>>& energies);

// Frequencies xi* in [xi_lo, xi_hi] with d(4 pi xi*, Z/t) = 0.
std::vector<double> spike_locations(double t, double xi_lo, double xi_hi);

// Two-corner near-lattice model at 4 pi xi = n/t + d:
//   i conj(A_0) A_n e^{i n^2/4t} (T^inf - T^-inf) (e^{i n d/2} - 1) e^{i d/2} log(d/2).
CVec3 two_corner_spike_model(double t, int n, double d, Cplx A0, Cplx An,
                             const Vec3& T_plus, const Vec3& T_minus);

}  // namespace bflab
