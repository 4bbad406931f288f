#include "bflab/spectral_energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bflab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double corner_extent_abs(const ModeSet& modes) {
  double e = 0.0;
  for (size_t i = 0; i < modes.amplitudes.size(); ++i)
    if (std::abs(modes.amplitudes[i]) > 0.0)
      e = std::max(e, std::abs(static_cast<double>(modes.j_min + static_cast<int>(i))));
  return e;
}

}  // namespace

double TaperConfig::weight(double x) const {
  const double a = std::abs(x);
  const double c = core();
  if (a <= c) return 1.0;
  if (a >= L) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (a - c) / (L - c)));
}

double TaperConfig::minimal_L(double t, double corner_extent, double xi_max) const {
  return (corner_extent + 4.0 * kPi * t * xi_max + margin) / (1.0 - taper_fraction);
}

void TaperConfig::validate(double t, double corner_extent, double xi_max) const {
  if (!(taper_fraction > 0.0) || taper_fraction > 0.25)
    throw std::invalid_argument("TaperConfig: taper_fraction must lie in (0, 0.25]");
  if (!(margin >= 0.0)) throw std::invalid_argument("TaperConfig: margin must be >= 0");
  const double need = minimal_L(t, corner_extent, xi_max);
  if (L < need) {
    std::ostringstream os;
    os << "TaperConfig: L = " << L
       << " leaves stationary points x = j + 4 pi t xi inside the taper; minimal L = "
       << need;
    throw std::invalid_argument(os.str());
  }
}

std::vector<CVec3> oscillatory_transform(const XGrid& grid,
                                         const std::vector<CVec3>& integrand,
                                         const TaperConfig& taper,
                                         const std::vector<double>& xi) {
  if (static_cast<int>(integrand.size()) != grid.n)
    throw std::invalid_argument("oscillatory_transform: integrand size != grid size");
  if (grid.x_min > -taper.L || grid.x_max() < taper.L)
    throw std::invalid_argument("oscillatory_transform: grid does not cover [-L, L]");

  int i0 = 0;
  while (i0 < grid.n && grid.x(i0) < -taper.L) ++i0;
  int i1 = grid.n - 1;
  while (i1 >= 0 && grid.x(i1) > taper.L) --i1;
  const int m = i1 - i0 + 1;
  if (m < 2) throw std::invalid_argument("oscillatory_transform: empty quadrature range");

  // Taper and trapezoid end-weights applied once.
  std::vector<CVec3> wf(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    double w = taper.weight(grid.x(i0 + i));
    if (i == 0 || i == m - 1) w *= 0.5;
    wf[static_cast<size_t>(i)] = integrand[static_cast<size_t>(i0 + i)] * Cplx{w, 0.0};
  }

  std::vector<CVec3> out(xi.size());
  for (size_t q = 0; q < xi.size(); ++q) {
    const Cplx rot = std::polar(1.0, kTwoPi * grid.h * xi[q]);
    CVec3 acc{};
    Cplx phase{};
    for (int i = 0; i < m; ++i) {
      if ((i & 4095) == 0)  // resync the rotor recurrence
        phase = std::polar(1.0, kTwoPi * grid.x(i0 + i) * xi[q]);
      acc += wf[static_cast<size_t>(i)] * phase;
      phase *= rot;
    }
    out[q] = acc * Cplx{grid.h, 0.0};
  }
  return out;
}

std::vector<CVec3> fourier_transform_Tx(const FrameField& field, const ModeSet& modes,
                                        const std::vector<double>& xi,
                                        const TaperConfig& taper) {
  double xi_max = 0.0;
  for (double q : xi) xi_max = std::max(xi_max, std::abs(q));
  taper.validate(field.t, corner_extent_abs(modes), xi_max);

  std::vector<CVec3> integrand(static_cast<size_t>(field.grid.n));
  for (int i = 0; i < field.grid.n; ++i) {
    const Cplx u = evaluate_u(field.t, field.grid.x(i), modes);
    const Frame& f = field.at(i);
    // T_x = Re(conj(u) N) = Re(u) e1 + Im(u) e2.
    integrand[static_cast<size_t>(i)] =
        CVec3{f.e1 * u.real() + f.e2 * u.imag(), Vec3{}};
  }
  return oscillatory_transform(field.grid, integrand, taper, xi);
}

std::vector<CVec3> fourier_transform_Nx(const FrameField& field, const ModeSet& modes,
                                        const std::vector<double>& xi,
                                        const TaperConfig& taper) {
  double xi_max = 0.0;
  for (double q : xi) xi_max = std::max(xi_max, std::abs(q));
  taper.validate(field.t, corner_extent_abs(modes), xi_max);

  std::vector<CVec3> integrand(static_cast<size_t>(field.grid.n));
  for (int i = 0; i < field.grid.n; ++i) {
    const Cplx u = evaluate_u(field.t, field.grid.x(i), modes);
    const Frame& f = field.at(i);
    integrand[static_cast<size_t>(i)] = CVec3{f.T, Vec3{}} * (-u);
  }
  return oscillatory_transform(field.grid, integrand, taper, xi);
}

std::vector<CVec3> streaming_transform_Tx(double t, const ModeSet& modes,
                                          const Frame& seed, const XGrid& grid,
                                          const TaperConfig& taper,
                                          const std::vector<double>& xi, int n_threads) {
  if (!(t > 0.0)) throw std::domain_error("streaming_transform_Tx: t must be > 0");
  if (!grid.valid()) throw std::invalid_argument("streaming_transform_Tx: invalid grid");
  if (grid.x_min > -taper.L || grid.x_max() < taper.L)
    throw std::invalid_argument("streaming_transform_Tx: grid does not cover [-L, L]");
  double xi_max = 0.0;
  for (double q : xi) xi_max = std::max(xi_max, std::abs(q));
  taper.validate(t, corner_extent_abs(modes), xi_max);

  const int chunk = 1 << 18;
  const int s = grid.seed_index;

  // Chunk table: right chunks cover [s + r*chunk, ...], left chunks cover
  // [..., s - r*chunk] marching down; the seed node itself belongs to the
  // first right chunk only.
  struct ChunkSpec {
    int start;    // checkpoint index (frame known here)
    int count;    // nodes processed, walking from start
    int dir;      // +1 or -1
    bool skip_first;  // do not accumulate the checkpoint node
  };
  std::vector<ChunkSpec> chunks;
  std::vector<Frame> checkpoints;

  {
    Frame cur = reorthonormalized(seed);
    for (int i = s; i < grid.n; ++i) {
      if ((i - s) % chunk == 0) {
        chunks.push_back({i, std::min(chunk, grid.n - i), +1, false});
        checkpoints.push_back(cur);
      }
      if (i + 1 < grid.n)
        cur = advance_frame_x(cur, evaluate_u(t, grid.x(i) + 0.5 * grid.h, modes), grid.h);
    }
    cur = reorthonormalized(seed);
    for (int i = s; i >= 0; --i) {
      if ((s - i) % chunk == 0 && i > 0) {
        // skip the checkpoint node: it is covered by the chunk to its right
        chunks.push_back({i, std::min(chunk, i) + 1, -1, true});
        checkpoints.push_back(cur);
      }
      if (i > 0)
        cur = advance_frame_x(cur, evaluate_u(t, grid.x(i) - 0.5 * grid.h, modes), -grid.h);
    }
  }

  const size_t nxi = xi.size();
  std::vector<std::vector<CVec3>> partials(chunks.size());

  auto run_chunk = [&](size_t ci) {
    const ChunkSpec& cs = chunks[ci];
    Frame cur = checkpoints[ci];
    std::vector<CVec3> buf(static_cast<size_t>(cs.count));
    std::vector<double> xval(static_cast<size_t>(cs.count));
    for (int step = 0; step < cs.count; ++step) {
      const int i = cs.start + cs.dir * step;
      const double x = grid.x(i);
      double w = taper.weight(x);
      if (i == 0 || i == grid.n - 1) w *= 0.5;
      if (cs.skip_first && step == 0) w = 0.0;
      const Cplx u = evaluate_u(t, x, modes);
      buf[static_cast<size_t>(step)] =
          CVec3{(cur.e1 * u.real() + cur.e2 * u.imag()) * w, Vec3{}};
      xval[static_cast<size_t>(step)] = x;
      if (step + 1 < cs.count)
        cur = advance_frame_x(cur, evaluate_u(t, x + cs.dir * 0.5 * grid.h, modes),
                              cs.dir * grid.h);
    }
    std::vector<CVec3> part(nxi);
    for (size_t q = 0; q < nxi; ++q) {
      const Cplx rot = std::polar(1.0, kTwoPi * grid.h * xi[q] * cs.dir);
      CVec3 acc{};
      Cplx phase{};
      for (int i = 0; i < cs.count; ++i) {
        if ((i & 4095) == 0)
          phase = std::polar(1.0, kTwoPi * xval[static_cast<size_t>(i)] * xi[q]);
        acc += buf[static_cast<size_t>(i)] * phase;
        phase *= rot;
      }
      part[q] = acc;
    }
    partials[ci] = std::move(part);
  };

  int threads = n_threads > 0 ? n_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(chunks.size())));
  if (threads == 1) {
    for (size_t ci = 0; ci < chunks.size(); ++ci) run_chunk(ci);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const size_t ci = next.fetch_add(1);
          if (ci >= chunks.size()) return;
          run_chunk(ci);
        }
      });
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction over chunks.
  std::vector<CVec3> out(nxi);
  for (size_t ci = 0; ci < chunks.size(); ++ci)
    for (size_t q = 0; q < nxi; ++q) out[q] += partials[ci][q];
  for (size_t q = 0; q < nxi; ++q) out[q] = out[q] * Cplx{grid.h, 0.0};
  return out;
}

std::vector<double> window_nodes(int k, int samples_per_window, double t) {
  if (samples_per_window < 33)
    throw std::invalid_argument("window_nodes: need >= 33 samples per window");
  if (samples_per_window % 2 == 0)
    throw std::invalid_argument("window_nodes: sample count must be odd (Simpson)");
  const int n = samples_per_window;
  const double step = 1.0 / (n - 1);
  double shift = 0.0;
  // Shift by half a step if any node would sit on a lattice point
  // 4 pi t xi in Z.
  const auto near_lattice = [&](double q) {
    const double y = 4.0 * kPi * t * q;
    return std::abs(y - std::round(y)) < 4.0 * kPi * t * step / 1024.0;
  };
  for (int i = 0; i < n; ++i)
    if (near_lattice(k + i * step)) {
      shift = 0.5 * step;
      break;
    }
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = k + shift + i * step;
  return out;
}

double windowed_energy(const std::vector<double>& xi, const std::vector<CVec3>& values) {
  if (xi.size() != values.size())
    throw std::invalid_argument("windowed_energy: xi/values size mismatch");
  const int n = static_cast<int>(xi.size());
  if (n < 33) throw std::invalid_argument("windowed_energy: need >= 33 samples");
  if (n % 2 == 0) throw std::invalid_argument("windowed_energy: need an odd sample count");
  const double h = xi[1] - xi[0];
  for (int i = 1; i + 1 < n; ++i)
    if (std::abs((xi[static_cast<size_t>(i + 1)] - xi[static_cast<size_t>(i)]) - h) >
        1e-9 * h)
      throw std::invalid_argument("windowed_energy: xi samples must be uniform");
  double sum = norm2(values.front()) + norm2(values.back());
  for (int i = 1; i + 1 < n; ++i)
    sum += norm2(values[static_cast<size_t>(i)]) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

double windowed_energy(const SpectralWindow& window) {
  return windowed_energy(window.xi, window.values);
}

SpectralWindow make_spectral_window(int k, std::vector<double> xi,
                                    std::vector<CVec3> values) {
  SpectralWindow w;
  w.k = k;
  w.xi = std::move(xi);
  w.values = std::move(values);
  w.energy = windowed_energy(w.xi, w.values);
  return w;
}

double windowed_energy_at_zero(const AlphaSequence& alphas) {
  return energy_at_zero(alphas);
}

PlateauEstimate plateau_estimate(const std::vector<std::pair<int, double>>& energies) {
  if (energies.size() < 4)
    throw std::invalid_argument("plateau_estimate: need >= 4 consecutive windows");
  std::vector<std::pair<int, double>> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  const size_t half = (sorted.size() + 1) / 2;
  std::vector<double> upper;
  for (size_t i = sorted.size() - half; i < sorted.size(); ++i)
    upper.push_back(sorted[i].second);
  std::vector<double> med = upper;
  std::sort(med.begin(), med.end());
  const size_t m = med.size();
  const double limit = (m % 2 == 1) ? med[m / 2] : 0.5 * (med[m / 2 - 1] + med[m / 2]);
  double spread = 0.0;
  for (double v : upper) spread = std::max(spread, std::abs(v - limit));
  return {limit, spread};
}

std::vector<double> spike_locations(double t, double xi_lo, double xi_hi) {
  if (!(t > 0.0)) throw std::domain_error("spike_locations: t must be > 0");
  std::vector<double> out;
  const double f = 4.0 * kPi * t;
  const long n_lo = static_cast<long>(std::ceil(xi_lo * f - 1e-12));
  const long n_hi = static_cast<long>(std::floor(xi_hi * f + 1e-12));
  for (long n = n_lo; n <= n_hi; ++n) out.push_back(static_cast<double>(n) / f);
  return out;
}

CVec3 two_corner_spike_model(double t, int n, double d, Cplx A0, Cplx An,
                             const Vec3& T_plus, const Vec3& T_minus) {
  if (!(d > 0.0) || !(d < 1.0))
    throw std::domain_error("two_corner_spike_model: d must lie in (0, 1)");
  if (!(t > 0.0)) throw std::domain_error("two_corner_spike_model: t must be > 0");
  const double nn = static_cast<double>(n) * n;
  const Cplx scalar = Cplx{0.0, 1.0} * std::conj(A0) * An *
                      std::polar(1.0, nn / (4.0 * t)) *
                      (std::polar(1.0, 0.5 * n * d) - Cplx{1.0, 0.0}) *
                      std::polar(1.0, 0.5 * d) * std::log(0.5 * d);
  return CVec3{T_plus - T_minus, Vec3{}} * scalar;
}

}  // namespace bflab
