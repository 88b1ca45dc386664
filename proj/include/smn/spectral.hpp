#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "smn/fft.hpp"
#include "smn/gridfield.hpp"

namespace smn {

using fft::cplx;

// DFT coefficients of a real field, referenced to physical coordinates:
// u(x_n) = (1/N^dims) * sum_k coeff(k) * exp(i k . x_n) with k_d = 2*pi*m/L_d.
// Stored in FFT bin order (x slowest); physical_phase records that the
// exp(-i k . x_origin) shift has been applied, so a coefficient's polar angle
// is directly the phase of its cosine term on the physical grid.
class Spectrum {
 public:
  Spectrum(int dims, int n_per_dim, std::vector<Interval> bounds,
           std::vector<cplx> coeffs)
      : dims_(dims), n_(n_per_dim), bounds_(std::move(bounds)),
        coeffs_(std::move(coeffs)) {}

  int dims() const { return dims_; }
  int n_per_dim() const { return n_; }
  const std::vector<Interval>& bounds() const { return bounds_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }
  bool physical_phase() const { return true; }

  double wavenumber(int dim, int m) const {
    return 2.0 * M_PI * m / bounds_[dim].length();
  }

  // Coefficient for signed mode index m (per dimension, in -N/2 .. N/2-1).
  const cplx& coeff(int mx) const {
    return coeffs_[static_cast<std::size_t>(fft::mode_bin(mx, n_))];
  }
  const cplx& coeff(int mx, int my) const {
    return coeffs_[static_cast<std::size_t>(fft::mode_bin(mx, n_)) * n_ +
                   fft::mode_bin(my, n_)];
  }

  std::size_t size() const { return coeffs_.size(); }

 private:
  int dims_;
  int n_;
  std::vector<Interval> bounds_;
  std::vector<cplx> coeffs_;
};

// One cosine term alpha * cos(k . x + theta) of the real-mode decomposition.
struct SpectralMode {
  std::array<double, 2> k = {0.0, 0.0};  // k[1] unused for 1D fields
  double amplitude = 0.0;
  double phase = 0.0;
};

// Conjugate-deduplicated modes, descending by amplitude.
struct ModeTable {
  std::vector<SpectralMode> modes;
  int dims = 2;
  int n_per_dim = 0;
  bool clamped = false;  // requested n_f exceeded the available representatives

  std::size_t size() const { return modes.size(); }
};

struct ModePolicy {
  // n_f > 0: take exactly that many (clamping to what exists);
  // n_f == 0: threshold policy, keep amplitude >= tau * max, capped;
  // n_f == kAll: every representative.
  static constexpr int kAll = -1;
  int n_f = 0;
  double tau = 1e-8;
  int cap = 10000;

  static ModePolicy all() { return {kAll, 0.0, 0}; }
  static ModePolicy top(int count) { return {count, 0.0, 0}; }
  static ModePolicy threshold(double tau_, int cap_ = 10000) { return {0, tau_, cap_}; }
};

struct PowerSpectrum {
  std::vector<double> edges;  // n_bins + 1, uniform over |k|
  std::vector<double> energy; // n_bins, sum of |coeff|^2 per bin

  int n_bins() const { return static_cast<int>(energy.size()); }
  double center(int j) const { return 0.5 * (edges[j] + edges[j + 1]); }
  double total() const {
    double s = 0.0;
    for (double e : energy) s += e;
    return s;
  }
};

struct DominantFrequency {
  double f_d = 0.0;
  bool is_constant = false;  // no non-DC mode above noise
};

// ---------------------------------------------------------------------------

inline Spectrum dft(const GridField& field) {
  const int n = field.n_per_dim();
  std::vector<cplx> buf(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) buf[i] = {field.values()[i], 0.0};
  if (field.dims() == 1) {
    fft::transform_1d(buf.data(), n, -1);
  } else {
    fft::transform_2d(buf.data(), n, -1);
  }
  // Shift from index space to physical coordinates: multiply bin m by
  // exp(-i k_m * lo) per dimension. lo == 0 keeps coefficients untouched.
  std::vector<std::vector<cplx>> shift(static_cast<std::size_t>(field.dims()));
  for (int d = 0; d < field.dims(); ++d) {
    shift[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(n));
    const double lo = field.bounds()[d].lo;
    const double len = field.bounds()[d].length();
    for (int i = 0; i < n; ++i) {
      const double ang = -2.0 * M_PI * fft::signed_mode(i, n) * lo / len;
      shift[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] =
          (ang == 0.0) ? cplx{1.0, 0.0} : cplx{std::cos(ang), std::sin(ang)};
    }
  }
  if (field.dims() == 1) {
    for (int i = 0; i < n; ++i) buf[static_cast<std::size_t>(i)] *= shift[0][static_cast<std::size_t>(i)];
  } else {
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        buf[idx++] *= shift[0][static_cast<std::size_t>(ix)] * shift[1][static_cast<std::size_t>(iy)];
      }
    }
  }
  return Spectrum(field.dims(), n, field.bounds(), std::move(buf));
}

inline GridField idft(const Spectrum& spectrum) {
  const int n = spectrum.n_per_dim();
  std::vector<cplx> buf = spectrum.coeffs();
  // Undo the physical phase shift, then inverse index-space transform.
  for (int d = 0; d < spectrum.dims(); ++d) {
    const double lo = spectrum.bounds()[d].lo;
    const double len = spectrum.bounds()[d].length();
    std::vector<cplx> shift(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double ang = 2.0 * M_PI * fft::signed_mode(i, n) * lo / len;
      shift[static_cast<std::size_t>(i)] =
          (ang == 0.0) ? cplx{1.0, 0.0} : cplx{std::cos(ang), std::sin(ang)};
    }
    if (spectrum.dims() == 1) {
      for (int i = 0; i < n; ++i) buf[static_cast<std::size_t>(i)] *= shift[static_cast<std::size_t>(i)];
    } else if (d == 0) {
      std::size_t idx = 0;
      for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy, ++idx) buf[idx] *= shift[static_cast<std::size_t>(ix)];
    } else {
      std::size_t idx = 0;
      for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy, ++idx) buf[idx] *= shift[static_cast<std::size_t>(iy)];
    }
  }
  if (spectrum.dims() == 1) {
    fft::transform_1d(buf.data(), n, +1);
  } else {
    fft::transform_2d(buf.data(), n, +1);
  }
  double scale = 1.0;
  for (int d = 0; d < spectrum.dims(); ++d) scale /= n;
  std::vector<double> values(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) values[i] = buf[i].real() * scale;
  return GridField(spectrum.dims(), n, spectrum.bounds(), std::move(values));
}

namespace detail {

inline void require_normalized(const GridField& field) {
  for (const auto& b : field.bounds()) {
    if (std::abs(b.lo + 1.0) > 1e-12 || std::abs(b.hi - 1.0) > 1e-12)
      throw InvalidDomainError("field must have normalized bounds [-1, 1)");
  }
}

struct RawMode {
  int mx = 0;
  int my = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

// One representative per conjugate pair. Selection: keep self-conjugate modes
// (every index component in {0, -N/2}) and, for distinct pairs, the member
// whose signed index tuple (m_y, m_x) is lexicographically greater than its
// partner's. For non-Nyquist modes this is exactly the half-space
// {k_y > 0} u {k_y = 0, k_x >= 0}; it also covers the -N/2 rows the
// half-space rule leaves ambiguous.
inline bool keep_representative(int mx, int my, int n, bool& self_conj) {
  auto conj_of = [n](int m) { return fft::signed_mode(fft::mode_bin(-m, n), n); };
  const int cx = conj_of(mx);
  const int cy = conj_of(my);
  self_conj = (cx == mx && cy == my);
  if (self_conj) return true;
  return (my > cy) || (my == cy && mx > cx);
}

inline std::vector<RawMode> representatives(const Spectrum& s) {
  const int n = s.n_per_dim();
  const double inv_total = (s.dims() == 1) ? 1.0 / n : 1.0 / (static_cast<double>(n) * n);
  std::vector<RawMode> reps;
  auto push = [&](int mx, int my, const cplx& c) {
    bool self_conj = false;
    if (!keep_representative(mx, my, n, self_conj)) return;
    RawMode rm;
    rm.mx = mx;
    rm.my = my;
    if (self_conj) {
      // Coefficient is real up to round-off; the cosine phase is 0 or pi.
      rm.amplitude = std::abs(c.real()) * inv_total;
      rm.phase = (c.real() >= 0.0) ? 0.0 : M_PI;
    } else {
      rm.amplitude = 2.0 * std::abs(c) * inv_total;
      rm.phase = std::atan2(c.imag(), c.real());
    }
    reps.push_back(rm);
  };
  if (s.dims() == 1) {
    for (int i = 0; i < n; ++i) {
      push(fft::signed_mode(i, n), 0, s.coeffs()[static_cast<std::size_t>(i)]);
    }
  } else {
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy, ++idx) {
        push(fft::signed_mode(ix, n), fft::signed_mode(iy, n), s.coeffs()[idx]);
      }
    }
  }
  return reps;
}

}  // namespace detail

// Algorithm: DFT, deduplicate conjugate pairs, rank by the normalized
// amplitude alpha. Weights are 2/N^dims for modes with a distinct conjugate
// partner and 1/N^dims for self-conjugate modes (DC and Nyquist), which makes
// u(x) = sum alpha cos(k . x + theta) exact on the grid.
inline ModeTable extract_modes(const GridField& field, const ModePolicy& policy) {
  detail::require_normalized(field);
  const Spectrum s = dft(field);
  auto reps = detail::representatives(s);

  std::vector<SpectralMode> modes;
  modes.reserve(reps.size());
  for (const auto& r : reps) {
    SpectralMode m;
    m.k[0] = s.wavenumber(0, r.mx);
    if (field.dims() == 2) m.k[1] = s.wavenumber(1, r.my);
    m.amplitude = r.amplitude;
    m.phase = r.phase;
    modes.push_back(m);
  }
  std::sort(modes.begin(), modes.end(), [](const SpectralMode& a, const SpectralMode& b) {
    if (a.amplitude != b.amplitude) return a.amplitude > b.amplitude;
    const double na = std::hypot(a.k[0], a.k[1]);
    const double nb = std::hypot(b.k[0], b.k[1]);
    if (na != nb) return na < nb;
    if (a.k[0] != b.k[0]) return a.k[0] < b.k[0];
    return a.k[1] < b.k[1];
  });

  ModeTable table;
  table.dims = field.dims();
  table.n_per_dim = field.n_per_dim();
  std::size_t keep = modes.size();
  if (policy.n_f == ModePolicy::kAll) {
    // keep everything
  } else if (policy.n_f > 0) {
    if (static_cast<std::size_t>(policy.n_f) > modes.size()) {
      table.clamped = true;
    } else {
      keep = static_cast<std::size_t>(policy.n_f);
    }
  } else {
    const double alpha_max = modes.empty() ? 0.0 : modes.front().amplitude;
    std::size_t count = 0;
    for (const auto& m : modes) {
      if (m.amplitude >= policy.tau * alpha_max && m.amplitude > 0.0) ++count;
      else break;
    }
    keep = std::min<std::size_t>(count, static_cast<std::size_t>(policy.cap));
  }
  modes.resize(keep);
  table.modes = std::move(modes);
  return table;
}

// Largest-amplitude non-DC mode, in cycles per unit of normalized coordinate.
inline DominantFrequency dominant_frequency(const GridField& field) {
  detail::require_normalized(field);
  const Spectrum s = dft(field);
  auto reps = detail::representatives(s);
  double alpha_dc = 0.0;
  double best = -1.0;
  double best_knorm = 0.0;
  for (const auto& r : reps) {
    if (r.mx == 0 && r.my == 0) {
      alpha_dc = r.amplitude;
      continue;
    }
    const double kx = s.wavenumber(0, r.mx);
    const double ky = (field.dims() == 2) ? s.wavenumber(1, r.my) : 0.0;
    const double knorm = std::hypot(kx, ky);
    if (r.amplitude > best || (r.amplitude == best && knorm < best_knorm)) {
      best = r.amplitude;
      best_knorm = knorm;
    }
  }
  DominantFrequency out;
  if (best <= 0.0 || best <= 1e-12 * alpha_dc) {
    out.is_constant = true;
    out.f_d = 0.0;
    return out;
  }
  out.f_d = best_knorm / (2.0 * M_PI);
  return out;
}

// Angle-averaged power spectrum: every |coeff|^2 lands in exactly one of
// n_bins uniform |k| bins spanning [0, |k|_max].
inline PowerSpectrum power_spectrum(const GridField& field, int n_bins) {
  if (field.dims() != 2) throw InvalidDomainError("power_spectrum needs a 2D field");
  if (n_bins < 1) throw Error("power_spectrum: n_bins must be >= 1");
  const Spectrum s = dft(field);
  const int n = field.n_per_dim();
  const double kx_ny = std::abs(s.wavenumber(0, -n / 2));
  const double ky_ny = std::abs(s.wavenumber(1, -n / 2));
  const double k_max = std::hypot(kx_ny, ky_ny);
  PowerSpectrum ps;
  ps.edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int j = 0; j <= n_bins; ++j) ps.edges[static_cast<std::size_t>(j)] = k_max * j / n_bins;
  ps.energy.assign(static_cast<std::size_t>(n_bins), 0.0);
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    const double kx = s.wavenumber(0, fft::signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy, ++idx) {
      const double ky = s.wavenumber(1, fft::signed_mode(iy, n));
      const double kn = std::hypot(kx, ky);
      int j = static_cast<int>(kn / k_max * n_bins);
      if (j >= n_bins) j = n_bins - 1;
      ps.energy[static_cast<std::size_t>(j)] += std::norm(s.coeffs()[idx]);
    }
  }
  return ps;
}

// Evaluates sum alpha cos(k . x + theta) over the table at one point.
inline double mode_sum(const ModeTable& table, double x, double y = 0.0) {
  double acc = 0.0;
  for (const auto& m : table.modes) {
    acc += m.amplitude * std::cos(m.k[0] * x + m.k[1] * y + m.phase);
  }
  return acc;
}

inline void save_modes_csv(const ModeTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  char buf[120];
  if (table.dims == 1) {
    os << "kx,alpha,theta\n";
    for (const auto& m : table.modes) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.k[0], m.amplitude, m.phase);
      os << buf;
    }
  } else {
    os << "kx,ky,alpha,theta\n";
    for (const auto& m : table.modes) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", m.k[0], m.k[1],
                    m.amplitude, m.phase);
      os << buf;
    }
  }
}

}  // namespace smn
