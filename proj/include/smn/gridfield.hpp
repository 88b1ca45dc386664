#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smn/binio.hpp"
#include "smn/error.hpp"
#include "smn/rng.hpp"

namespace smn {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

// Real scalar samples on a uniform 1D/2D grid over closed-open intervals
// [lo, hi) per dimension (periodic sampling convention: node i sits at
// lo + i*(hi-lo)/N, the endpoint hi is excluded). Row-major storage with x
// varying slowest: 2D index = ix*N + iy. Immutable by convention once built;
// nothing here mutates a field in place.
class GridField {
 public:
  GridField(int dims, int n_per_dim, std::vector<Interval> bounds,
            std::vector<double> values)
      : dims_(dims),
        n_(n_per_dim),
        bounds_(std::move(bounds)),
        values_(std::move(values)) {
    validate();
  }

  static GridField zeros(int dims, int n_per_dim, std::vector<Interval> bounds) {
    std::size_t total = 1;
    for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n_per_dim);
    return GridField(dims, n_per_dim, std::move(bounds),
                     std::vector<double>(total, 0.0));
  }

  int dims() const { return dims_; }
  int n_per_dim() const { return n_; }
  const std::vector<Interval>& bounds() const { return bounds_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double spacing(int dim) const { return bounds_[dim].length() / n_; }

  // Physical coordinate of node index along one dimension.
  double coord(int dim, int index) const {
    return bounds_[dim].lo + bounds_[dim].length() * index / n_;
  }

  double at(int ix) const { return values_[static_cast<std::size_t>(ix)]; }
  double at(int ix, int iy) const {
    return values_[static_cast<std::size_t>(ix) * n_ + iy];
  }

  GridField with_values(std::vector<double> values) const {
    return GridField(dims_, n_, bounds_, std::move(values));
  }

  GridField with_bounds(std::vector<Interval> bounds) const {
    return GridField(dims_, n_, std::move(bounds), values_);
  }

  bool same_grid(const GridField& other) const {
    if (dims_ != other.dims_ || n_ != other.n_) return false;
    for (int d = 0; d < dims_; ++d) {
      if (bounds_[d].lo != other.bounds_[d].lo ||
          bounds_[d].hi != other.bounds_[d].hi)
        return false;
    }
    return true;
  }

 private:
  void validate() const {
    if (dims_ != 1 && dims_ != 2)
      throw InvalidDomainError("dims must be 1 or 2, got " + std::to_string(dims_));
    if (n_ <= 0)
      throw InvalidDomainError("n_per_dim must be positive, got " + std::to_string(n_));
    if (static_cast<int>(bounds_.size()) != dims_)
      throw InvalidDomainError("bounds count does not match dims");
    for (const auto& b : bounds_) {
      if (!(b.lo < b.hi))
        throw InvalidDomainError("bounds must satisfy lo < hi (got [" +
                                 std::to_string(b.lo) + ", " +
                                 std::to_string(b.hi) + "))");
      if (!std::isfinite(b.lo) || !std::isfinite(b.hi))
        throw InvalidDomainError("bounds must be finite");
    }
    std::size_t total = 1;
    for (int d = 0; d < dims_; ++d) total *= static_cast<std::size_t>(n_);
    if (values_.size() != total)
      throw InvalidDomainError("values length " + std::to_string(values_.size()) +
                               " != n_per_dim^dims " + std::to_string(total));
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidDomainError("field contains non-finite value");
    }
  }

  int dims_;
  int n_;
  std::vector<Interval> bounds_;
  std::vector<double> values_;
};

// Per-dimension affine map x_norm = scale*x + offset sending physical
// coordinates to [-1, 1].
struct NormalizationRecord {
  struct Axis {
    double scale = 1.0;
    double offset = 0.0;
  };
  std::vector<Axis> axes;

  double to_normalized(int dim, double x) const {
    return axes[dim].scale * x + axes[dim].offset;
  }
  double to_physical(int dim, double xn) const {
    return (xn - axes[dim].offset) / axes[dim].scale;
  }
  bool is_identity() const {
    for (const auto& a : axes)
      if (a.scale != 1.0 || a.offset != 0.0) return false;
    return true;
  }
};

// Rescales the domain to [-1, 1) per dimension. Values are untouched; the
// record inverts the map in round-trip.
inline std::pair<GridField, NormalizationRecord> normalize_coords(
    const GridField& field) {
  NormalizationRecord rec;
  std::vector<Interval> nb;
  for (int d = 0; d < field.dims(); ++d) {
    const Interval& b = field.bounds()[d];
    if (!(b.lo < b.hi)) throw InvalidDomainError("degenerate bounds");
    NormalizationRecord::Axis ax;
    if (b.lo == -1.0 && b.hi == 1.0) {
      ax = {1.0, 0.0};  // already normalized; keep the map exactly identity
    } else {
      ax.scale = 2.0 / (b.hi - b.lo);
      ax.offset = -1.0 - ax.scale * b.lo;
    }
    rec.axes.push_back(ax);
    nb.push_back({-1.0, 1.0});
  }
  return {field.with_bounds(std::move(nb)), rec};
}

// ---------------------------------------------------------------------------
// Binary field format: magic "SMN1", u32 dims, u32 n_per_dim, per-dim bounds
// (lo, hi as f64), then row-major little-endian f64 values.
// ---------------------------------------------------------------------------

inline void save_field(const GridField& field, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + path);
  os.write("SMN1", 4);
  binio::write_u32(os, static_cast<std::uint32_t>(field.dims()));
  binio::write_u32(os, static_cast<std::uint32_t>(field.n_per_dim()));
  for (const auto& b : field.bounds()) {
    binio::write_f64(os, b.lo);
    binio::write_f64(os, b.hi);
  }
  binio::write_f64_array(os, field.values().data(), field.size());
  if (!os) throw Error("write failed: " + path);
}

inline GridField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open for reading: " + path);
  std::size_t offset = 0;
  char magic[4] = {};
  is.read(magic, 4);
  if (is.gcount() != 4 || std::string(magic, 4) != "SMN1")
    throw FormatError("bad magic, expected SMN1", 0);
  offset = 4;
  const auto dims = binio::read_u32(is, offset);
  if (dims != 1 && dims != 2) throw FormatError("dims must be 1 or 2", 4);
  const auto n = binio::read_u32(is, offset);
  if (n == 0) throw FormatError("n_per_dim must be positive", 8);
  std::vector<Interval> bounds;
  for (std::uint32_t d = 0; d < dims; ++d) {
    const std::size_t at = offset;
    Interval b;
    b.lo = binio::read_f64(is, offset);
    b.hi = binio::read_f64(is, offset);
    if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw FormatError("invalid bounds", at);
    bounds.push_back(b);
  }
  std::size_t total = 1;
  for (std::uint32_t d = 0; d < dims; ++d) total *= n;
  std::vector<double> values(total);
  const std::size_t payload_start = offset;
  binio::read_f64_array(is, values.data(), total, offset);
  for (std::size_t i = 0; i < total; ++i) {
    if (!std::isfinite(values[i]))
      throw FormatError("non-finite value", payload_start + 8 * i);
  }
  return GridField(static_cast<int>(dims), static_cast<int>(n),
                   std::move(bounds), std::move(values));
}

// CSV alternative: "x[,y],value" rows with 17-significant-digit floats.
// Binary is the authoritative bit-exact format.
inline void save_field_csv(const GridField& field, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  char buf[96];
  if (field.dims() == 1) {
    os << "x,value\n";
    for (int i = 0; i < field.n_per_dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", field.coord(0, i), field.at(i));
      os << buf;
    }
  } else {
    os << "x,y,value\n";
    for (int ix = 0; ix < field.n_per_dim(); ++ix) {
      for (int iy = 0; iy < field.n_per_dim(); ++iy) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", field.coord(0, ix),
                      field.coord(1, iy), field.at(ix, iy));
        os << buf;
      }
    }
  }
}

inline GridField load_field_csv(const std::string& path, int dims, int n_per_dim,
                                std::vector<Interval> bounds) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);
  std::string line;
  std::getline(is, line);  // header
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n_per_dim);
  std::vector<double> values;
  values.reserve(total);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto last_comma = line.find_last_of(',');
    if (last_comma == std::string::npos)
      throw FormatError("CSV row without comma", 0);
    values.push_back(std::stod(line.substr(last_comma + 1)));
  }
  return GridField(dims, n_per_dim, std::move(bounds), std::move(values));
}

// ---------------------------------------------------------------------------
// Built-in analytic targets.
// ---------------------------------------------------------------------------

// expr_id catalog:
//   "ug"           [sin(2x+1) - 0.5x](1 - y^2), 2D
//   "taylor-green" -2 cos(x) cos(y), 2D
//   "constant"     1 everywhere, 1D or 2D
//   "cospix"       cos(pi x), 1D
inline GridField sample_analytic(const std::string& expr_id, int n_per_dim,
                                 std::vector<Interval> bounds) {
  const int dims = static_cast<int>(bounds.size());
  auto make = [&](auto&& f2, auto&& f1) {
    std::size_t total = 1;
    for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n_per_dim);
    std::vector<double> values(total);
    GridField shape = GridField::zeros(dims, n_per_dim, bounds);
    if (dims == 2) {
      std::size_t idx = 0;
      for (int ix = 0; ix < n_per_dim; ++ix) {
        const double x = shape.coord(0, ix);
        for (int iy = 0; iy < n_per_dim; ++iy) {
          values[idx++] = f2(x, shape.coord(1, iy));
        }
      }
    } else {
      for (int i = 0; i < n_per_dim; ++i) values[i] = f1(shape.coord(0, i));
    }
    return GridField(dims, n_per_dim, bounds, std::move(values));
  };

  if (expr_id == "ug") {
    if (dims != 2) throw InvalidDomainError("ug is a 2D target");
    return make([](double x, double y) {
      return (std::sin(2.0 * x + 1.0) - 0.5 * x) * (1.0 - y * y);
    }, [](double) { return 0.0; });
  }
  if (expr_id == "taylor-green") {
    if (dims != 2) throw InvalidDomainError("taylor-green is a 2D target");
    return make([](double x, double y) { return -2.0 * std::cos(x) * std::cos(y); },
                [](double) { return 0.0; });
  }
  if (expr_id == "constant") {
    return make([](double, double) { return 1.0; }, [](double) { return 1.0; });
  }
  if (expr_id == "cospix") {
    if (dims != 1) throw InvalidDomainError("cospix is a 1D target");
    return make([](double, double) { return 0.0; },
                [](double x) { return std::cos(M_PI * x); });
  }
  throw Error("unknown expr_id: " + expr_id);
}

// Seeded random field, handy for round-trip and transform tests.
inline GridField random_field(int dims, int n_per_dim, std::vector<Interval> bounds,
                              std::uint64_t seed) {
  Rng rng(seed);
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n_per_dim);
  std::vector<double> values(total);
  for (auto& v : values) v = rng.uniform(-1.0, 1.0);
  return GridField(dims, n_per_dim, std::move(bounds), std::move(values));
}

}  // namespace smn
