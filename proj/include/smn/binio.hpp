#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "smn/error.hpp"

namespace smn::binio {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; byte swapping not implemented");

inline void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

inline void write_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}

inline void write_f64_array(std::ostream& os, const double* p, std::size_t n) {
  os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(8 * n));
}

inline std::uint32_t read_u32(std::istream& is, std::size_t& offset) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  if (is.gcount() != 4) throw FormatError("truncated u32", offset);
  offset += 4;
  return v;
}

inline double read_f64(std::istream& is, std::size_t& offset) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  if (is.gcount() != 8) throw FormatError("truncated f64", offset);
  offset += 8;
  return v;
}

inline void read_f64_array(std::istream& is, double* p, std::size_t n,
                           std::size_t& offset) {
  is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(8 * n));
  const auto got = static_cast<std::size_t>(is.gcount());
  if (got != 8 * n) throw FormatError("truncated payload", offset + got);
  offset += 8 * n;
}

// Raw flat array files used by model checkpoints.
inline void save_f64_file(const std::string& path, const double* p, std::size_t n) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + path);
  write_f64_array(os, p, n);
  if (!os) throw Error("write failed: " + path);
}

inline std::vector<double> load_f64_file(const std::string& path,
                                         std::size_t expect_n) {
  std::ifstream is(path, std::ios::binary | std::ios::ate);
  if (!is) throw CorruptionError("missing parameter file", path);
  const auto bytes = static_cast<std::size_t>(is.tellg());
  if (bytes != 8 * expect_n)
    throw CorruptionError("parameter file has " + std::to_string(bytes) +
                              " bytes, manifest expects " +
                              std::to_string(8 * expect_n),
                          path);
  is.seekg(0);
  std::vector<double> out(expect_n);
  is.read(reinterpret_cast<char*>(out.data()),
          static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(is.gcount()) != bytes)
    throw CorruptionError("short read", path);
  return out;
}

}  // namespace smn::binio
