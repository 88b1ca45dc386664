#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Degenerate or inconsistent physical domain (lo >= hi, bad dims, ...).
struct InvalidDomainError : Error {
  using Error::Error;
};

// Malformed file contents. byte_offset points at the first bad byte when known.
struct FormatError : Error {
  std::size_t byte_offset;
  FormatError(const std::string& msg, std::size_t offset)
      : Error(msg + " (byte offset " + std::to_string(offset) + ")"),
        byte_offset(offset) {}
};

// Checkpoint directory does not match its manifest.
struct CorruptionError : Error {
  std::string file;
  CorruptionError(const std::string& msg, const std::string& path)
      : Error(msg + ": " + path), file(path) {}
};

// Two fields (or a field and a model) do not live on the same grid.
struct GridMismatchError : Error {
  using Error::Error;
};

// Training produced a non-finite loss.
struct DivergenceError : Error {
  int stage = -1;
  long iteration = -1;
  DivergenceError(const std::string& msg, long iter)
      : Error(msg + " at iteration " + std::to_string(iter)), iteration(iter) {}
};

// Simulation state became non-finite.
struct BlowUpError : Error {
  double t;
  double dt;
  BlowUpError(double time, double step)
      : Error("simulation blow-up at t=" + std::to_string(time) +
              ", dt=" + std::to_string(step)),
        t(time), dt(step) {}
};

}  // namespace smn
