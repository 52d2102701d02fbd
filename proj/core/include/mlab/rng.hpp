#pragma once

// Seeded randomness. Every task draws from its own mt19937_64 stream seeded by
//   child = splitmix64(master + (task + 1) * 0x9E3779B97F4A7C15)
// Doubles use the top 53 bits of a raw 64-bit draw; normals use Box-Muller
// on (u1, u2) pairs and return the cosine branch first, then the sine branch.

#include <complex>
#include <cstdint>
#include <random>

namespace mlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t child_seed(std::uint64_t master, std::uint64_t task) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform index in [0, n) by rejection.
  std::uint64_t index(std::uint64_t n);
  double normal();
  /// (g_r + i g_i) / sqrt(2) with independent standard normals.
  std::complex<double> complex_gaussian();
  /// Uniform on the complex unit circle.
  std::complex<double> unimodular();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mlab
