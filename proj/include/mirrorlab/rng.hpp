#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mirrorlab {

// Deterministic, platform-independent random streams. Every sampler takes an
// explicit 64-bit seed; independent streams are derived with splitmix64 so
// that parallel workers reproduce the sequential results.
std::uint64_t splitmix64(std::uint64_t& state);

// Derive a child seed for stream `index` of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    // warm up so that small seeds decorrelate
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform();
  // uniform in (0, 1]; safe as a log() argument
  double uniform_pos();
  double gaussian();
  double exponential();
  std::complex<double> complex_gaussian();

  // Haar-uniform unit vector in C^d (normalized complex Gaussian).
  std::vector<std::complex<double>> haar_unit_vector(int d);

  // Uniform point on the probability simplex (flat Dirichlet).
  std::vector<double> dirichlet_uniform(int d);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mirrorlab
