#include "mirrorlab/rng.hpp"

#include <cmath>

namespace mirrorlab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull + index * 0xbf58476d1ce4e5b9ull);
  splitmix64(s);
  return splitmix64(s);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; avoids library-specific normal_distribution so that streams
  // are identical across standard libraries.
  double u = uniform_pos();
  double v = uniform();
  double r = std::sqrt(-2.0 * std::log(u));
  double a = 2.0 * M_PI * v;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::exponential() { return -std::log(uniform_pos()); }

std::complex<double> Rng::complex_gaussian() {
  double re = gaussian();
  double im = gaussian();
  return {re, im};
}

std::vector<std::complex<double>> Rng::haar_unit_vector(int d) {
  std::vector<std::complex<double>> v(d);
  double norm2 = 0.0;
  for (auto& z : v) {
    z = complex_gaussian();
    norm2 += std::norm(z);
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

std::vector<double> Rng::dirichlet_uniform(int d) {
  std::vector<double> w(d);
  double sum = 0.0;
  for (auto& x : w) {
    x = exponential();
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace mirrorlab
