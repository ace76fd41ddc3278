#ifndef ZR_RNG_HPP
#define ZR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace zr {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream derivation: stream k of a master seed mixes the
// counter through splitmix64 twice, so replica streams stay independent
// and a run with more replicas leaves earlier streams unchanged.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (k + 1));
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng stream(std::uint64_t master, std::uint64_t k) {
    return Rng(derive_stream_seed(master, k));
  }

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Exponential waiting time by inverse transform.
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

  // Geometric on {0,1,2,...} with P(k) = (1-lambda) lambda^k, by inverse
  // transform; exact and stable for lambda close to 1.
  long geometric(double lambda) {
    if (lambda <= 0.0) return 0;
    double u = 1.0 - uniform01();  // in (0, 1]
    return static_cast<long>(std::floor(std::log(u) / std::log(lambda)));
  }

  // Box-Muller; pinned implementation so ensembles are reproducible
  // independent of the standard library.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Compensated accumulator for long sums of small increments.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
  void reset() { sum = carry = 0.0; }
};

}  // namespace zr

#endif
