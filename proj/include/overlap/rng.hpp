#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace overlap {

// Deterministic substreamed generator. All randomness in the project flows
// from one root seed through named substreams so that components (bootstrap
// draws, simulation chunks) are reproducible in isolation and independent of
// evaluation order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix(std::uint64_t root, std::string_view label,
                           std::uint64_t index = 0) {
    // FNV-1a over root, label bytes, index.
    std::uint64_t h = 14695981039346656037ull;
    auto eat = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    eat(root);
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    eat(index);
    return h;
  }

  static Rng substream(std::uint64_t root, std::string_view label,
                       std::uint64_t index = 0) {
    return Rng(mix(root, label, index));
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [0, bound). bound must be > 0.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (deterministic across platforms,
  // unlike std::normal_distribution).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace overlap
