#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hfee {

/// splitmix64 step; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic child seed for (root, a, b). Parallel and serial
/// generation agree because every subject/purpose gets its own stream.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b);

/// mt19937_64 with hand-rolled samplers. The standard pins down the
/// engine but not the distributions, so uniform/normal are implemented
/// here to keep output byte-identical across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], both inclusive. Rejection sampling, no
  /// modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Standard normal via Box-Muller. Two engine draws per call.
  double normal01();

  double normal(double mean, double sd) { return mean + sd * normal01(); }

  /// Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hfee
