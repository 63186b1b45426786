#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace qcycle {

// All randomness in the library flows through Rand so a given seed yields
// the same results on every run. Plain engine output is transformed here
// instead of through std:: distributions, whose output is
// implementation-defined.
class Rand {
 public:
  explicit Rand(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), bound > 0.
  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qcycle
