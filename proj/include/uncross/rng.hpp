#pragma once

#include <cstdint>
#include <random>

namespace uncross {

// Deterministic RNG wrapper; mt19937_64's output sequence is pinned by the
// standard, and the helpers below avoid implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, n), rejection-sampled (no modulo bias)
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // true with probability exactly 1/n
  bool one_in(std::uint64_t n) { return below(n) == 0; }

  int range(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace uncross
