// Deterministic randomness for the whole library.
//
// Every stream is a std::mt19937_64 engine, whose output sequence is pinned
// by the C++ standard, seeded through splitmix64. Bounded draws use rejection
// sampling implemented here rather than std::uniform_int_distribution, whose
// draw sequence is implementation-defined. A transcript produced from one
// 64-bit seed is therefore identical across compilers and standard libraries.
//
// Entity streams are derived, never shared: derive_seed(master, tag, index)
// chains splitmix64 over the three words, so client i, the server, and trial
// t of an experiment each consume an independent stream.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "error.hpp"

namespace prsi {

// splitmix64 step (Vigna's generator); used only for seed mixing.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ tag) ^ index);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw in [0, bound) via rejection; bound must be positive.
  std::uint32_t uniform_u32(std::uint32_t bound) {
    if (bound == 0) fail(ErrorCode::invalid_argument, "uniform_u32: zero bound");
    const std::uint64_t span = 0x100000000ULL;
    const std::uint64_t limit = span - span % bound;
    for (;;) {
      std::uint64_t x = engine_() >> 32;
      if (x < limit) return static_cast<std::uint32_t>(x % bound);
    }
  }

  // Uniform draw in [0, n) excluding self; n must be at least 2.
  std::uint32_t uniform_other(std::uint32_t n, std::uint32_t self) {
    if (n < 2) fail(ErrorCode::invalid_argument, "uniform_other: need n >= 2");
    std::uint32_t x = uniform_u32(n - 1);
    return x < self ? x : x + 1;
  }

  // Uniform in [0, 1) with 53 random bits, matching ldexp(u53, -53).
  double uniform_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform element of {-1, 0, +1}.
  int trit() { return static_cast<int>(uniform_u32(3)) - 1; }

  // Fisher-Yates over two sequences permuted in lockstep.
  template <typename A, typename B>
  void shuffle_pair(std::span<A> a, std::span<B> b) {
    if (a.size() != b.size())
      fail(ErrorCode::invalid_argument, "shuffle_pair: length mismatch");
    for (std::size_t i = a.size(); i > 1; --i) {
      std::size_t j = uniform_u32(static_cast<std::uint32_t>(i));
      std::swap(a[i - 1], a[j]);
      std::swap(b[i - 1], b[j]);
    }
  }

  template <typename A>
  void shuffle(std::span<A> a) {
    for (std::size_t i = a.size(); i > 1; --i) {
      std::size_t j = uniform_u32(static_cast<std::uint32_t>(i));
      std::swap(a[i - 1], a[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace prsi
