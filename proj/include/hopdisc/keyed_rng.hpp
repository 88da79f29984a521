#pragma once

#include <cstdint>

namespace hopdisc {

__extension__ using uint128 = unsigned __int128;

// SplitMix64 finalizer; a bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based draw: a pure function of (key, a, b). Evaluation order never
// affects results.
constexpr std::uint64_t keyed_draw(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = mix64(key ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ a);
  h = mix64(h ^ (b * 0xd6e8feb86659fd93ULL));
  return mix64(h);
}

// Maps a uniform 64-bit word onto [0, n) by multiply-shift. The bias per
// outcome is at most n / 2^64, below 2^-32 whenever n < 2^32.
constexpr std::uint64_t scale_to(std::uint64_t word, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<uint128>(word) * n) >> 64);
}

// Sequential stream over keyed_draw(seed, stream, counter).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return keyed_draw(seed_, stream_, counter_++); }
  std::uint64_t below(std::uint64_t n) { return scale_to(next(), n); }
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace hopdisc
