#ifndef DCG_RNG_HPP_
#define DCG_RNG_HPP_

#include <cstdint>
#include <random>

namespace dcg {

// splitmix64 finalizer; used both as a bit mixer and to derive independent
// substreams from (base seed, index...) tuples so that parallel trials are
// reproducible regardless of scheduling.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(base ^ 0x6a09e667f3bcc909ULL);
  s = mix64(s ^ mix64(a));
  s = mix64(s ^ mix64(b));
  s = mix64(s ^ mix64(c));
  return s;
}

using Rng = std::mt19937_64;

// Uniform double in (0,1); 53-bit mantissa, never returns 0 or 1.
inline double uniform01(Rng& rng) {
  std::uint64_t r = rng() >> 11;
  if (r == 0) r = 1;
  return static_cast<double>(r) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double normal_quantile(double p);  // Phi^{-1}, see stats.cpp

// Standard normal draw via inverse CDF; bit-reproducible for a fixed seed
// (independent of libstdc++'s std::normal_distribution internals).
inline double normal_draw(Rng& rng) { return normal_quantile(uniform01(rng)); }

}  // namespace dcg

#endif  // DCG_RNG_HPP_
