#pragma once

#include <cstdint>
#include <random>

namespace bbsplit {

// Deterministic random source. Wraps mt19937_64 (fully specified by the
// standard) and implements the derived draws by hand, since the standard
// library distributions are implementation-defined and would break
// reproducibility of results across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // Lemire's multiply-shift; the tiny modulo bias is irrelevant here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  bool next_bool() { return (engine_() & 1u) != 0; }

private:
  std::mt19937_64 engine_;
};

// Stateless mixing used to derive per-run seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace bbsplit
