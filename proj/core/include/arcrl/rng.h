#pragma once

#include <cstdint>
#include <random>

namespace arcrl {

// Seeded random stream with platform-stable draws. The engine is
// std::mt19937_64 (bit-exact by the standard); the integer and real draws
// are done here because the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream derived from (seed, tag); distinct tags never share
  // the same seed sequence.
  static Rng substream(std::uint64_t seed, std::uint64_t tag);

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  // Uniform double in [0, 1).
  double unit();

 private:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  std::mt19937_64 engine_;
};

}  // namespace arcrl
