#pragma once

#include <cstdint>

namespace logsum {

// splitmix64 (Steele/Lea/Flood splittable generator, Vigna's fixed-increment
// form). One 64-bit word of state; replica streams are derived by mixing the
// replica index into the master seed, so parallel execution cannot change
// which stream a replica sees.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit mantissa
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool next_sign_bit() { return (next_u64() & 1ULL) != 0; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica_index) {
  // one extra mixing round so adjacent replica indices land far apart
  SplitMix64 mix(master_seed ^ (0x632be59bd9b4e019ULL * (replica_index + 1)));
  return mix.next_u64();
}

}  // namespace logsum
