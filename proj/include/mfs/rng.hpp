#pragma once

// Counter-based SplitMix64 generator.
//
// Output k (k = 0, 1, ...) of the stream keyed by (seed, stream) is
//
//    mix64(key + (k + 1) * 0x9e3779b97f4a7c15),   key = mix64(seed ^ mix64(stream + 0x632be59bd9b4e019))
//
// where mix64 is the SplitMix64 finalizer. Distinct stream ids give
// statistically independent sequences from one seed, so instance data and
// random starts can be regenerated independently of each other.
//
// Uniforms use the top 53 bits shifted by half an ulp, so they lie in the
// open interval (0, 1). Normals use the Box-Muller transform; both values of
// each pair are used, cosine branch first.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace mfs {

inline constexpr std::uint64_t mix64(std::uint64_t z)
{
   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
   z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
   return z ^ (z >> 31);
}

/// Combines a seed with further identifiers into a new 64-bit seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id)
{
   return mix64(seed ^ mix64(id + 0x9e3779b97f4a7c15ULL));
}

class CounterRng {
public:
   static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

   CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL)))
   {}

   std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

   /// Uniform on (0, 1).
   double uniform()
   {
      return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
   }

   /// Uniform integer in [0, bound), by rejection.
   std::uint64_t below(std::uint64_t bound)
   {
      const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
      std::uint64_t v = next_u64();
      while (v >= limit) {
         v = next_u64();
      }
      return v % bound;
   }

   double normal()
   {
      if (has_spare_) {
         has_spare_ = false;
         return spare_;
      }
      const double u1 = uniform();
      const double u2 = uniform();
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      spare_ = radius * std::sin(angle);
      has_spare_ = true;
      return radius * std::cos(angle);
   }

   std::uint64_t counter() const { return counter_; }

private:
   std::uint64_t key_;
   std::uint64_t counter_ = 0;
   double spare_ = 0.0;
   bool has_spare_ = false;
};

/// Stream ids used by the instance generator and experiment driver.
enum class RngStream : std::uint64_t { InstanceData = 1, Start = 2, Grid = 3 };

inline CounterRng make_rng(std::uint64_t seed, RngStream stream, std::uint64_t index = 0)
{
   return CounterRng(seed, (static_cast<std::uint64_t>(stream) << 32) + index);
}

} // namespace mfs
