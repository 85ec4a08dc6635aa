#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace domecast {

// SplitMix64 finalizer; maps (seed, stream) pairs to well-separated seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Portable generator: std::mt19937_64 is fully specified by the standard, and
// the uniform/normal transforms below are written out so that draws do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-seed+box-muller";

  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace domecast
