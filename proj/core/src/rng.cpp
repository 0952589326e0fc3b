#include "landaulab/rng.hpp"

namespace landaulab::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kC1 = 0xbf58476d1ce4e5b9ULL;
constexpr std::uint64_t kC2 = 0x94d049bb133111ebULL;

// Maps signed lattice indices to unsigned without collisions.
std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^
         static_cast<std::uint64_t>(v >> 63);
}

double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * kC1;
  x = (x ^ (x >> 27)) * kC2;
  return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t experiment_seed, int realization) {
  return mix(experiment_seed ^
             kGolden * (static_cast<std::uint64_t>(realization) + 1));
}

double site_uniform(std::uint64_t experiment_seed, int realization,
                    std::int64_t i1, std::int64_t i2) {
  const std::uint64_t k0 = realization_seed(experiment_seed, realization);
  const std::uint64_t k1 = mix(k0 ^ zigzag(i1) * kC1);
  return to_unit(mix(k1 ^ zigzag(i2) * kC2));
}

double keyed_uniform(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t counter) {
  return to_unit(mix(mix(seed ^ stream * kC1) ^ counter * kC2));
}

}  // namespace landaulab::rng
