#pragma once

#include <cstdint>

namespace landaulab::rng {

// SplitMix64 finalizer; the building block of the counter-based generator.
std::uint64_t mix(std::uint64_t x);

// Per-realization seed, recorded in run manifests.
std::uint64_t realization_seed(std::uint64_t experiment_seed, int realization);

// Counter-based site draw in [0,1). The value is a pure function of
// (experiment_seed, realization, site), so sampling order and worker count
// cannot change it. Seed schema (frozen):
//   k0 = mix(experiment_seed ^ GOLDEN*(realization+1))
//   k1 = mix(k0 ^ zigzag(i1)*C1)
//   u  = mix(k1 ^ zigzag(i2)*C2) -> top 53 bits
double site_uniform(std::uint64_t experiment_seed, int realization,
                    std::int64_t i1, std::int64_t i2);

// Generic keyed stream for auxiliary draws (start vectors, shuffles).
double keyed_uniform(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t counter);

}  // namespace landaulab::rng
