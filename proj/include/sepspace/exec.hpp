#ifndef SEPSPACE_EXEC_HPP
#define SEPSPACE_EXEC_HPP

#include <cstdint>

namespace sepspace {

/// Execution policy for the bulk kernels (grid scans, probes, samplers).
/// `serial` is the reference path; `parallel` runs the same per-item work
/// under OpenMP. Both paths derive all randomness from (seed, item index),
/// so their results are identical for a fixed seed.
enum class Exec { serial, parallel };

/// splitmix64-style mixer used to derive independent per-item RNG seeds
/// from a user seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace sepspace

#endif
