#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace sumgauge {

// std::mt19937_64's raw output sequence is pinned by the standard; the
// bounded draw and the shuffle are hand-rolled because the stdlib versions
// (uniform_int_distribution, std::shuffle) differ between runtimes and the
// reports must be byte-identical everywhere.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  // n >= 1; unbiased rejection sampling
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t overflow = (max % n + 1) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (overflow == 0 || r <= max - overflow) return r % n;
  }
}

template <class T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::uint64_t j = bounded_uniform(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

// n distinct indices from [0, population), uniform without replacement,
// returned in increasing order.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed);

}  // namespace sumgauge
