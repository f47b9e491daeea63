#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cpdiv {

// Independent engine for one (seed, stream) pair, so replication or path i
// draws the same numbers regardless of which thread runs it.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Each index is processed exactly once; order is unspecified.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body);

} // namespace cpdiv

#include "cpdiv/detail/parallel_for.hpp"
