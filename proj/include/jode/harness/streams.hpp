#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

#include "jode/core/model.hpp"

namespace jode::harness {

/// 64-bit FNV-1a hash of a purpose tag.
[[nodiscard]] std::uint64_t tag_hash(std::string_view tag) noexcept;

/// Independent generator for one (seed, trial, purpose) triple. The triple is
/// mixed through splitmix64 and expanded with std::seed_seq, so the stream
/// depends only on its inputs and never on scheduling.
[[nodiscard]] RngStream derive_stream(std::uint64_t seed, std::uint64_t index, std::string_view tag);

/// Worker count: JODE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jode::harness
