#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cgate::metrics {

// Length of the longest contiguous run shared by `a` and `b`; 0 if either is
// empty. Builds a suffix automaton over `a` and streams `b` through it, so
// the cost is linear in |a| + |b| (times the transition lookup).
size_t Lccs(std::span<const uint32_t> a, std::span<const uint32_t> b);

// Token-string form; tokens are interned before matching.
size_t Lccs(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace cgate::metrics
