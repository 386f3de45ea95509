// Process-wide instrumentation counters. Tests use them to assert contracts
// like "prediction makes zero oracle calls" and "batch prediction does not
// refactorize".
#pragma once

#include <atomic>
#include <cstdint>

namespace gppopf::counters {

inline std::atomic<std::uint64_t>& opf_solves() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

inline std::atomic<std::uint64_t>& cholesky_factorizations() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

}  // namespace gppopf::counters
