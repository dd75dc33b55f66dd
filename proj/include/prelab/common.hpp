#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace prelab {

// Element sets and relation rows are 64-bit masks; carriers are capped at
// 64 elements (far above desk scale, which the enumeration guards enforce).
using Row = std::uint64_t;

inline constexpr int kMaxElements = 64;

inline Row bit(int i) { return Row{1} << i; }
inline bool has(Row m, int i) { return (m >> i) & Row{1}; }
inline Row full_mask(int n) { return n >= kMaxElements ? ~Row{0} : (Row{1} << n) - 1; }

inline int popcount(Row m) {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_popcountll(m);
#else
    int c = 0;
    while (m) { m &= m - 1; ++c; }
    return c;
#endif
}

/// Thrown when an enumeration guard (size limit) is exceeded.
struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed or ill-typed inputs (bad indices, law violations,
/// mismatched carriers).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace prelab
