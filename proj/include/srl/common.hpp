#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace srl {

inline constexpr const char* version = "0.1.0";

/// Raised when an input violates a documented precondition (bad file,
/// non-finite entry, inconsistent sizes, out-of-range index, ...).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when matrix/operator shapes are incompatible with an operation.
class dimension_error : public validation_error {
public:
    explicit dimension_error(const std::string& what) : validation_error(what) {}
};

/// Raised when an enumeration budget is exhausted and no partial result
/// makes sense for the caller.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Tolerance policy: absolute floor plus relative term, used wherever two
// computed reals are compared.
inline constexpr double abs_tol_floor = 1e-12;
inline constexpr double rel_tol_default = 1e-10;

inline bool approx_equal(double a, double b,
                         double rel = rel_tol_default,
                         double abs_floor = abs_tol_floor) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(abs_floor, rel * scale);
}

inline constexpr double neg_infinity() {
    return -std::numeric_limits<double>::infinity();
}

/// Deterministic 64-bit splitmix step; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Portable uniform double in [0, 1) from a 64-bit word.  We avoid
/// std::uniform_real_distribution because its output is implementation
/// defined; seed determinism is part of the reproducibility contract.
inline double uniform_unit(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace srl
