#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cmsr/field.hpp"

namespace cmsr {

/// make_params rejects parameter sets needing more than this many symbols
/// across all n nodes (l grows as s^n).
inline constexpr std::int64_t kDefaultSymbolGuard = std::int64_t(1) << 26;

// --- s-ary index helpers -------------------------------------------------
//
// A plane index a in [0, s^n) is addressed through its n-digit s-ary
// expansion (a_0, ..., a_{n-1}); digit 0 is the least significant. These
// validate their arguments; kernels use the unchecked CodeParams methods.

int digit_at(std::int64_t a, int s, int n, int pos);
std::vector<int> digits(std::int64_t a, int s, int n);
std::int64_t from_digits(const std::vector<int>& ds, int s);

/// Returns a with digit `pos` replaced by u.
std::int64_t replace_digit(std::int64_t a, int s, int n, int pos, int u);

// --- code parameters ------------------------------------------------------

/**
 * Everything that defines one code instance:
 *   n nodes, dimension k, repair target of h failures from d helpers,
 *   s = d+1-k, m = d+h-k planes per node, l = m * s^n symbols per node,
 *   the field, and the n x s table of evaluation points (all distinct,
 *   all nonzero).
 */
struct CodeParams {
    int n = 0;
    int k = 0;
    int h = 0;
    int d = 0;
    int s = 0;                     // d + 1 - k
    int m = 0;                     // d + h - k, planes per node
    std::int64_t plane_size = 0;   // s^n, symbols per plane
    std::int64_t l = 0;            // m * plane_size, symbols per node
    Field field;
    std::vector<Symbol> lambda;    // n*s, row-major by node
    std::optional<std::uint64_t> lambda_seed;  // nullopt = canonical assignment
    std::vector<std::int64_t> s_pow;           // s^0 .. s^n

    Symbol lam(int node, int j) const {
        return lambda[std::size_t(node) * std::size_t(s) + std::size_t(j)];
    }
    int digit(std::int64_t a, int pos) const {
        return int((a / s_pow[pos]) % s);
    }
    /// a with digit `pos` set to u; unchecked.
    std::int64_t with_digit(std::int64_t a, int pos, int u) const {
        return a + (std::int64_t(u) - digit(a, pos)) * s_pow[pos];
    }
};

/// Validates the parameter inequalities alone (no field, no guard); throws
/// std::invalid_argument naming the violated inequality.
void validate_code_parameters(int n, int k, int h, int d);

/**
 * Builds a CodeParams. The field is the smallest supported width whose
 * order is at least s*n + 1 (points exclude 0) unless width_hint overrides.
 * Evaluation points default to the canonical assignment
 * lambda[i][j] = i*s + j + 1; a seed selects a reproducible shuffle of the
 * nonzero field elements instead.
 */
CodeParams make_params(int n, int k, int h, int d,
                       std::optional<int> width_hint = std::nullopt,
                       std::optional<std::uint64_t> seed = std::nullopt,
                       std::int64_t symbol_guard = kDefaultSymbolGuard);

}  // namespace cmsr
