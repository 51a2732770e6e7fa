#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cmsr {

/// One element of GF(2^w), stored as its integer representation.
/// Wide enough for every supported width.
using Symbol = std::uint16_t;

/**
 * Arithmetic context for GF(2^w), w in {4, 8, 16}.
 *
 * The reduction polynomial is fixed per width so that shard files written
 * by one build decode in any other:
 *   w = 4   x^4 + x + 1                  (0x13)
 *   w = 8   x^8 + x^4 + x^3 + x + 1      (0x11b)
 *   w = 16  x^16 + x^12 + x^3 + x + 1    (0x1100b)
 *
 * Multiplication goes through log/antilog tables built once at
 * construction. A Field is immutable afterwards and safe for unrestricted
 * concurrent reads; all operations are pure.
 */
class Field {
public:
    explicit Field(int width);

    int width() const { return width_; }
    std::uint32_t order() const { return order_; }
    std::uint32_t reduction_poly() const { return poly_; }
    Symbol generator() const { return gen_; }

    /// Characteristic-2 sum; doubles as subtraction.
    static Symbol add(Symbol a, Symbol b) { return a ^ b; }

    Symbol mul(Symbol a, Symbol b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[std::size_t(log_[a]) + std::size_t(log_[b])];
    }

    /// Multiplicative inverse; rejects 0.
    Symbol inv(Symbol a) const;

    /// a^t by discrete log. pow(a, 0) = 1 for a != 0; pow(0, 0) is
    /// rejected because evaluation points never include 0.
    Symbol pow(Symbol a, std::uint64_t t) const;

    static bool width_supported(int width) {
        return width == 4 || width == 8 || width == 16;
    }
    static std::uint32_t poly_for_width(int width);

private:
    Symbol slow_mul(Symbol a, Symbol b) const;  // shift-and-reduce, table build only

    int width_ = 0;
    std::uint32_t order_ = 0;
    std::uint32_t poly_ = 0;
    Symbol gen_ = 0;
    std::vector<std::uint16_t> log_;  // log_[0] unused
    std::vector<Symbol> exp_;         // doubled so mul needs no modular reduction
};

}  // namespace cmsr
