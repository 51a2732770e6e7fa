#include "cmsr/field.hpp"

#include <stdexcept>
#include <string>

namespace cmsr {

std::uint32_t Field::poly_for_width(int width) {
    switch (width) {
    case 4: return 0x13;
    case 8: return 0x11b;
    case 16: return 0x1100b;
    default:
        throw std::invalid_argument("unsupported field width " + std::to_string(width) +
                                    " (supported: 4, 8, 16)");
    }
}

Symbol Field::slow_mul(Symbol a, Symbol b) const {
    std::uint32_t acc = 0;
    std::uint32_t x = a;
    std::uint32_t y = b;
    while (y != 0) {
        if (y & 1) acc ^= x;
        y >>= 1;
        x <<= 1;
        if (x & order_) x ^= poly_;
    }
    return Symbol(acc);
}

Field::Field(int width)
    : width_(width), order_(1u << width), poly_(poly_for_width(width)) {
    const std::uint32_t nonzero = order_ - 1;
    log_.assign(order_, 0);
    exp_.assign(std::size_t(2) * nonzero, 0);

    // Smallest multiplicative generator; the fixed polynomials all admit
    // one (g=2 for w=4 and w=16, g=3 for w=8), but search anyway so the
    // invariant is checked at construction.
    for (std::uint32_t g = 2; g < order_; ++g) {
        std::vector<std::uint16_t> log_try(order_, 0);
        Symbol x = 1;
        std::uint32_t steps = 0;
        bool ok = true;
        do {
            if (x != 1 && log_try[x] != 0) { ok = false; break; }
            log_try[x] = std::uint16_t(steps);
            exp_[steps] = x;
            x = slow_mul(x, Symbol(g));
            ++steps;
        } while (x != 1 && steps < nonzero);
        if (ok && steps == nonzero && x == 1) {
            gen_ = Symbol(g);
            log_try[1] = 0;
            log_ = std::move(log_try);
            for (std::uint32_t i = 0; i < nonzero; ++i) exp_[nonzero + i] = exp_[i];
            return;
        }
    }
    throw std::logic_error("no generator found; reduction polynomial is not primitive");
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw std::domain_error("inverse of zero field element");
    const std::uint32_t nonzero = order_ - 1;
    return exp_[nonzero - log_[a]];
}

Symbol Field::pow(Symbol a, std::uint64_t t) const {
    if (a == 0) {
        if (t == 0) throw std::domain_error("0^0 is undefined here");
        return 0;
    }
    const std::uint64_t nonzero = order_ - 1;
    const std::uint64_t e = (std::uint64_t(log_[a]) * (t % nonzero)) % nonzero;
    return exp_[e];
}

}  // namespace cmsr
