#include "cmsr/params.hpp"

#include <stdexcept>
#include <string>

#include "cmsr/rng.hpp"

namespace cmsr {

namespace {

void check_digit_args(std::int64_t a, int s, int n) {
    if (s < 1) throw std::invalid_argument("digit radix s must be >= 1");
    if (n < 1) throw std::invalid_argument("digit count n must be >= 1");
    std::int64_t limit = 1;
    for (int i = 0; i < n; ++i) {
        if (limit > (std::int64_t(1) << 62) / (s > 0 ? s : 1))
            throw std::invalid_argument("s^n overflows");
        limit *= s;
    }
    if (a < 0 || a >= limit)
        throw std::invalid_argument("index " + std::to_string(a) + " outside [0, s^n)");
}

}  // namespace

int digit_at(std::int64_t a, int s, int n, int pos) {
    check_digit_args(a, s, n);
    if (pos < 0 || pos >= n) throw std::invalid_argument("digit position out of range");
    for (int i = 0; i < pos; ++i) a /= s;
    return int(a % s);
}

std::vector<int> digits(std::int64_t a, int s, int n) {
    check_digit_args(a, s, n);
    std::vector<int> out(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        out[std::size_t(i)] = int(a % s);
        a /= s;
    }
    return out;
}

std::int64_t from_digits(const std::vector<int>& ds, int s) {
    std::int64_t a = 0;
    for (std::size_t i = ds.size(); i > 0; --i) a = a * s + ds[i - 1];
    return a;
}

std::int64_t replace_digit(std::int64_t a, int s, int n, int pos, int u) {
    check_digit_args(a, s, n);
    if (pos < 0 || pos >= n) throw std::invalid_argument("digit position out of range");
    if (u < 0 || u >= s) throw std::invalid_argument("replacement digit out of range");
    std::int64_t p = 1;
    for (int i = 0; i < pos; ++i) p *= s;
    const std::int64_t cur = (a / p) % s;
    return a + (std::int64_t(u) - cur) * p;
}

void validate_code_parameters(int n, int k, int h, int d) {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("invalid parameters: " + what);
    };
    if (!(1 <= k)) fail("k >= 1 violated (k = " + std::to_string(k) + ")");
    if (!(k < n)) fail("k < n violated (" + std::to_string(k) + " >= " + std::to_string(n) + ")");
    if (!(k <= d)) fail("k <= d violated (" + std::to_string(k) + " > " + std::to_string(d) + ")");
    if (!(1 <= h)) fail("h >= 1 violated (h = " + std::to_string(h) + ")");
    if (!(h + d <= n))
        fail("h + d <= n violated (" + std::to_string(h) + " + " + std::to_string(d) + " > " +
             std::to_string(n) + ")");
    if (!(h <= n - k))
        fail("h <= n - k violated (" + std::to_string(h) + " > " + std::to_string(n - k) + ")");
}

CodeParams make_params(int n, int k, int h, int d, std::optional<int> width_hint,
                       std::optional<std::uint64_t> seed, std::int64_t symbol_guard) {
    validate_code_parameters(n, k, h, d);

    const int s = d + 1 - k;
    const int m = d + h - k;

    // s^n under the guard; bail before the multiplication can overflow.
    std::vector<std::int64_t> s_pow(std::size_t(n) + 1);
    s_pow[0] = 1;
    for (int i = 1; i <= n; ++i) {
        const std::int64_t prev = s_pow[std::size_t(i) - 1];
        if (prev > symbol_guard || prev > (std::int64_t(1) << 62) / s)
            throw std::invalid_argument("s^n exceeds the memory guard of " +
                                        std::to_string(symbol_guard) + " symbols");
        s_pow[std::size_t(i)] = prev * s;
    }
    const std::int64_t plane_size = s_pow[std::size_t(n)];
    const std::int64_t l = plane_size * m;
    if (l > symbol_guard / n)
        throw std::invalid_argument("l*n = " + std::to_string(l) + "*" + std::to_string(n) +
                                    " symbols exceeds the memory guard of " +
                                    std::to_string(symbol_guard));

    // Need s*n distinct nonzero points, hence order >= s*n + 1.
    const std::int64_t needed = std::int64_t(s) * n + 1;
    int width = 0;
    if (width_hint) {
        width = *width_hint;
        if (!Field::width_supported(width))
            throw std::invalid_argument("unsupported field width " + std::to_string(width));
        if ((std::int64_t(1) << width) < needed)
            throw std::invalid_argument("field width " + std::to_string(width) +
                                        " too small: order must be >= s*n+1 = " +
                                        std::to_string(needed));
    } else {
        for (int w : {4, 8, 16}) {
            if ((std::int64_t(1) << w) >= needed) { width = w; break; }
        }
        if (width == 0)
            throw std::invalid_argument("no supported field has order >= s*n+1 = " +
                                        std::to_string(needed));
    }

    CodeParams p{.n = n,
                 .k = k,
                 .h = h,
                 .d = d,
                 .s = s,
                 .m = m,
                 .plane_size = plane_size,
                 .l = l,
                 .field = Field(width),
                 .lambda = {},
                 .lambda_seed = seed,
                 .s_pow = std::move(s_pow)};

    const std::size_t count = std::size_t(n) * std::size_t(s);
    p.lambda.resize(count);
    if (!seed) {
        for (std::size_t idx = 0; idx < count; ++idx) p.lambda[idx] = Symbol(idx + 1);
    } else {
        std::vector<Symbol> pool(p.field.order() - 1);
        for (std::size_t v = 0; v < pool.size(); ++v) pool[v] = Symbol(v + 1);
        Rng rng(*seed);
        rng.shuffle(pool);
        for (std::size_t idx = 0; idx < count; ++idx) p.lambda[idx] = pool[idx];
    }
    return p;
}

}  // namespace cmsr
