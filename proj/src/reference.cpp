#include "cmsr/reference.hpp"

#include <stdexcept>
#include <string>

namespace cmsr::ref {

namespace {

// Completes one slice from the positions listed in `base` (size k), writing
// every other position. base values are read from `values` in place.
void complete_slice(const CodeParams& p, std::span<const Symbol> points,
                    std::span<Symbol> values, std::span<const int> base) {
    const Field& f = p.field;
    const int n = p.n;
    const int k = p.k;

    // w_i = 1 / prod_{j != i} (lambda_i + lambda_j)
    std::vector<Symbol> winv(std::size_t(n), 1);  // holds the product, inverted on use
    for (int i = 0; i < n; ++i) {
        Symbol prod = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) prod = f.mul(prod, Symbol(points[std::size_t(i)] ^ points[std::size_t(j)]));
        winv[std::size_t(i)] = prod;
    }

    // g(lambda_b) at the base positions.
    std::vector<Symbol> y(std::size_t(k), 0);
    for (int c = 0; c < k; ++c) {
        const int i = base[std::size_t(c)];
        y[std::size_t(c)] = f.mul(values[std::size_t(i)], winv[std::size_t(i)]);
    }

    // Lagrange denominators over the base points only.
    std::vector<Symbol> denom(std::size_t(k), 1);
    for (int c = 0; c < k; ++c)
        for (int c2 = 0; c2 < k; ++c2)
            if (c2 != c)
                denom[std::size_t(c)] =
                    f.mul(denom[std::size_t(c)],
                          Symbol(points[std::size_t(base[std::size_t(c)])] ^
                                 points[std::size_t(base[std::size_t(c2)])]));

    std::vector<std::uint8_t> in_base(std::size_t(n), 0);
    for (int c = 0; c < k; ++c) in_base[std::size_t(base[std::size_t(c)])] = 1;

    for (int i = 0; i < n; ++i) {
        if (in_base[std::size_t(i)]) continue;
        const Symbol x = points[std::size_t(i)];
        Symbol g = 0;
        for (int c = 0; c < k; ++c) {
            Symbol num = 1;
            for (int c2 = 0; c2 < k; ++c2)
                if (c2 != c) num = f.mul(num, Symbol(x ^ points[std::size_t(base[std::size_t(c2)])]));
            g ^= f.mul(y[std::size_t(c)], f.mul(num, f.inv(denom[std::size_t(c)])));
        }
        values[std::size_t(i)] = f.mul(g, f.inv(winv[std::size_t(i)]));
    }
}

}  // namespace

Codeword encode(const CodeParams& p, std::span<const Symbol> message) {
    if (std::int64_t(message.size()) != std::int64_t(p.k) * p.l)
        throw std::invalid_argument("message must hold exactly k*l symbols");

    Codeword w;
    w.nodes.assign(std::size_t(p.n), NodeVector(std::size_t(p.l), 0));
    for (int i = 0; i < p.k; ++i) {
        const Symbol* src = message.data() + std::size_t(i) * std::size_t(p.l);
        w.nodes[std::size_t(i)].assign(src, src + p.l);
    }

    std::vector<int> base(std::size_t(p.k));
    for (int i = 0; i < p.k; ++i) base[std::size_t(i)] = i;

    const std::int64_t S = p.plane_size;
    std::vector<Symbol> points(std::size_t(p.n));
    std::vector<Symbol> values(std::size_t(p.n));
    for (std::int64_t slice = 0; slice < std::int64_t(p.m) * S; ++slice) {
        const std::int64_t a = slice % S;
        for (int i = 0; i < p.n; ++i) {
            points[std::size_t(i)] = p.lam(i, p.digit(a, i));
            values[std::size_t(i)] = i < p.k ? w.nodes[std::size_t(i)][std::size_t(slice)] : 0;
        }
        complete_slice(p, points, values, base);
        for (int i = p.k; i < p.n; ++i)
            w.nodes[std::size_t(i)][std::size_t(slice)] = values[std::size_t(i)];
    }
    return w;
}

std::vector<Symbol> parity_residual(const CodeParams& p, const Codeword& w) {
    if (int(w.nodes.size()) != p.n) throw std::invalid_argument("codeword must have n nodes");
    const std::int64_t S = p.plane_size;
    const int rho = p.n - p.k;
    const std::int64_t slices = std::int64_t(p.m) * S;
    std::vector<Symbol> res(std::size_t(rho) * std::size_t(slices), 0);
    for (std::int64_t slice = 0; slice < slices; ++slice) {
        const std::int64_t a = slice % S;
        for (int t = 0; t < rho; ++t) {
            Symbol acc = 0;
            for (int i = 0; i < p.n; ++i) {
                const Symbol lam = p.lam(i, p.digit(a, i));
                acc ^= p.field.mul(p.field.pow(lam, std::uint64_t(t)),
                                   w.nodes[std::size_t(i)][std::size_t(slice)]);
            }
            res[std::size_t(t) * std::size_t(slices) + std::size_t(slice)] = acc;
        }
    }
    return res;
}

Codeword mds_decode(const CodeParams& p,
                    const std::vector<std::pair<int, NodeVector>>& available) {
    if (int(available.size()) != p.k)
        throw std::invalid_argument("mds_decode needs exactly k nodes");

    Codeword w;
    w.nodes.assign(std::size_t(p.n), NodeVector(std::size_t(p.l), 0));
    std::vector<int> base;
    for (const auto& [idx, node] : available) {
        if (idx < 0 || idx >= p.n) throw std::invalid_argument("node index out of range");
        w.nodes[std::size_t(idx)] = node;
        base.push_back(idx);
    }

    const std::int64_t S = p.plane_size;
    std::vector<Symbol> points(std::size_t(p.n));
    std::vector<Symbol> values(std::size_t(p.n));
    for (std::int64_t slice = 0; slice < std::int64_t(p.m) * S; ++slice) {
        const std::int64_t a = slice % S;
        for (int i = 0; i < p.n; ++i) {
            points[std::size_t(i)] = p.lam(i, p.digit(a, i));
            values[std::size_t(i)] = w.nodes[std::size_t(i)][std::size_t(slice)];
        }
        complete_slice(p, points, values, base);
        for (int i = 0; i < p.n; ++i) w.nodes[std::size_t(i)][std::size_t(slice)] = values[std::size_t(i)];
    }
    return w;
}

}  // namespace cmsr::ref
