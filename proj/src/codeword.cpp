#include "cmsr/codeword.hpp"

#include <stdexcept>
#include <string>

#include "cmsr/grs.hpp"

namespace cmsr {

Codeword encode(const CodeParams& p, std::span<const Symbol> message) {
    const std::int64_t S = p.plane_size;
    if (std::int64_t(message.size()) != std::int64_t(p.k) * p.l)
        throw std::invalid_argument("message must hold exactly k*l = " +
                                    std::to_string(std::int64_t(p.k) * p.l) + " symbols, got " +
                                    std::to_string(message.size()));

    Codeword w;
    w.nodes.assign(std::size_t(p.n), NodeVector(std::size_t(p.l), 0));
    for (int i = 0; i < p.k; ++i) {
        const Symbol* src = message.data() + std::size_t(i) * std::size_t(p.l);
        w.nodes[std::size_t(i)].assign(src, src + p.l);
    }

    const int rho = p.n - p.k;
    const std::int64_t slices = std::int64_t(p.m) * S;

#pragma omp parallel
    {
        detail::GrsScratch scratch(p.field, rho);
        std::vector<Symbol> points(std::size_t(p.n));
        std::vector<Symbol> values(std::size_t(p.n));
        std::vector<std::uint8_t> unknown(std::size_t(p.n));
        for (int i = 0; i < p.n; ++i) unknown[std::size_t(i)] = i >= p.k;

#pragma omp for schedule(static)
        for (std::int64_t slice = 0; slice < slices; ++slice) {
            const std::int64_t a = slice % S;
            for (int i = 0; i < p.n; ++i) {
                points[std::size_t(i)] = p.lam(i, p.digit(a, i));
                values[std::size_t(i)] = i < p.k ? w.nodes[std::size_t(i)][std::size_t(slice)] : 0;
            }
            scratch.solve(points, values, unknown);
            for (int i = p.k; i < p.n; ++i)
                w.nodes[std::size_t(i)][std::size_t(slice)] = values[std::size_t(i)];
        }
    }
    return w;
}

std::vector<Symbol> parity_residual(const CodeParams& p, const Codeword& w) {
    if (int(w.nodes.size()) != p.n) throw std::invalid_argument("codeword must have n nodes");
    for (const auto& node : w.nodes)
        if (std::int64_t(node.size()) != p.l)
            throw std::invalid_argument("every node must hold l symbols");

    const std::int64_t S = p.plane_size;
    const int rho = p.n - p.k;
    const std::int64_t slices = std::int64_t(p.m) * S;
    std::vector<Symbol> res(std::size_t(rho) * std::size_t(slices), 0);

#pragma omp parallel
    {
        std::vector<Symbol> term(std::size_t(p.n));
        std::vector<Symbol> point(std::size_t(p.n));

#pragma omp for schedule(static)
        for (std::int64_t slice = 0; slice < slices; ++slice) {
            const std::int64_t a = slice % S;
            for (int i = 0; i < p.n; ++i) {
                term[std::size_t(i)] = w.nodes[std::size_t(i)][std::size_t(slice)];
                point[std::size_t(i)] = p.lam(i, p.digit(a, i));
            }
            for (int t = 0; t < rho; ++t) {
                Symbol acc = 0;
                for (int i = 0; i < p.n; ++i) acc ^= term[std::size_t(i)];
                res[std::size_t(t) * std::size_t(slices) + std::size_t(slice)] = acc;
                if (t + 1 < rho)
                    for (int i = 0; i < p.n; ++i)
                        term[std::size_t(i)] = p.field.mul(term[std::size_t(i)], point[std::size_t(i)]);
            }
        }
    }
    return res;
}

Codeword mds_decode(const CodeParams& p,
                    const std::vector<std::pair<int, NodeVector>>& available) {
    if (int(available.size()) != p.k)
        throw std::invalid_argument("mds_decode needs exactly k = " + std::to_string(p.k) +
                                    " nodes, got " + std::to_string(available.size()));
    std::vector<std::uint8_t> have(std::size_t(p.n), 0);
    for (const auto& [idx, node] : available) {
        if (idx < 0 || idx >= p.n) throw std::invalid_argument("node index out of range");
        if (have[std::size_t(idx)]) throw std::invalid_argument("duplicate node index");
        if (std::int64_t(node.size()) != p.l)
            throw std::invalid_argument("every node must hold l symbols");
        have[std::size_t(idx)] = 1;
    }

    Codeword w;
    w.nodes.assign(std::size_t(p.n), NodeVector(std::size_t(p.l), 0));
    for (const auto& [idx, node] : available) w.nodes[std::size_t(idx)] = node;

    const std::int64_t S = p.plane_size;
    const int rho = p.n - p.k;
    const std::int64_t slices = std::int64_t(p.m) * S;

#pragma omp parallel
    {
        detail::GrsScratch scratch(p.field, rho);
        std::vector<Symbol> points(std::size_t(p.n));
        std::vector<Symbol> values(std::size_t(p.n));
        std::vector<std::uint8_t> unknown(std::size_t(p.n));
        for (int i = 0; i < p.n; ++i) unknown[std::size_t(i)] = !have[std::size_t(i)];

#pragma omp for schedule(static)
        for (std::int64_t slice = 0; slice < slices; ++slice) {
            const std::int64_t a = slice % S;
            for (int i = 0; i < p.n; ++i) {
                points[std::size_t(i)] = p.lam(i, p.digit(a, i));
                values[std::size_t(i)] = w.nodes[std::size_t(i)][std::size_t(slice)];
            }
            scratch.solve(points, values, unknown);
            for (int i = 0; i < p.n; ++i)
                if (unknown[std::size_t(i)])
                    w.nodes[std::size_t(i)][std::size_t(slice)] = values[std::size_t(i)];
        }
    }
    return w;
}

}  // namespace cmsr
