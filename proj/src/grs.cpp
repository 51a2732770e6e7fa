#include "cmsr/grs.hpp"

#include <stdexcept>
#include <string>

namespace cmsr {

namespace detail {

void GrsScratch::solve(std::span<const Symbol> points, std::span<Symbol> values,
                       std::span<const std::uint8_t> unknown) {
    const Field& f = *f_;
    const int rho = rho_;
    if (rho == 0) return;
    const std::size_t n = points.size();
    const std::size_t cols = std::size_t(rho) + 1;

    int u = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!unknown[j]) continue;
        if (u == rho) throw std::logic_error("more unknowns than parity checks");
        unk_[std::size_t(u++)] = int(j);
    }
    if (u != rho) throw std::logic_error("fewer unknowns than parity checks");

    // Augmented system: row t has the unknown points' t-th powers and, in
    // the last column, the sum of the known terms (its own negation in
    // characteristic 2). Powers build up incrementally.
    for (std::size_t t = 0; t < std::size_t(rho); ++t) mat_[t * cols + std::size_t(rho)] = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (unknown[j]) continue;
        Symbol acc = values[j];
        const Symbol pj = points[j];
        for (std::size_t t = 0; t < std::size_t(rho); ++t) {
            mat_[t * cols + std::size_t(rho)] ^= acc;
            acc = f.mul(acc, pj);
        }
    }
    for (std::size_t c = 0; c < std::size_t(rho); ++c) {
        Symbol acc = 1;
        const Symbol pc = points[std::size_t(unk_[c])];
        for (std::size_t t = 0; t < std::size_t(rho); ++t) {
            mat_[t * cols + c] = acc;
            acc = f.mul(acc, pc);
        }
    }

    // Gauss-Jordan; any nonzero pivot works in an exact field.
    for (std::size_t col = 0; col < std::size_t(rho); ++col) {
        std::size_t piv = col;
        while (piv < std::size_t(rho) && mat_[piv * cols + col] == 0) ++piv;
        if (piv == std::size_t(rho))
            throw std::logic_error("singular system: evaluation points not distinct");
        if (piv != col)
            for (std::size_t c = col; c < cols; ++c)
                std::swap(mat_[piv * cols + c], mat_[col * cols + c]);
        const Symbol scale = f.inv(mat_[col * cols + col]);
        for (std::size_t c = col; c < cols; ++c)
            mat_[col * cols + c] = f.mul(mat_[col * cols + c], scale);
        for (std::size_t r = 0; r < std::size_t(rho); ++r) {
            if (r == col) continue;
            const Symbol factor = mat_[r * cols + col];
            if (factor == 0) continue;
            for (std::size_t c = col; c < cols; ++c)
                mat_[r * cols + c] ^= f.mul(factor, mat_[col * cols + c]);
        }
    }

    for (std::size_t c = 0; c < std::size_t(rho); ++c)
        values[std::size_t(unk_[c])] = mat_[c * cols + std::size_t(rho)];
}

}  // namespace detail

void grs_erasure_solve(const Field& f, std::span<const Symbol> points, int rho,
                       std::span<Symbol> values, std::span<const std::uint8_t> unknown) {
    const std::size_t n = points.size();
    if (values.size() != n || unknown.size() != n)
        throw std::invalid_argument("points/values/unknown length mismatch");
    if (rho < 0 || std::size_t(rho) > n)
        throw std::invalid_argument("parity count out of range");
    std::size_t marked = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (unknown[j]) ++marked;
    if (marked != std::size_t(rho))
        throw std::invalid_argument("expected exactly " + std::to_string(rho) +
                                    " unknown positions, got " + std::to_string(marked));
    for (std::size_t i = 0; i < n; ++i) {
        if (points[i] == 0) throw std::invalid_argument("evaluation points must be nonzero");
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("evaluation points must be pairwise distinct");
    }
    if (rho == 0) return;
    detail::GrsScratch scratch(f, rho);
    scratch.solve(points, values, unknown);
}

}  // namespace cmsr
