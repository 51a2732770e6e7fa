#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmsr/field.hpp"

namespace cmsr {

/**
 * Erasure completion for the dual-Vandermonde code
 *
 *   { v in F^N : sum_j points[j]^t v[j] = 0  for t = 0, ..., rho-1 }
 *
 * over pairwise-distinct nonzero evaluation points. Exactly rho positions
 * must be flagged in `unknown`; they are overwritten in place with the
 * unique completion, found by Gaussian elimination on the rho x rho
 * Vandermonde system restricted to the unknown columns.
 */
void grs_erasure_solve(const Field& f, std::span<const Symbol> points, int rho,
                       std::span<Symbol> values, std::span<const std::uint8_t> unknown);

namespace detail {

/// Scratch buffers for repeated solves. Kernels keep one per worker
/// thread; preconditions are the caller's problem here.
class GrsScratch {
public:
    GrsScratch(const Field& f, int rho) : f_(&f), rho_(rho) {
        mat_.resize(std::size_t(rho) * (std::size_t(rho) + 1));
        unk_.resize(std::size_t(rho));
    }

    void solve(std::span<const Symbol> points, std::span<Symbol> values,
               std::span<const std::uint8_t> unknown);

private:
    const Field* f_;
    int rho_;
    std::vector<Symbol> mat_;  // rho rows, rho+1 columns (augmented)
    std::vector<int> unk_;
};

}  // namespace detail
}  // namespace cmsr
