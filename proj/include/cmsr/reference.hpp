#pragma once

#include "cmsr/codeword.hpp"

namespace cmsr::ref {

// Serial reference implementations, kept for testing and benchmarking the
// parallel kernels. They take a deliberately different route: instead of
// eliminating on the parity system, each slice is completed through the
// dual-code factorization v_i = w_i * g(lambda_i) with
// w_i = 1 / prod_{j != i} (lambda_i - lambda_j) and deg g < k, so g is
// Lagrange-interpolated from the known positions and evaluated at the
// rest. Outputs are symbol-identical to the kernels in codeword.hpp.

Codeword encode(const CodeParams& p, std::span<const Symbol> message);
std::vector<Symbol> parity_residual(const CodeParams& p, const Codeword& w);
Codeword mds_decode(const CodeParams& p,
                    const std::vector<std::pair<int, NodeVector>>& available);

}  // namespace cmsr::ref
