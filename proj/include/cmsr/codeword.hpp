#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cmsr/params.hpp"

namespace cmsr {

/// One node's l symbols, plane-major: index = plane * plane_size + a.
using NodeVector = std::vector<Symbol>;

struct Codeword {
    std::vector<NodeVector> nodes;  // size n
};

/**
 * Systematic encode. Nodes 0..k-1 carry the message verbatim; for every
 * (plane, a) slice the parity nodes are the unique completion of the
 * slice's parity checks. message.size() must be k*l.
 *
 * Slices are independent, so the loop is parallel; results are identical
 * to sequential execution.
 */
Codeword encode(const CodeParams& p, std::span<const Symbol> message);

/// Residual of every parity check, indexed ((t * m) + plane) * plane_size + a.
/// All-zero exactly when the word is a codeword.
std::vector<Symbol> parity_residual(const CodeParams& p, const Codeword& w);

/// Recovers the unique codeword agreeing with exactly k distinct nodes.
Codeword mds_decode(const CodeParams& p,
                    const std::vector<std::pair<int, NodeVector>>& available);

}  // namespace cmsr
