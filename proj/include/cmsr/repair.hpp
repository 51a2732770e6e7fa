#pragma once

#include <vector>

#include "cmsr/codeword.hpp"
#include "cmsr/transcript.hpp"

namespace cmsr {

/**
 * One repair session's roster: which h nodes are being rebuilt and which d
 * live nodes serve as helpers. `failed` is kept sorted ascending; a failed
 * node's rank is its 0-based position in that order and selects the plane
 * (s-1+rank) it recovers in round 1.
 */
struct RepairPlan {
    std::vector<int> failed;   // sorted, size h
    std::vector<int> helpers;  // sorted, size d

    int rank_of(int node) const;  // -1 when not failed
};

RepairPlan make_repair_plan(const CodeParams& p, std::vector<int> failed,
                            std::vector<int> helpers);

struct RepairMessage {
    int round = 0;
    int sender = 0;
    int receiver = 0;             // failed node the payload serves
    std::vector<Symbol> payload;  // plane_size symbols, indexed by a
};

/**
 * Round-1 response of one helper for the failed node of the given rank:
 *
 *   payload[a] = sum_{j=0}^{s-2} c[helper][j][a(fu, a_fu + j)]
 *              + c[helper][s-1+rank][a(fu, a_fu + s-1)]
 *
 * with digit arithmetic mod s at the failed node's digit position fu.
 */
RepairMessage helper_round1_response(const CodeParams& p, const RepairPlan& plan, int rank,
                                     int helper, const NodeVector& helper_content);

/**
 * What one failed node knows after round 1: planes 0..s-2 plus plane
 * s-1+rank of itself, and for every other failed node the aligned sums it
 * will serve in round 2.
 */
struct PartialNode {
    int owner = 0;  // failed node id
    int rank = 0;
    std::vector<NodeVector> planes;               // size m; known entries non-empty
    std::vector<std::vector<Symbol>> cross_sums;  // size h; entry w != rank non-empty
};

/**
 * Solves, per index a, the length n+s-1 slice whose evaluation points are
 * the failed node's full point row followed by every other node's point;
 * the d helper coordinates are known from the responses and the remaining
 * n-k are solved. Results scatter into the owner's planes and into the
 * cross sums for the other failed nodes.
 */
PartialNode round1_decode(const CodeParams& p, const RepairPlan& plan, int rank,
                          const std::vector<RepairMessage>& responses);

/// Round-2 payload is read straight out of the sender's round-1 cross
/// sums; nothing is recomputed, so the exchange is valid before any node
/// finishes.
RepairMessage round2_message(const CodeParams& p, const RepairPlan& plan,
                             const PartialNode& sender_state, int receiver_rank);

/// Subtracts the known-plane terms from each incoming round-2 payload to
/// isolate plane s-1+w, completing the node.
NodeVector round2_finish(const CodeParams& p, const RepairPlan& plan, const PartialNode& partial,
                         const std::vector<RepairMessage>& incoming);

struct RepairOutcome {
    std::vector<NodeVector> nodes;  // size h, ordered by rank
    Transcript transcript;
};

/**
 * Full two-round session: h*d helper responses, h decodes, h*(h-1)
 * exchanges, h completions. `available[i]` supplies node i's content and
 * may be null anywhere outside the helper set; non-helpers are never read,
 * so the transcript cannot under-count.
 */
RepairOutcome cooperative_repair(const CodeParams& p, const RepairPlan& plan,
                                 const std::vector<const NodeVector*>& available);

}  // namespace cmsr
