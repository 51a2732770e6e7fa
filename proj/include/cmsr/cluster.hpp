#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmsr/bounds.hpp"
#include "cmsr/codeword.hpp"

namespace cmsr {

/**
 * Deterministic in-process simulation of an n-node cluster: failure
 * injection, metered repair, and a line-oriented event log. Channels are
 * synchronous and lossless with a barrier between the two repair rounds;
 * identical inputs always reproduce byte-identical logs and meters.
 *
 * The simulator keeps a private copy of the original codeword purely so
 * tests and the bench harness can compare repaired content against ground
 * truth; no repair path reads it.
 */
class Cluster {
public:
    /// Encodes a fresh cluster from k*l message symbols.
    Cluster(CodeParams params, std::span<const Symbol> message);

    /// Adopts existing shard contents (empty slots are failed). Needs at
    /// least k live shards; the comparison copy is the unique codeword
    /// agreeing with the first k of them.
    Cluster(CodeParams params, std::vector<std::optional<NodeVector>> shards);

    const CodeParams& params() const { return params_; }

    /// Drops the listed shards. Idempotent per node; throws once more than
    /// n-k slots would be failed, since the cluster would be lost.
    void fail_nodes(const std::vector<int>& nodes);

    /// Two-round cooperative repair of `failed` (must all be failed slots)
    /// from the d helpers in `helpers`. Installs the rebuilt shards and
    /// returns the closed meter report.
    BoundReport run_cooperative_repair(const std::vector<int>& failed,
                                       const std::vector<int>& helpers);

    /// Baseline: every failed node downloads k full nodes and decodes.
    BoundReport run_naive_repair(const std::vector<int>& failed);

    /// True when the live shards agree with a single codeword (full parity
    /// check when all n are live). Needs at least k live shards.
    bool verify() const;

    bool is_live(int node) const;
    int live_count() const;
    const NodeVector& shard(int node) const;
    const std::vector<std::string>& event_log() const { return log_; }

    /// Test-only fault injection: XOR a mask into one stored symbol.
    void inject_corruption(int node, std::int64_t index, Symbol mask);

    /// Ground-truth copy for test comparison; not consulted by any repair
    /// or verification path.
    const NodeVector& oracle_node(int node) const;

private:
    void install(int node, NodeVector content);

    CodeParams params_;
    std::vector<std::optional<NodeVector>> shards_;
    Codeword oracle_;
    std::vector<std::string> log_;
};

}  // namespace cmsr
