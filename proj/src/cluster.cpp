#include "cmsr/cluster.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cmsr/repair.hpp"

namespace cmsr {

namespace {

std::string id_list(const std::vector<int>& nodes) {
    std::ostringstream out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out << ",";
        out << nodes[i] + 1;
    }
    return out.str();
}

}  // namespace

Cluster::Cluster(CodeParams params, std::span<const Symbol> message)
    : params_(std::move(params)) {
    oracle_ = encode(params_, message);
    shards_.assign(std::size_t(params_.n), std::nullopt);
    for (int i = 0; i < params_.n; ++i) shards_[std::size_t(i)] = oracle_.nodes[std::size_t(i)];
    log_.push_back("init n=" + std::to_string(params_.n) + " k=" + std::to_string(params_.k) +
                   " l=" + std::to_string(params_.l));
}

Cluster::Cluster(CodeParams params, std::vector<std::optional<NodeVector>> shards)
    : params_(std::move(params)), shards_(std::move(shards)) {
    if (int(shards_.size()) != params_.n)
        throw std::invalid_argument("expected one shard slot per node");
    std::vector<std::pair<int, NodeVector>> live;
    for (int i = 0; i < params_.n; ++i) {
        if (!shards_[std::size_t(i)]) continue;
        if (std::int64_t(shards_[std::size_t(i)]->size()) != params_.l)
            throw std::invalid_argument("shard " + std::to_string(i + 1) +
                                        " does not hold l symbols");
        if (int(live.size()) < params_.k) live.emplace_back(i, *shards_[std::size_t(i)]);
    }
    if (int(live.size()) < params_.k)
        throw std::invalid_argument("need at least k live shards, got " +
                                    std::to_string(live.size()));
    const int failed = params_.n - live_count();
    if (failed > params_.n - params_.k)
        throw std::invalid_argument("cluster lost: more than n-k shards failed");
    oracle_ = mds_decode(params_, live);
    log_.push_back("adopt live=" + std::to_string(live_count()));
}

bool Cluster::is_live(int node) const {
    if (node < 0 || node >= params_.n) throw std::invalid_argument("node id out of range");
    return shards_[std::size_t(node)].has_value();
}

int Cluster::live_count() const {
    int c = 0;
    for (const auto& s : shards_)
        if (s) ++c;
    return c;
}

const NodeVector& Cluster::shard(int node) const {
    if (!is_live(node)) throw std::invalid_argument("node " + std::to_string(node + 1) + " is failed");
    return *shards_[std::size_t(node)];
}

const NodeVector& Cluster::oracle_node(int node) const {
    if (node < 0 || node >= params_.n) throw std::invalid_argument("node id out of range");
    return oracle_.nodes[std::size_t(node)];
}

void Cluster::fail_nodes(const std::vector<int>& nodes) {
    std::vector<int> would_fail;
    for (int v : nodes) {
        if (v < 0 || v >= params_.n) throw std::invalid_argument("node id out of range");
        if (is_live(v)) would_fail.push_back(v);
    }
    std::sort(would_fail.begin(), would_fail.end());
    would_fail.erase(std::unique(would_fail.begin(), would_fail.end()), would_fail.end());
    const int after = params_.n - live_count() + int(would_fail.size());
    if (after > params_.n - params_.k)
        throw std::runtime_error("cluster lost: failing " + id_list(would_fail) +
                                 " would leave fewer than k live shards");
    for (int v : would_fail) {
        shards_[std::size_t(v)].reset();
        log_.push_back("fail " + std::to_string(v + 1));
    }
}

void Cluster::install(int node, NodeVector content) {
    shards_[std::size_t(node)] = std::move(content);
    log_.push_back("install " + std::to_string(node + 1));
}

BoundReport Cluster::run_cooperative_repair(const std::vector<int>& failed,
                                            const std::vector<int>& helpers) {
    if (failed.empty()) {
        log_.push_back("repair skipped: no failed nodes requested");
        Transcript t;
        t.set_session(SessionInfo{params_.k, params_.l, 0, params_.d});
        return meter_close(t);
    }
    for (int f : failed)
        if (is_live(f))
            throw std::invalid_argument("node " + std::to_string(f + 1) + " is not failed");
    for (int r : helpers)
        if (!is_live(r))
            throw std::invalid_argument("helper " + std::to_string(r + 1) + " is not live");

    RepairPlan plan = make_repair_plan(params_, failed, helpers);
    log_.push_back("repair cooperative failed=" + id_list(plan.failed) +
                   " helpers=" + id_list(plan.helpers));

    std::vector<const NodeVector*> available(std::size_t(params_.n), nullptr);
    for (int i = 0; i < params_.n; ++i)
        if (shards_[std::size_t(i)]) available[std::size_t(i)] = &*shards_[std::size_t(i)];

    RepairOutcome outcome = cooperative_repair(params_, plan, available);
    for (const auto& e : outcome.transcript.entries()) {
        std::ostringstream line;
        line << "R" << e.round << " " << (e.sender + 1) << "->" << (e.receiver + 1) << " "
             << e.symbols;
        log_.push_back(line.str());
    }
    for (int rank = 0; rank < int(plan.failed.size()); ++rank)
        install(plan.failed[std::size_t(rank)], std::move(outcome.nodes[std::size_t(rank)]));

    BoundReport report = meter_close(outcome.transcript);
    log_.push_back("repair done total=" + std::to_string(report.total) +
                   " co_met=" + (report.co_met ? "yes" : "no") +
                   " ce_met=" + (report.ce_met ? "yes" : "no"));
    log_.push_back(std::string("verify after repair: ") + (verify() ? "pass" : "FAIL"));
    return report;
}

BoundReport Cluster::run_naive_repair(const std::vector<int>& failed) {
    if (failed.empty()) {
        log_.push_back("repair skipped: no failed nodes requested");
        Transcript t;
        t.set_session(SessionInfo{params_.k, params_.l, 0, params_.d});
        return meter_close(t);
    }
    for (int f : failed)
        if (is_live(f))
            throw std::invalid_argument("node " + std::to_string(f + 1) + " is not failed");

    std::vector<int> sorted_failed = failed;
    std::sort(sorted_failed.begin(), sorted_failed.end());
    sorted_failed.erase(std::unique(sorted_failed.begin(), sorted_failed.end()),
                        sorted_failed.end());
    Transcript t;
    t.set_session(SessionInfo{params_.k, params_.l, std::int64_t(sorted_failed.size()), params_.d});

    std::vector<std::pair<int, NodeVector>> sources;
    for (int i = 0; i < params_.n && int(sources.size()) < params_.k; ++i)
        if (shards_[std::size_t(i)]) sources.emplace_back(i, *shards_[std::size_t(i)]);
    if (int(sources.size()) < params_.k)
        throw std::runtime_error("fewer than k live nodes; cluster lost");

    log_.push_back("repair naive failed=" + id_list(sorted_failed));
    // Every failed node pulls the same k full shards.
    for (int f : sorted_failed) {
        for (const auto& [src, node] : sources) {
            t.record(1, src, f, std::int64_t(node.size()));
        }
    }
    t.canonicalize();
    for (const auto& e : t.entries()) {
        std::ostringstream line;
        line << "R" << e.round << " " << (e.sender + 1) << "->" << (e.receiver + 1) << " "
             << e.symbols;
        log_.push_back(line.str());
    }

    Codeword decoded = mds_decode(params_, sources);
    for (int f : sorted_failed) install(f, decoded.nodes[std::size_t(f)]);

    BoundReport report = meter_close(t);
    log_.push_back("repair done total=" + std::to_string(report.total) +
                   " co_met=" + (report.co_met ? "yes" : "no") +
                   " ce_met=" + (report.ce_met ? "yes" : "no"));
    log_.push_back(std::string("verify after repair: ") + (verify() ? "pass" : "FAIL"));
    return report;
}

bool Cluster::verify() const {
    std::vector<std::pair<int, NodeVector>> live;
    for (int i = 0; i < params_.n; ++i)
        if (shards_[std::size_t(i)] && int(live.size()) < params_.k)
            live.emplace_back(i, *shards_[std::size_t(i)]);
    if (int(live.size()) < params_.k)
        throw std::runtime_error("verify needs at least k live shards");

    if (live_count() == params_.n) {
        Codeword w;
        w.nodes.reserve(std::size_t(params_.n));
        for (int i = 0; i < params_.n; ++i) w.nodes.push_back(*shards_[std::size_t(i)]);
        for (Symbol r : parity_residual(params_, w))
            if (r != 0) return false;
        return true;
    }
    Codeword w = mds_decode(params_, live);
    for (int i = 0; i < params_.n; ++i) {
        if (!shards_[std::size_t(i)]) continue;
        if (*shards_[std::size_t(i)] != w.nodes[std::size_t(i)]) return false;
    }
    return true;
}

void Cluster::inject_corruption(int node, std::int64_t index, Symbol mask) {
    if (!is_live(node)) throw std::invalid_argument("cannot corrupt a failed shard");
    if (index < 0 || index >= params_.l) throw std::invalid_argument("symbol index out of range");
    (*shards_[std::size_t(node)])[std::size_t(index)] ^= mask;
    log_.push_back("corrupt " + std::to_string(node + 1) + " @" + std::to_string(index));
}

}  // namespace cmsr
