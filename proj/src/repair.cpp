#include "cmsr/repair.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cmsr/grs.hpp"

namespace cmsr {

int RepairPlan::rank_of(int node) const {
    for (std::size_t i = 0; i < failed.size(); ++i)
        if (failed[i] == node) return int(i);
    return -1;
}

RepairPlan make_repair_plan(const CodeParams& p, std::vector<int> failed,
                            std::vector<int> helpers) {
    std::sort(failed.begin(), failed.end());
    std::sort(helpers.begin(), helpers.end());
    if (int(failed.size()) != p.h)
        throw std::invalid_argument("plan needs exactly h = " + std::to_string(p.h) +
                                    " failed nodes, got " + std::to_string(failed.size()));
    if (int(helpers.size()) != p.d)
        throw std::invalid_argument("plan needs exactly d = " + std::to_string(p.d) +
                                    " helpers, got " + std::to_string(helpers.size()));
    auto check_ids = [&](const std::vector<int>& v, const char* what) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || v[i] >= p.n)
                throw std::invalid_argument(std::string(what) + " node id out of range");
            if (i > 0 && v[i] == v[i - 1])
                throw std::invalid_argument(std::string("duplicate ") + what + " node id");
        }
    };
    check_ids(failed, "failed");
    check_ids(helpers, "helper");
    for (int f : failed)
        if (std::binary_search(helpers.begin(), helpers.end(), f))
            throw std::invalid_argument("node " + std::to_string(f + 1) +
                                        " listed as both failed and helper");
    return RepairPlan{std::move(failed), std::move(helpers)};
}

RepairMessage helper_round1_response(const CodeParams& p, const RepairPlan& plan, int rank,
                                     int helper, const NodeVector& helper_content) {
    if (rank < 0 || rank >= p.h) throw std::invalid_argument("rank out of range");
    if (!std::binary_search(plan.helpers.begin(), plan.helpers.end(), helper))
        throw std::invalid_argument("node " + std::to_string(helper + 1) + " is not a helper");
    if (std::int64_t(helper_content.size()) != p.l)
        throw std::invalid_argument("helper content must hold l symbols");

    const std::int64_t S = p.plane_size;
    const int fu = plan.failed[std::size_t(rank)];
    const int s = p.s;
    const int last_plane = s - 1 + rank;

    RepairMessage msg{1, helper, fu, std::vector<Symbol>(std::size_t(S), 0)};
    Symbol* out = msg.payload.data();
    const Symbol* node = helper_content.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < S; ++a) {
        const int du = p.digit(a, fu);
        Symbol acc = 0;
        for (int j = 0; j < s - 1; ++j)
            acc ^= node[std::int64_t(j) * S + p.with_digit(a, fu, (du + j) % s)];
        acc ^= node[std::int64_t(last_plane) * S + p.with_digit(a, fu, (du + s - 1) % s)];
        out[a] = acc;
    }
    return msg;
}

PartialNode round1_decode(const CodeParams& p, const RepairPlan& plan, int rank,
                          const std::vector<RepairMessage>& responses) {
    if (rank < 0 || rank >= p.h) throw std::invalid_argument("rank out of range");
    const int fu = plan.failed[std::size_t(rank)];
    const std::int64_t S = p.plane_size;
    const int s = p.s;
    const int n = p.n;
    const int rho = n - p.k;

    // Exactly one response per helper, all addressed to this node.
    std::vector<const Symbol*> payload_of(std::size_t(n), nullptr);
    for (const auto& msg : responses) {
        if (msg.round != 1 || msg.receiver != fu)
            throw std::invalid_argument("response does not belong to this round-1 decode");
        if (!std::binary_search(plan.helpers.begin(), plan.helpers.end(), msg.sender))
            throw std::invalid_argument("round-1 response from non-helper node " +
                                        std::to_string(msg.sender + 1));
        if (std::int64_t(msg.payload.size()) != S)
            throw std::invalid_argument("round-1 payload must hold s^n symbols");
        if (payload_of[std::size_t(msg.sender)] != nullptr)
            throw std::invalid_argument("duplicate round-1 response from node " +
                                        std::to_string(msg.sender + 1));
        payload_of[std::size_t(msg.sender)] = msg.payload.data();
    }
    for (int hnode : plan.helpers)
        if (payload_of[std::size_t(hnode)] == nullptr)
            throw std::invalid_argument("missing round-1 response from helper " +
                                        std::to_string(hnode + 1));

    PartialNode part;
    part.owner = fu;
    part.rank = rank;
    part.planes.assign(std::size_t(p.m), {});
    for (int j = 0; j < s - 1; ++j) part.planes[std::size_t(j)].assign(std::size_t(S), 0);
    part.planes[std::size_t(s - 1 + rank)].assign(std::size_t(S), 0);
    part.cross_sums.assign(std::size_t(p.h), {});
    for (int w = 0; w < p.h; ++w)
        if (w != rank) part.cross_sums[std::size_t(w)].assign(std::size_t(S), 0);

    // The slice layout is fixed across a: positions 0..s-1 belong to the
    // failed node's own point row, then every other node ascending.
    const std::size_t N = std::size_t(n) + std::size_t(s) - 1;
    std::vector<int> tail;  // nodes != fu, ascending
    tail.reserve(std::size_t(n) - 1);
    for (int i = 0; i < n; ++i)
        if (i != fu) tail.push_back(i);
    std::vector<std::uint8_t> unknown(N, 1);
    std::vector<int> tail_rank(tail.size());
    for (std::size_t t = 0; t < tail.size(); ++t) {
        if (payload_of[std::size_t(tail[t])] != nullptr) unknown[std::size_t(s) + t] = 0;
        tail_rank[t] = plan.rank_of(tail[t]);
    }

#pragma omp parallel
    {
        detail::GrsScratch scratch(p.field, rho);
        std::vector<Symbol> points(N);
        std::vector<Symbol> values(N);

#pragma omp for schedule(static)
        for (std::int64_t a = 0; a < S; ++a) {
            const int du = p.digit(a, fu);
            for (int j = 0; j < s; ++j)
                points[std::size_t(j)] = p.lam(fu, (du + j) % s);
            for (std::size_t t = 0; t < tail.size(); ++t) {
                const int i = tail[t];
                points[std::size_t(s) + t] = p.lam(i, p.digit(a, i));
                values[std::size_t(s) + t] =
                    unknown[std::size_t(s) + t] ? 0 : payload_of[std::size_t(i)][a];
            }
            for (int j = 0; j < s; ++j) values[std::size_t(j)] = 0;
            scratch.solve(points, values, unknown);

            for (int j = 0; j < s - 1; ++j)
                part.planes[std::size_t(j)][std::size_t(p.with_digit(a, fu, (du + j) % s))] =
                    values[std::size_t(j)];
            part.planes[std::size_t(s - 1 + rank)]
                       [std::size_t(p.with_digit(a, fu, (du + s - 1) % s))] =
                values[std::size_t(s - 1)];
            for (std::size_t t = 0; t < tail.size(); ++t) {
                const int w = tail_rank[t];
                if (w >= 0) part.cross_sums[std::size_t(w)][std::size_t(a)] = values[std::size_t(s) + t];
            }
        }
    }
    return part;
}

RepairMessage round2_message(const CodeParams& p, const RepairPlan& plan,
                             const PartialNode& sender_state, int receiver_rank) {
    if (receiver_rank < 0 || receiver_rank >= p.h)
        throw std::invalid_argument("receiver rank out of range");
    if (receiver_rank == sender_state.rank)
        throw std::invalid_argument("a failed node does not message itself");
    const auto& sums = sender_state.cross_sums;
    if (int(sums.size()) != p.h || sums[std::size_t(receiver_rank)].empty())
        throw std::invalid_argument("sender has not completed round 1 for this receiver");
    return RepairMessage{2, sender_state.owner, plan.failed[std::size_t(receiver_rank)],
                         sums[std::size_t(receiver_rank)]};
}

NodeVector round2_finish(const CodeParams& p, const RepairPlan& plan, const PartialNode& partial,
                         const std::vector<RepairMessage>& incoming) {
    const std::int64_t S = p.plane_size;
    const int s = p.s;
    const int rank = partial.rank;
    const int fu = partial.owner;

    std::vector<const Symbol*> payload_from(std::size_t(p.h), nullptr);
    for (const auto& msg : incoming) {
        if (msg.round != 2 || msg.receiver != fu)
            throw std::invalid_argument("message does not belong to this round-2 completion");
        const int w = plan.rank_of(msg.sender);
        if (w < 0 || w == rank)
            throw std::invalid_argument("round-2 message from unexpected node " +
                                        std::to_string(msg.sender + 1));
        if (std::int64_t(msg.payload.size()) != S)
            throw std::invalid_argument("round-2 payload must hold s^n symbols");
        if (payload_from[std::size_t(w)] != nullptr)
            throw std::invalid_argument("duplicate round-2 message from node " +
                                        std::to_string(msg.sender + 1));
        payload_from[std::size_t(w)] = msg.payload.data();
    }
    for (int w = 0; w < p.h; ++w)
        if (w != rank && payload_from[std::size_t(w)] == nullptr)
            throw std::invalid_argument("missing round-2 message from failed node " +
                                        std::to_string(plan.failed[std::size_t(w)] + 1));

    NodeVector node(std::size_t(p.l), 0);
    for (int j = 0; j < s - 1; ++j) {
        if (std::int64_t(partial.planes[std::size_t(j)].size()) != S)
            throw std::invalid_argument("partial node is missing plane " + std::to_string(j));
        std::copy(partial.planes[std::size_t(j)].begin(), partial.planes[std::size_t(j)].end(),
                  node.begin() + std::int64_t(j) * S);
    }
    std::copy(partial.planes[std::size_t(s - 1 + rank)].begin(),
              partial.planes[std::size_t(s - 1 + rank)].end(),
              node.begin() + std::int64_t(s - 1 + rank) * S);

    for (int w = 0; w < p.h; ++w) {
        if (w == rank) continue;
        const Symbol* payload = payload_from[std::size_t(w)];
        const int iw = plan.failed[std::size_t(w)];
        Symbol* out_plane = node.data() + std::int64_t(s - 1 + w) * S;

#pragma omp parallel for schedule(static)
        for (std::int64_t a = 0; a < S; ++a) {
            const int dw = p.digit(a, iw);
            Symbol acc = payload[a];
            for (int j = 0; j < s - 1; ++j)
                acc ^= node[std::int64_t(j) * S + p.with_digit(a, iw, (dw + j) % s)];
            out_plane[p.with_digit(a, iw, (dw + s - 1) % s)] = acc;
        }
    }
    return node;
}

RepairOutcome cooperative_repair(const CodeParams& p, const RepairPlan& plan,
                                 const std::vector<const NodeVector*>& available) {
    if (int(available.size()) != p.n)
        throw std::invalid_argument("available must list all n node slots");
    for (int hnode : plan.helpers)
        if (available[std::size_t(hnode)] == nullptr)
            throw std::invalid_argument("helper " + std::to_string(hnode + 1) +
                                        " content unavailable");

    RepairOutcome out;
    const int h = p.h;

    // Round 1: every helper answers every failed node before any decode.
    std::vector<std::vector<RepairMessage>> round1;
    round1.resize(std::size_t(h));
    for (int rank = 0; rank < h; ++rank) {
        for (int helper : plan.helpers) {
            RepairMessage msg = helper_round1_response(p, plan, rank, helper,
                                                       *available[std::size_t(helper)]);
            out.transcript.record(msg.round, msg.sender, msg.receiver,
                                  std::int64_t(msg.payload.size()));
            round1[std::size_t(rank)].push_back(std::move(msg));
        }
    }

    std::vector<PartialNode> partial;
    partial.reserve(std::size_t(h));
    for (int rank = 0; rank < h; ++rank)
        partial.push_back(round1_decode(p, plan, rank, round1[std::size_t(rank)]));

    // Round 2: pairwise exchange between the failed nodes.
    std::vector<std::vector<RepairMessage>> round2;
    round2.resize(std::size_t(h));
    for (int receiver = 0; receiver < h; ++receiver) {
        for (int sender = 0; sender < h; ++sender) {
            if (sender == receiver) continue;
            RepairMessage msg = round2_message(p, plan, partial[std::size_t(sender)], receiver);
            out.transcript.record(msg.round, msg.sender, msg.receiver,
                                  std::int64_t(msg.payload.size()));
            round2[std::size_t(receiver)].push_back(std::move(msg));
        }
    }

    for (int rank = 0; rank < h; ++rank)
        out.nodes.push_back(round2_finish(p, plan, partial[std::size_t(rank)],
                                          round2[std::size_t(rank)]));

    out.transcript.set_session(SessionInfo{p.k, p.l, p.h, p.d});
    out.transcript.canonicalize();
    return out;
}

}  // namespace cmsr
