#pragma once

#include <cstdint>
#include <string>

#include "cmsr/transcript.hpp"

namespace cmsr {

/// Exact rational, reduced, den >= 1. Cut-set values outside this
/// construction's parameter family need not be integers; they are kept
/// exact and flagged rather than rounded.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool integral() const { return den == 1; }
    bool equals(std::int64_t v) const { return den == 1 && num == v; }
    std::string str() const;
};

/// Smallest number of symbols any repair of f failures from r_sz helpers
/// can move when every pairwise exchange counts: f*(r_sz+f-1)*l / (f+r_sz-k).
Ratio cutset_cooperative(std::int64_t k, std::int64_t l, std::int64_t f, std::int64_t r_sz);

/// Same with inter-failed-node traffic free: f*r_sz*l / (f+r_sz-k).
Ratio cutset_centralized(std::int64_t k, std::int64_t l, std::int64_t f, std::int64_t r_sz);

/**
 * log2 node sizes of the three known constructions reaching these bounds,
 * kept on the logarithm scale because the middle one's exponent is
 * binomial(n, h).
 *   lcm_power:          lcm(d-k+1, ..., d-k+h)^n        (centralized only)
 *   transform_iterated: ((h+d-k)(d-k)^(h-1))^C(n,h)
 *   plane_replicated:   (h+d-k)(d-k+1)^n                (this library)
 */
struct NodeSizeTable {
    double lcm_power_log2 = 0;
    double transform_iterated_log2 = 0;
    double plane_replicated_log2 = 0;
    bool transform_defined = true;  // false when d == k and h >= 2
};
NodeSizeTable node_size_table(int n, int k, int h, int d);

struct BoundReport {
    Ratio co_bound;
    Ratio ce_bound;
    std::int64_t naive = 0;  // h*k*l reference cost
    std::int64_t round1_total = 0;
    std::int64_t round2_total = 0;
    std::int64_t total = 0;
    bool co_met = false;
    bool ce_met = false;
};

/// Aggregates a finalized transcript against its session's bounds. With no
/// session attached the totals stand alone and both flags stay false.
BoundReport meter_close(const Transcript& t);

/// Totals, the naive baseline, and the `met:` verdict lines.
std::string bound_report_text(const BoundReport& r);

}  // namespace cmsr
