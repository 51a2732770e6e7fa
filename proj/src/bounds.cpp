#include "cmsr/bounds.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cmsr {

namespace {

Ratio make_ratio(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("zero denominator in bound");
    if (den < 0) { num = -num; den = -den; }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a != 0) { num /= a; den /= a; }
    const __int128 lim = __int128(INT64_MAX);
    if (num > lim || num < -lim || den > lim)
        throw std::overflow_error("bound value exceeds 64-bit range");
    return Ratio{std::int64_t(num), std::int64_t(den)};
}

Ratio cutset(std::int64_t k, std::int64_t l, std::int64_t f, std::int64_t r_sz,
             bool cooperative) {
    if (f < 0) throw std::invalid_argument("failed count must be nonnegative");
    if (l < 0) throw std::invalid_argument("node size must be nonnegative");
    if (f == 0 || l == 0) return Ratio{0, 1};
    if (r_sz < k) throw std::invalid_argument("helper count below k");
    const __int128 den = __int128(f) + r_sz - k;
    const __int128 num =
        __int128(f) * (cooperative ? (__int128(r_sz) + f - 1) : __int128(r_sz)) * l;
    return make_ratio(num, den);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    if (a != 0 && b > UINT64_MAX / a) throw std::overflow_error(what);
    return a * b;
}

std::uint64_t lcm_range(std::int64_t lo, std::int64_t hi) {
    std::uint64_t acc = 1;
    for (std::int64_t v = lo; v <= hi; ++v) {
        const std::uint64_t g = std::gcd(acc, std::uint64_t(v));
        acc = checked_mul(acc / g, std::uint64_t(v), "lcm overflows 64 bits");
    }
    return acc;
}

std::uint64_t binomial(int n, int h) {
    std::uint64_t acc = 1;
    for (int i = 1; i <= h; ++i) {
        acc = checked_mul(acc, std::uint64_t(n - h + i), "binomial overflows 64 bits");
        acc /= std::uint64_t(i);
    }
    return acc;
}

}  // namespace

std::string Ratio::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Ratio cutset_cooperative(std::int64_t k, std::int64_t l, std::int64_t f, std::int64_t r_sz) {
    return cutset(k, l, f, r_sz, true);
}

Ratio cutset_centralized(std::int64_t k, std::int64_t l, std::int64_t f, std::int64_t r_sz) {
    return cutset(k, l, f, r_sz, false);
}

NodeSizeTable node_size_table(int n, int k, int h, int d) {
    if (n < 2 || k < 1 || k >= n || d < k || h < 1 || h + d > n)
        throw std::invalid_argument("invalid parameters for node size table");

    NodeSizeTable t;
    t.lcm_power_log2 = double(n) * std::log2(double(lcm_range(d - k + 1, d - k + h)));

    // base (h+d-k)(d-k)^(h-1), with 0^0 = 1 so h = 1 stays defined
    if (d == k && h >= 2) {
        t.transform_defined = false;
        t.transform_iterated_log2 = 0;
    } else {
        double base_log2 = std::log2(double(h + d - k));
        if (h > 1) base_log2 += double(h - 1) * std::log2(double(d - k));
        t.transform_iterated_log2 = double(binomial(n, h)) * base_log2;
    }

    t.plane_replicated_log2 =
        std::log2(double(h + d - k)) + double(n) * std::log2(double(d - k + 1));
    return t;
}

BoundReport meter_close(const Transcript& t) {
    BoundReport r;
    r.round1_total = t.round_total(1);
    r.round2_total = t.round_total(2);
    r.total = t.total();
    if (t.session()) {
        const SessionInfo& s = *t.session();
        r.co_bound = cutset_cooperative(s.k, s.l, s.f, s.r);
        r.ce_bound = cutset_centralized(s.k, s.l, s.f, s.r);
        r.naive = s.f * s.k * s.l;
        r.co_met = r.co_bound.equals(r.total);
        r.ce_met = r.ce_bound.equals(r.round1_total);
    }
    return r;
}

std::string bound_report_text(const BoundReport& r) {
    std::ostringstream out;
    out << "round1 total " << r.round1_total << "\n";
    out << "round2 total " << r.round2_total << "\n";
    out << "total " << r.total << "\n";
    out << "naive baseline " << r.naive << "\n";
    out << "co bound " << r.co_bound.str() << " met: " << (r.co_met ? "yes" : "no")
        << (r.co_bound.integral() ? "" : " (non-integral)") << "\n";
    out << "ce bound " << r.ce_bound.str() << " met: " << (r.ce_met ? "yes" : "no")
        << (r.ce_bound.integral() ? "" : " (non-integral)") << "\n";
    return out.str();
}

}  // namespace cmsr
