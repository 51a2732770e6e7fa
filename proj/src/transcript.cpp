#include "cmsr/transcript.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "cmsr/bounds.hpp"

namespace cmsr {

void Transcript::canonicalize() {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const TranscriptEntry& a, const TranscriptEntry& b) {
                         return std::tie(a.round, a.sender, a.receiver) <
                                std::tie(b.round, b.sender, b.receiver);
                     });
}

std::int64_t Transcript::round_total(int round) const {
    std::int64_t sum = 0;
    for (const auto& e : entries_)
        if (e.round == round) sum += e.symbols;
    return sum;
}

std::int64_t Transcript::total() const {
    std::int64_t sum = 0;
    for (const auto& e : entries_) sum += e.symbols;
    return sum;
}

std::string transcript_report(const Transcript& t) {
    std::ostringstream out;
    for (const auto& e : t.entries())
        out << "R" << e.round << " " << (e.sender + 1) << "->" << (e.receiver + 1) << " "
            << e.symbols << "\n";
    out << bound_report_text(meter_close(t));
    return out.str();
}

}  // namespace cmsr
