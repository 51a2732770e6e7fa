#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmsr {

struct TranscriptEntry {
    int round = 0;     // 1 or 2
    int sender = 0;    // 0-based node ids
    int receiver = 0;
    std::int64_t symbols = 0;
};

/// Code-level context a transcript was recorded against, so the meter can
/// judge the measured totals against the cut-set values.
struct SessionInfo {
    std::int64_t k = 0;
    std::int64_t l = 0;
    std::int64_t f = 0;  // failed count
    std::int64_t r = 0;  // helper count
};

/**
 * Symbol-exact record of every repair message. The meter counts payload
 * lengths, never encodings, so a transcript total is directly comparable
 * with the cut-set bounds.
 */
class Transcript {
public:
    void record(int round, int sender, int receiver, std::int64_t symbols) {
        entries_.push_back({round, sender, receiver, symbols});
    }

    /// Canonical (round, sender, receiver) order, independent of execution
    /// order within a round.
    void canonicalize();

    void set_session(const SessionInfo& s) { session_ = s; }
    const std::optional<SessionInfo>& session() const { return session_; }

    std::int64_t round_total(int round) const;
    std::int64_t total() const;
    const std::vector<TranscriptEntry>& entries() const { return entries_; }

private:
    std::vector<TranscriptEntry> entries_;
    std::optional<SessionInfo> session_;
};

/// One line per message (`R<round> <sender>-><receiver> <symbols>`,
/// 1-based node ids), then totals and bound verdicts.
std::string transcript_report(const Transcript& t);

}  // namespace cmsr
