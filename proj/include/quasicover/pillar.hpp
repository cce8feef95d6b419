#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quasicover/fragment.hpp"
#include "quasicover/packed_text.hpp"
#include "quasicover/progressions.hpp"

namespace quasicover {

enum class Primitive : unsigned { Extract = 0, Lcp, LcpR, Ipm, Access, Length };

inline constexpr std::size_t kPrimitiveCount = 6;

inline constexpr std::string_view primitive_name(Primitive p) noexcept
{
    switch (p) {
    case Primitive::Extract: return "Extract";
    case Primitive::Lcp: return "LCP";
    case Primitive::LcpR: return "LCP_R";
    case Primitive::Ipm: return "IPM";
    case Primitive::Access: return "Access";
    case Primitive::Length: return "Length";
    }
    return "?";
}

/// Thrown when an IPM query violates |Y| <= 2|X| or |X| >= 1.
class contract_violation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One primitive call. For Extract, [lo, hi) is relative to x; for Access,
/// lo is the index into x; Length reads only x.text.
struct Query {
    Primitive kind = Primitive::Length;
    Fragment x{};
    Fragment y{};
    std::size_t lo = 0;
    std::size_t hi = 0;

    friend bool operator==(const Query&, const Query&) = default;
};

/// `value` carries the LCP/LCP_R/Length result or the accessed symbol.
struct Answer {
    std::size_t value = 0;
    std::vector<Symbol> text;
    std::optional<Progression> occurrences;

    friend bool operator==(const Answer&, const Answer&) = default;
};

inline Query make_extract(Fragment s, std::size_t lo, std::size_t hi) { return {Primitive::Extract, s, {}, lo, hi}; }
inline Query make_lcp(Fragment x, Fragment y) { return {Primitive::Lcp, x, y, 0, 0}; }
inline Query make_lcp_r(Fragment x, Fragment y) { return {Primitive::LcpR, x, y, 0, 0}; }
inline Query make_ipm(Fragment x, Fragment y) { return {Primitive::Ipm, x, y, 0, 0}; }
inline Query make_access(Fragment s, std::size_t i) { return {Primitive::Access, s, {}, i, 0}; }
inline Query make_length(std::size_t text) { return {Primitive::Length, {text, 0, 0}, {}, 0, 0}; }

/// Anything that answers primitive queries over a string collection.
class PillarBackend {
public:
    virtual ~PillarBackend() = default;

    virtual Answer answer(const Query& q) = 0;

    std::size_t length(std::size_t text) { return answer(make_length(text)).value; }
    Fragment whole(std::size_t text) { return {text, 0, length(text)}; }
    Symbol access(Fragment s, std::size_t i) { return static_cast<Symbol>(answer(make_access(s, i)).value); }
    std::vector<Symbol> extract(Fragment s, std::size_t lo, std::size_t hi)
    {
        return answer(make_extract(s, lo, hi)).text;
    }
    std::size_t lcp(Fragment x, Fragment y) { return answer(make_lcp(x, y)).value; }
    std::size_t lcp_r(Fragment x, Fragment y) { return answer(make_lcp_r(x, y)).value; }
    std::optional<Progression> ipm(Fragment x, Fragment y) { return answer(make_ipm(x, y)).occurrences; }
};

/// Range and contract checks shared by every backend.
inline void validate_query(const Query& q, std::span<const std::size_t> lengths)
{
    auto check_text = [&](std::size_t id) {
        if (id >= lengths.size()) {
            throw std::out_of_range("query: unknown text id " + std::to_string(id));
        }
    };
    auto check_fragment = [&](const Fragment& f) {
        check_text(f.text);
        if (f.start > f.end || f.end > lengths[f.text]) {
            throw std::out_of_range("query: fragment outside its text");
        }
    };
    switch (q.kind) {
    case Primitive::Length:
        check_text(q.x.text);
        break;
    case Primitive::Access:
        check_fragment(q.x);
        if (q.lo >= q.x.length()) {
            throw std::out_of_range("Access: index outside fragment");
        }
        break;
    case Primitive::Extract:
        check_fragment(q.x);
        if (q.lo > q.hi || q.hi > q.x.length()) {
            throw std::out_of_range("Extract: need 0 <= l <= r <= |S|");
        }
        break;
    case Primitive::Lcp:
    case Primitive::LcpR:
        check_fragment(q.x);
        check_fragment(q.y);
        break;
    case Primitive::Ipm:
        check_fragment(q.x);
        check_fragment(q.y);
        if (q.x.length() == 0) {
            throw contract_violation("IPM: pattern must be non-empty");
        }
        if (q.y.length() > 2 * q.x.length()) {
            throw contract_violation("IPM: need |Y| <= 2|X|");
        }
        break;
    }
}

/// Positions of `pattern` in `text` via the prefix function; O(|pattern| + |text|).
inline std::vector<std::size_t> kmp_occurrences(std::span<const Symbol> pattern,
                                                std::span<const Symbol> text)
{
    std::vector<std::size_t> occ;
    const std::size_t m = pattern.size();
    if (m == 0 || m > text.size()) {
        return occ;
    }
    std::vector<std::size_t> fail(m + 1, 0);
    for (std::size_t i = 1, k = 0; i < m; ++i) {
        while (k > 0 && pattern[i] != pattern[k]) {
            k = fail[k];
        }
        if (pattern[i] == pattern[k]) {
            ++k;
        }
        fail[i + 1] = k;
    }
    for (std::size_t i = 0, k = 0; i < text.size(); ++i) {
        while (k > 0 && (k == m || text[i] != pattern[k])) {
            k = fail[k];
        }
        if (text[i] == pattern[k]) {
            ++k;
        }
        if (k == m) {
            occ.push_back(i + 1 - m);
        }
    }
    return occ;
}

/// Packs a sorted position list that is known to be an arithmetic progression.
inline std::optional<Progression> as_progression(const std::vector<std::size_t>& occ)
{
    if (occ.empty()) {
        return std::nullopt;
    }
    const std::size_t d = occ.size() > 1 ? occ[1] - occ[0] : 0;
    for (std::size_t i = 2; i < occ.size(); ++i) {
        if (occ[i] - occ[i - 1] != d) {
            throw std::logic_error("occurrences do not form an arithmetic progression");
        }
    }
    return Progression::make(occ.front(), d, occ.size());
}

/// Answers every primitive directly on packed texts: LCP/LCP_R by word-parallel
/// comparison, IPM by a linear matcher.
class DirectBackend : public PillarBackend {
public:
    DirectBackend() = default;
    explicit DirectBackend(std::vector<PackedText> texts) : texts_(std::move(texts))
    {
        for (const auto& t : texts_) {
            lengths_.push_back(t.size());
        }
    }

    std::size_t add(PackedText t)
    {
        lengths_.push_back(t.size());
        texts_.push_back(std::move(t));
        return texts_.size() - 1;
    }

    const PackedText& text(std::size_t id) const { return texts_.at(id); }
    std::span<const std::size_t> lengths() const noexcept { return lengths_; }

    Answer answer(const Query& q) override
    {
        validate_query(q, lengths_);
        Answer a;
        switch (q.kind) {
        case Primitive::Length:
            a.value = lengths_[q.x.text];
            break;
        case Primitive::Access:
            a.value = texts_[q.x.text][q.x.start + q.lo];
            break;
        case Primitive::Extract:
            a.text = texts_[q.x.text].unpack(q.x.start + q.lo, q.x.start + q.hi);
            break;
        case Primitive::Lcp:
            a.value = packed_lcp(texts_[q.x.text], q.x.start, texts_[q.y.text], q.y.start,
                                 std::min(q.x.length(), q.y.length()));
            break;
        case Primitive::LcpR:
            a.value = packed_lcs(texts_[q.x.text], q.x.end, texts_[q.y.text], q.y.end,
                                 std::min(q.x.length(), q.y.length()));
            break;
        case Primitive::Ipm: {
            const auto pat = texts_[q.x.text].unpack(q.x.start, q.x.end);
            const auto hay = texts_[q.y.text].unpack(q.y.start, q.y.end);
            a.occurrences = as_progression(kmp_occurrences(pat, hay));
            break;
        }
        }
        return a;
    }

private:
    std::vector<PackedText> texts_;
    std::vector<std::size_t> lengths_;
};

/// Per-kind counts, touched positions per text, and the ordered transcript.
class QueryLedger {
public:
    QueryLedger() = default;
    explicit QueryLedger(std::vector<std::size_t> lengths) : lengths_(std::move(lengths))
    {
        for (auto len : lengths_) {
            touched_.emplace_back(len, false);
        }
        touched_count_.assign(lengths_.size(), 0);
    }

    const std::array<std::uint64_t, kPrimitiveCount>& counts() const noexcept { return counts_; }
    std::uint64_t count(Primitive p) const noexcept { return counts_[static_cast<unsigned>(p)]; }
    std::uint64_t total() const noexcept
    {
        std::uint64_t s = 0;
        for (auto c : counts_) {
            s += c;
        }
        return s;
    }

    bool touched(std::size_t text, std::size_t pos) const { return touched_.at(text).at(pos); }
    std::size_t touched_count(std::size_t text) const { return touched_count_.at(text); }
    const std::vector<std::pair<Query, Answer>>& transcript() const noexcept { return transcript_; }

    /// Smallest untouched position of `text` at or after `from`, if any.
    std::optional<std::size_t> first_untouched(std::size_t text, std::size_t from = 0) const
    {
        const auto& t = touched_.at(text);
        for (std::size_t i = from; i < t.size(); ++i) {
            if (!t[i]) {
                return i;
            }
        }
        return std::nullopt;
    }

    void touch(std::size_t text, std::size_t begin, std::size_t end)
    {
        auto& t = touched_.at(text);
        for (std::size_t i = begin; i < end && i < t.size(); ++i) {
            if (!t[i]) {
                t[i] = true;
                ++touched_count_[text];
            }
        }
    }

    /// Appends (q, a) to the transcript and applies the touch rules. IPM queries
    /// with |X| >= ipm_touch_limit reveal only containment and touch nothing.
    void record(const Query& q, const Answer& a,
                std::size_t ipm_touch_limit = std::numeric_limits<std::size_t>::max())
    {
        ++counts_[static_cast<unsigned>(q.kind)];
        apply_touches(q, a, ipm_touch_limit);
        transcript_.emplace_back(q, a);
    }

private:
    void apply_touches(const Query& q, const Answer& a, std::size_t ipm_touch_limit)
    {
        switch (q.kind) {
        case Primitive::Length:
            break;
        case Primitive::Access:
            touch(q.x.text, q.x.start + q.lo, q.x.start + q.lo + 1);
            break;
        case Primitive::Extract:
            touch(q.x.text, q.x.start + q.lo, q.x.start + q.hi);
            break;
        case Primitive::Lcp: {
            if (q.x.text == q.y.text && q.x.start == q.y.start) {
                break;  // answer is min(|X|, |Y|) regardless of content
            }
            const std::size_t l = a.value;
            // the first mismatching pair is revealed too
            const std::size_t extra = l < q.x.length() && l < q.y.length() ? 1 : 0;
            touch(q.x.text, q.x.start, q.x.start + l + extra);
            touch(q.y.text, q.y.start, q.y.start + l + extra);
            break;
        }
        case Primitive::LcpR: {
            if (q.x.text == q.y.text && q.x.end == q.y.end) {
                break;
            }
            const std::size_t l = a.value;
            const std::size_t extra = l < q.x.length() && l < q.y.length() ? 1 : 0;
            touch(q.x.text, q.x.end - l - extra, q.x.end);
            touch(q.y.text, q.y.end - l - extra, q.y.end);
            break;
        }
        case Primitive::Ipm:
            if (q.x.length() < ipm_touch_limit) {
                touch(q.x.text, q.x.start, q.x.end);
                touch(q.y.text, q.y.start, q.y.end);
            }
            break;
        }
    }

    std::vector<std::size_t> lengths_;
    std::array<std::uint64_t, kPrimitiveCount> counts_{};
    std::vector<std::vector<bool>> touched_;
    std::vector<std::size_t> touched_count_;
    std::vector<std::pair<Query, Answer>> transcript_;
};

/// Forwards to another backend and records every call in a ledger.
class InstrumentedBackend : public PillarBackend {
public:
    InstrumentedBackend(PillarBackend& inner, std::vector<std::size_t> lengths,
                        std::size_t ipm_touch_limit = std::numeric_limits<std::size_t>::max())
        : inner_(inner), ledger_(std::move(lengths)), ipm_touch_limit_(ipm_touch_limit)
    {
    }

    Answer answer(const Query& q) override
    {
        Answer a = inner_.answer(q);
        ledger_.record(q, a, ipm_touch_limit_);
        return a;
    }

    const QueryLedger& ledger() const noexcept { return ledger_; }

private:
    PillarBackend& inner_;
    QueryLedger ledger_;
    std::size_t ipm_touch_limit_;
};

/// Index of the first transcript entry that `backend` answers differently.
inline std::optional<std::size_t> first_replay_mismatch(
    const std::vector<std::pair<Query, Answer>>& transcript, PillarBackend& backend)
{
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        if (backend.answer(transcript[i].first) != transcript[i].second) {
            return i;
        }
    }
    return std::nullopt;
}

}  // namespace quasicover
