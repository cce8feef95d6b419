#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "quasicover/oracles.hpp"
#include "quasicover/packed_text.hpp"
#include "quasicover/pillar.hpp"
#include "quasicover/pillar_covers.hpp"

namespace quasicover {

/// Binary de Bruijn sequence of order k: the necklace concatenation (FKM)
/// followed by its first k-1 symbols, as a '0'/'1' string.
inline std::string de_bruijn(std::size_t k)
{
    if (k == 0 || k > 30) {
        throw std::invalid_argument("de_bruijn: order must be in [1..30]");
    }
    std::string seq;
    seq.reserve((std::size_t{1} << k) + k - 1);
    std::vector<int> a(k + 1, 0);
    // iterative generation of Lyndon words in lexicographic order
    std::size_t len = 1;
    while (true) {
        if (k % len == 0) {
            for (std::size_t i = 1; i <= len; ++i) {
                seq.push_back(static_cast<char>('0' + a[i]));
            }
        }
        for (std::size_t i = len + 1; i <= k; ++i) {
            a[i] = a[i - len];
        }
        len = k;
        while (len > 0 && a[len] == 1) {
            --len;
        }
        if (len == 0) {
            break;
        }
        ++a[len];
    }
    seq.append(seq, 0, k - 1);
    return seq;
}

inline constexpr std::string_view kPhi0 = "abababaabaababa";
inline constexpr std::string_view kPhi1 = "abababaababaaba";

inline std::string_view phi(char bit)
{
    if (bit == '0') {
        return kPhi0;
    }
    if (bit == '1') {
        return kPhi1;
    }
    throw std::invalid_argument("phi: bit must be '0' or '1'");
}

/// Substrings at least this long occur once in T_k.
inline constexpr std::size_t unique_length(std::size_t k) noexcept { return 15 * (k + 1) - 1; }

inline std::uint64_t query_budget(std::size_t k) noexcept
{
    return (std::uint64_t{1} << k) / (6 * k);
}

inline bool all_windows_distinct(std::string_view s, std::size_t len)
{
    if (len > s.size()) {
        return true;
    }
    std::unordered_set<std::string_view> seen;
    seen.reserve(s.size() - len + 1);
    for (std::size_t i = 0; i + len <= s.size(); ++i) {
        if (!seen.insert(s.substr(i, len)).second) {
            return false;
        }
    }
    return true;
}

/// T_k = phi(de Bruijn of order k) over {a, b}.
inline std::string build_tk(std::size_t k)
{
    const std::string b = de_bruijn(k);
    std::string t;
    t.reserve(15 * b.size());
    for (char bit : b) {
        t.append(phi(bit));
    }
    if (k <= 14 && !all_windows_distinct(t, unique_length(k))) {
        throw std::logic_error("build_tk: long substrings are not distinct");
    }
    return t;
}

/// a -> 0, b -> 1.
inline std::vector<Symbol> ab_symbols(std::string_view s)
{
    std::vector<Symbol> out(s.size());
    std::transform(s.begin(), s.end(), out.begin(), [](char ch) { return ch == 'a' ? 0u : 1u; });
    return out;
}

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Answers queries on the single text T_k (id 0). Short IPM patterns and all
/// other primitives are answered as in T_k; IPM with a pattern of length at
/// least unique_length(k) reports only whether X lies inside Y.
class Adversary : public PillarBackend {
public:
    explicit Adversary(std::size_t k)
        : k_(k),
          reference_(build_tk(k)),
          inner_({PackedText::pack(ab_symbols(reference_), 2)}),
          ledger_({reference_.size()}),
          budget_(query_budget(k))
    {
    }

    Answer answer(const Query& q) override
    {
        if (ledger_.total() >= budget_) {
            throw BudgetExhausted("adversary: query budget of " + std::to_string(budget_) + " reached");
        }
        validate_query(q, inner_.lengths());
        Answer a;
        if (q.kind == Primitive::Ipm && q.x.length() >= unique_length(k_)) {
            if (q.y.start <= q.x.start && q.x.end <= q.y.end) {
                a.occurrences = Progression::singleton(q.x.start - q.y.start);
            }
        } else {
            a = inner_.answer(q);
        }
        ledger_.record(q, a, unique_length(k_));
        return a;
    }

    std::size_t k() const noexcept { return k_; }
    std::size_t n() const noexcept { return reference_.size(); }
    std::uint64_t budget() const noexcept { return budget_; }
    const std::string& reference() const noexcept { return reference_; }
    const QueryLedger& ledger() const noexcept { return ledger_; }

private:
    std::size_t k_;
    std::string reference_;
    DirectBackend inner_;
    QueryLedger ledger_;
    std::uint64_t budget_;
};

inline bool has_cover_naive(std::string_view text, std::size_t len)
{
    return is_cover_naive(ab_symbols(text), len);
}

inline std::size_t shortest_cover_naive(std::string_view text)
{
    return all_covers_naive(ab_symbols(text)).front();
}

struct Completion {
    std::size_t position = 0;
    std::string cover_text;
    std::string superprimitive_text;
    bool cover_replays = false;
    bool superprimitive_replays = false;
    bool cover_check = false;
    bool superprimitive_check = false;
    /// Untouched positions rejected before `position` was accepted.
    std::size_t rejected = 0;

    bool ok() const noexcept { return cover_replays && superprimitive_replays && cover_check && superprimitive_check; }
};

inline bool replays(const std::vector<std::pair<Query, Answer>>& transcript, const std::string& text)
{
    DirectBackend b({PackedText::pack(ab_symbols(text), 2)});
    return !first_replay_mismatch(transcript, b).has_value();
}

/// Picks the smallest untouched position whose flipped completion replays the
/// transcript and is superprimitive. Throws if the run touched every position.
inline Completion finalize(const Adversary& adv)
{
    const auto& ledger = adv.ledger();
    if (!ledger.first_untouched(0)) {
        throw std::logic_error("finalize: every position was touched");
    }
    Completion c;
    c.cover_text = adv.reference();
    c.cover_replays = replays(ledger.transcript(), c.cover_text);
    c.cover_check = has_cover_naive(c.cover_text, 3);
    std::size_t from = 0;
    while (const auto i = ledger.first_untouched(0, from)) {
        std::string flipped = adv.reference();
        flipped[*i] = flipped[*i] == 'a' ? 'b' : 'a';
        c.position = *i;
        c.superprimitive_text = std::move(flipped);
        c.superprimitive_replays = replays(ledger.transcript(), c.superprimitive_text);
        c.superprimitive_check = shortest_cover_naive(c.superprimitive_text) == c.superprimitive_text.size();
        if (c.superprimitive_replays && c.superprimitive_check) {
            return c;
        }
        ++c.rejected;
        from = *i + 1;
    }
    return c;
}

/// Issues random primitives until the budget runs out. Fragment lengths are
/// kept below 3 * unique_length(k) so that Extract stays local.
inline void drive_random_queries(Adversary& adv, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t n = adv.n();
    const std::size_t cap = 3 * unique_length(adv.k());
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    auto fragment = [&](std::size_t min_len, std::size_t max_len) {
        max_len = std::min(max_len, n);
        min_len = std::min(min_len, max_len);
        const std::size_t len = min_len + pick(max_len - min_len + 1);
        const std::size_t start = pick(n - len + 1);
        return Fragment{0, start, start + len};
    };
    try {
        for (std::uint64_t i = 0; i < adv.budget(); ++i) {
            switch (pick(6)) {
            case 0:
                adv.length(0);
                break;
            case 1:
                adv.access(Fragment{0, 0, n}, pick(n));
                break;
            case 2: {
                const Fragment f = fragment(1, cap);
                adv.extract(f, 0, f.length());
                break;
            }
            case 3:
                adv.lcp(fragment(1, cap), fragment(1, cap));
                break;
            case 4:
                adv.lcp_r(fragment(1, cap), fragment(1, cap));
                break;
            default: {
                const Fragment x = fragment(1, cap);
                if (pick(2) == 0) {
                    // a window around X, so large patterns get a containment hit
                    const std::size_t lo = x.start - std::min(x.start, pick(x.length() / 2 + 1));
                    const std::size_t hi = std::min(n, lo + 2 * x.length());
                    adv.ipm(x, Fragment{0, lo, hi});
                } else {
                    adv.ipm(x, fragment(x.length(), 2 * x.length()));
                }
                break;
            }
            }
        }
    } catch (const BudgetExhausted&) {
    }
}

/// Runs the cover pipeline on the adversary until the budget runs out.
/// Returns true if it completed within the budget.
inline bool drive_cover_pipeline(Adversary& adv)
{
    try {
        covers_pillar(adv, 0);
        return true;
    } catch (const BudgetExhausted&) {
        return false;
    }
}

struct ExperimentReport {
    std::size_t k = 0;
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t queries_issued = 0;
    std::size_t touched_count = 0;
    std::size_t flip_position = 0;
    bool cover_check = false;
    bool superprimitive_check = false;
    bool cover_replays = false;
    bool superprimitive_replays = false;
    std::size_t rejected_positions = 0;
    std::string driver;

    /// |touched| < 45 q (k+1), with q = 0 meaning nothing may be touched.
    bool touched_within_bound() const noexcept
    {
        return q == 0 ? touched_count == 0 : touched_count < 45 * q * (k + 1);
    }
    bool ok() const noexcept
    {
        return touched_within_bound() && queries_issued <= q && cover_check && superprimitive_check &&
               cover_replays && superprimitive_replays;
    }
};

inline ExperimentReport run_experiment(std::size_t k, std::string_view driver, std::uint64_t seed = 1)
{
    Adversary adv(k);
    if (driver == "random-queries") {
        drive_random_queries(adv, seed);
    } else if (driver == "cover-pipeline") {
        drive_cover_pipeline(adv);
    } else {
        throw std::invalid_argument("run_experiment: unknown driver '" + std::string(driver) + "'");
    }
    const Completion c = finalize(adv);
    ExperimentReport r;
    r.k = k;
    r.n = adv.n();
    r.q = adv.budget();
    r.queries_issued = adv.ledger().total();
    r.touched_count = adv.ledger().touched_count(0);
    r.flip_position = c.position;
    r.cover_check = c.cover_check;
    r.superprimitive_check = c.superprimitive_check;
    r.cover_replays = c.cover_replays;
    r.superprimitive_replays = c.superprimitive_replays;
    r.rejected_positions = c.rejected;
    r.driver = std::string(driver);
    return r;
}

}  // namespace quasicover
