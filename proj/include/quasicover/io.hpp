#pragma once

// Text ingestion and serialization: progressions, PILLAR transcripts and
// experiment reports.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "quasicover/lower_bound.hpp"
#include "quasicover/packed_text.hpp"
#include "quasicover/pillar.hpp"
#include "quasicover/progressions.hpp"

namespace quasicover {

/// Symbols plus the alphabet size they were mapped to.
struct ParsedText {
    std::vector<Symbol> symbols;
    std::uint64_t sigma = 0;
};

/// Distinct bytes mapped to [0, sigma) in order of first occurrence.
inline ParsedText parse_bytes(std::string_view bytes, std::optional<std::uint64_t> sigma = std::nullopt)
{
    ParsedText out;
    std::map<unsigned char, Symbol> code;
    out.symbols.reserve(bytes.size());
    for (char ch : bytes) {
        const auto b = static_cast<unsigned char>(ch);
        auto it = code.find(b);
        if (it == code.end()) {
            it = code.emplace(b, static_cast<Symbol>(code.size())).first;
        }
        out.symbols.push_back(it->second);
    }
    out.sigma = std::max<std::uint64_t>(code.size(), 1);
    if (sigma) {
        if (*sigma < out.sigma) {
            throw std::invalid_argument("input has " + std::to_string(out.sigma) +
                                        " distinct symbols, more than --sigma " + std::to_string(*sigma));
        }
        out.sigma = *sigma;
    }
    return out;
}

/// Whitespace-separated non-negative integers.
inline ParsedText parse_ints(std::string_view text, std::optional<std::uint64_t> sigma = std::nullopt)
{
    ParsedText out;
    std::istringstream in{std::string(text)};
    std::string tok;
    std::uint64_t max = 0;
    while (in >> tok) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.front() == '-' || v > 0xffffffffULL) {
            throw std::invalid_argument("not a symbol value: '" + tok + "'");
        }
        out.symbols.push_back(static_cast<Symbol>(v));
        max = std::max<std::uint64_t>(max, v);
    }
    out.sigma = max + 1;
    if (sigma) {
        if (*sigma <= max) {
            throw std::invalid_argument("symbol " + std::to_string(max) + " outside --sigma " + std::to_string(*sigma));
        }
        out.sigma = *sigma;
    }
    return out;
}

inline std::string format_progressions(const std::vector<Progression>& progs)
{
    std::string out;
    for (const auto& p : progs) {
        out += std::to_string(p.start) + ' ' + std::to_string(p.diff) + ' ' + std::to_string(p.count) + '\n';
    }
    return out;
}

inline std::vector<Progression> parse_progressions(std::istream& in)
{
    std::vector<Progression> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream ls(line);
        std::size_t start = 0;
        std::size_t diff = 0;
        std::size_t count = 0;
        std::string rest;
        if (!(ls >> start >> diff >> count) || (ls >> rest)) {
            throw std::invalid_argument("bad progression line: '" + line + "'");
        }
        out.push_back(Progression::make(start, diff, count));
    }
    return out;
}

inline void to_json(nlohmann::json& j, const Progression& p)
{
    j = {{"start", p.start}, {"diff", p.diff}, {"count", p.count}};
}

inline void from_json(const nlohmann::json& j, Progression& p)
{
    p = Progression::make(j.at("start").get<std::size_t>(), j.at("diff").get<std::size_t>(),
                          j.at("count").get<std::size_t>());
}

inline void to_json(nlohmann::json& j, const Fragment& f) { j = {f.text, f.start, f.end}; }

inline void from_json(const nlohmann::json& j, Fragment& f)
{
    f = {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>(), j.at(2).get<std::size_t>()};
}

inline Primitive primitive_from_name(std::string_view name)
{
    for (unsigned i = 0; i < kPrimitiveCount; ++i) {
        if (primitive_name(static_cast<Primitive>(i)) == name) {
            return static_cast<Primitive>(i);
        }
    }
    throw std::invalid_argument("unknown primitive '" + std::string(name) + "'");
}

inline nlohmann::json transcript_entry(const Query& q, const Answer& a)
{
    nlohmann::json j;
    j["op"] = primitive_name(q.kind);
    j["x"] = q.x;
    switch (q.kind) {
    case Primitive::Lcp:
    case Primitive::LcpR:
    case Primitive::Ipm:
        j["y"] = q.y;
        break;
    case Primitive::Extract:
        j["lo"] = q.lo;
        j["hi"] = q.hi;
        break;
    case Primitive::Access:
        j["i"] = q.lo;
        break;
    case Primitive::Length:
        break;
    }
    if (q.kind == Primitive::Ipm) {
        j["answer"] = a.occurrences ? nlohmann::json(*a.occurrences) : nlohmann::json(nullptr);
    } else if (q.kind == Primitive::Extract) {
        j["answer"] = a.text;
    } else {
        j["answer"] = a.value;
    }
    return j;
}

inline std::pair<Query, Answer> parse_transcript_entry(const nlohmann::json& j)
{
    Query q;
    Answer a;
    q.kind = primitive_from_name(j.at("op").get<std::string>());
    q.x = j.at("x").get<Fragment>();
    if (j.contains("y")) {
        q.y = j.at("y").get<Fragment>();
    }
    if (q.kind == Primitive::Extract) {
        q.lo = j.at("lo").get<std::size_t>();
        q.hi = j.at("hi").get<std::size_t>();
        a.text = j.at("answer").get<std::vector<Symbol>>();
    } else if (q.kind == Primitive::Access) {
        q.lo = j.at("i").get<std::size_t>();
    }
    if (q.kind == Primitive::Ipm) {
        if (!j.at("answer").is_null()) {
            a.occurrences = j.at("answer").get<Progression>();
        }
    } else if (q.kind != Primitive::Extract) {
        a.value = j.at("answer").get<std::size_t>();
    }
    return {q, a};
}

/// One JSON object per line.
inline void write_transcript(std::ostream& out, const std::vector<std::pair<Query, Answer>>& transcript)
{
    for (const auto& [q, a] : transcript) {
        out << transcript_entry(q, a).dump() << '\n';
    }
}

inline std::vector<std::pair<Query, Answer>> read_transcript(std::istream& in)
{
    std::vector<std::pair<Query, Answer>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(parse_transcript_entry(nlohmann::json::parse(line)));
        }
    }
    return out;
}

inline nlohmann::json report_json(const ExperimentReport& r)
{
    return {
        {"k", r.k},
        {"n", r.n},
        {"q", r.q},
        {"queries_issued", r.queries_issued},
        {"touched_count", r.touched_count},
        {"flip_position", r.flip_position},
        {"cover_check", r.cover_check},
        {"superprimitive_check", r.superprimitive_check},
        {"driver", r.driver},
        {"replay_cover", r.cover_replays},
        {"replay_superprimitive", r.superprimitive_replays},
    };
}

}  // namespace quasicover
