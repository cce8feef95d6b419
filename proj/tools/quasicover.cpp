#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quasicover/bench.hpp"
#include "quasicover/constants.hpp"
#include "quasicover/cover_algorithms.hpp"
#include "quasicover/cover_array_ds.hpp"
#include "quasicover/fibonacci.hpp"
#include "quasicover/io.hpp"
#include "quasicover/lower_bound.hpp"
#include "quasicover/oracles.hpp"

namespace qc = quasicover;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kIo = 2, kMismatch = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    bool json = false;
    std::optional<std::uint64_t> sigma;
    std::uint64_t seed = 1;
    std::optional<std::size_t> force_c;
    bool test_mode = false;
    bool ints = false;
};

struct Input {
    std::string file;
    std::optional<std::string> text;
};

void add_input(CLI::App* cmd, Input& in)
{
    cmd->add_option("FILE", in.file, "input file ('-' for stdin)");
    cmd->add_option("--text", in.text, "inline input instead of a file");
}

std::string read_source(const Input& in)
{
    if (in.text) {
        if (!in.file.empty()) {
            throw CLI::ValidationError("give either FILE or --text, not both");
        }
        return *in.text;
    }
    if (in.file.empty()) {
        throw CLI::ValidationError("an input FILE or --text is required");
    }
    std::string data;
    if (in.file == "-") {
        data.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream f(in.file, std::ios::binary);
        if (!f) {
            throw IoError("cannot open '" + in.file + "'");
        }
        data.assign(std::istreambuf_iterator<char>(f), {});
        if (f.bad()) {
            throw IoError("error reading '" + in.file + "'");
        }
    }
    // a single trailing line break is not part of the text
    if (!data.empty() && data.back() == '\n') {
        data.pop_back();
        if (!data.empty() && data.back() == '\r') {
            data.pop_back();
        }
    }
    return data;
}

qc::PackedText load_text(const Input& in, const Config& cfg)
{
    const std::string raw = read_source(in);
    const auto parsed = cfg.ints ? qc::parse_ints(raw, cfg.sigma) : qc::parse_bytes(raw, cfg.sigma);
    if (parsed.symbols.empty()) {
        throw std::invalid_argument("input text is empty");
    }
    return qc::PackedText::pack(parsed.symbols, parsed.sigma);
}

std::string bracketed(const std::vector<std::size_t>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i]);
    }
    return s + "]";
}

std::string spaced(const std::vector<std::size_t>& v, std::size_t from = 0)
{
    std::string s;
    for (std::size_t i = from; i < v.size(); ++i) {
        s += (i > from ? " " : "") + std::to_string(v[i]);
    }
    return s;
}

int cmd_covers(const Input& in, const Config& cfg, bool oracle)
{
    const auto t = load_text(in, cfg);
    qc::CoverOptions opt;
    opt.force_c = cfg.force_c;
    qc::CoverStats stats;
    const auto cs = qc::covers(t, opt, &stats);
    const auto lengths = cs.enumerate();
    std::optional<bool> match;
    if (oracle) {
        match = lengths == qc::all_covers_naive(t);
    }
    if (cfg.json) {
        json j{{"n", cs.n()}, {"c", stats.c}, {"progressions", cs.progressions()}, {"covers", lengths}};
        if (match) {
            j["oracle_match"] = *match;
        }
        std::cout << j.dump() << '\n';
    } else {
        std::cout << qc::format_progressions(cs.progressions()) << bracketed(lengths) << '\n';
        if (match) {
            std::cout << (*match ? "oracle: match" : "oracle: MISMATCH") << '\n';
        }
    }
    return match && !*match ? kMismatch : kOk;
}

int cmd_cover_array(const Input& in, const Config& cfg, std::optional<std::size_t> query, bool all, bool stats,
                    const std::string& save)
{
    const auto t = load_text(in, cfg);
    const std::size_t n = t.size();
    const std::uint64_t sigma = t.sigma();
    if (query && (*query == 0 || *query > n)) {
        throw std::out_of_range("--query " + std::to_string(*query) + " outside [1.." + std::to_string(n) + "]");
    }
    const auto idx = qc::build_cover_index(t);
    if (!save.empty()) {
        std::ofstream f(save, std::ios::binary);
        if (!f) {
            throw IoError("cannot write '" + save + "'");
        }
        idx.save(f);
    }
    json j;
    if (query) {
        const auto v = idx.query(*query);
        cfg.json ? void(j["value"] = v) : void(std::cout << v << '\n');
    }
    if (all) {
        std::vector<std::size_t> values(n);
        for (std::size_t l = 1; l <= n; ++l) {
            values[l - 1] = idx.query(l);
        }
        cfg.json ? void(j["cover_array"] = values) : void(std::cout << spaced(values) << '\n');
    }
    if (stats) {
        const double bound = qc::SpaceBound::bits(n, sigma);
        const std::size_t bits = idx.structure_bits();
        if (cfg.json) {
            j["stats"] = {{"n", n},
                          {"sigma", sigma},
                          {"squares", idx.square_count()},
                          {"bits", bits},
                          {"bound_bits", bound},
                          {"within_bound", static_cast<double>(bits) <= bound}};
        } else {
            std::cout << "n " << n << "\nsigma " << sigma << "\nsquares " << idx.square_count() << "\nbits " << bits
                      << "\nbound_bits " << static_cast<std::uint64_t>(bound) << "\nwithin_bound "
                      << (static_cast<double>(bits) <= bound ? "yes" : "no") << '\n';
        }
    }
    if (cfg.json) {
        std::cout << j.dump() << '\n';
    }
    return kOk;
}

int cmd_fib(std::size_t m, std::optional<std::uint64_t> query, const Config& cfg)
{
    if (query) {
        if (*query == 0) {
            throw std::out_of_range("--query must be >= 1");
        }
        const qc::FibTable table(std::max<std::uint64_t>(*query + 1, 2));
        if (m < table.size() && table[m] < *query) {
            throw std::out_of_range("--query exceeds |Fib_m|");
        }
        const auto v = qc::fib_cov(*query, table);
        std::cout << (cfg.json ? json{{"m", m}, {"l", *query}, {"value", v}}.dump() : std::to_string(v)) << '\n';
        return kOk;
    }
    if (m > 30) {
        throw std::out_of_range("fib: m must be <= 30 to print the whole array");
    }
    const auto cov = qc::fib_cover_array(m);
    if (cfg.json) {
        std::cout << json{{"m", m}, {"cover_array", std::vector<std::size_t>(cov.begin() + 1, cov.end())}}.dump()
                  << '\n';
    } else {
        std::cout << spaced(cov, 1) << '\n';
    }
    return kOk;
}

void check_adversary_args(std::size_t k, const std::string& driver)
{
    if (k < 1 || k > 20) {
        throw std::out_of_range("adversary: K must be in [1..20]");
    }
    if (driver != "random-queries" && driver != "cover-pipeline") {
        throw CLI::ValidationError("unknown driver '" + driver + "' (random-queries | cover-pipeline)");
    }
}

std::vector<std::size_t> parse_sizes(const std::vector<std::string>& raw)
{
    std::vector<std::size_t> out;
    for (const auto& tok : raw) {
        std::size_t used = 0;
        const auto e = std::stoul(tok, &used);
        if (used != tok.size() || e < 1 || e > 26) {
            throw std::out_of_range("--sizes takes exponents in [1..26]");
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Covers, cover arrays and PILLAR adversary experiments"};
    app.require_subcommand(1);
    Config cfg;
    app.add_flag("--json", cfg.json, "JSON output");
    app.add_option("--sigma", cfg.sigma, "alphabet size (default: inferred)")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized commands");
    app.add_option("--force-c", cfg.force_c, "override the short-cover threshold (needs --test-mode)");
    app.add_flag("--test-mode", cfg.test_mode, "allow test-only overrides");
    app.add_flag("--ints", cfg.ints, "input is whitespace-separated integers");

    Input in;
    bool oracle = false;
    auto* covers = app.add_subcommand("covers", "all covers, as progressions and as a list");
    add_input(covers, in);
    covers->add_flag("--oracle", oracle, "cross-check with the naive algorithm; exit 3 on mismatch");

    std::optional<std::size_t> query;
    bool all = false;
    bool stats = false;
    std::string save;
    auto* carr = app.add_subcommand("cover-array", "shortest cover of prefixes via the cover-array index");
    add_input(carr, in);
    auto* q_opt = carr->add_option("--query", query, "prefix length l");
    auto* all_opt = carr->add_flag("--all", all, "every prefix length");
    q_opt->excludes(all_opt);
    carr->add_flag("--stats", stats, "index size and its bound");
    carr->add_option("--save", save, "write the index blob to this path");

    std::size_t fib_m = 0;
    std::optional<std::uint64_t> fib_query;
    auto* fib = app.add_subcommand("fib", "cover array of the m-th Fibonacci string");
    fib->add_option("M", fib_m, "index m")->required();
    fib->add_option("--query", fib_query, "single prefix length");

    std::size_t adv_k = 0;
    std::string driver;
    auto* adv = app.add_subcommand("adversary", "lower-bound adversary experiment");
    adv->add_option("K", adv_k, "de Bruijn order")->required();
    adv->add_option("--driver", driver, "random-queries | cover-pipeline")->required();

    std::vector<std::string> sizes_raw;
    std::size_t samples = 4;
    auto* bench = app.add_subcommand("bench", "counted stage costs across text lengths 2^e");
    bench->add_option("--sizes", sizes_raw, "exponents e (default 14..22)")->delimiter(',');
    bench->add_option("--samples", samples, "texts per size")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (cfg.force_c && !cfg.test_mode) {
            throw CLI::ValidationError("--force-c is only accepted together with --test-mode");
        }
        if (cfg.force_c && !covers->parsed()) {
            throw CLI::ValidationError("--force-c applies to the covers command only");
        }
        if (covers->parsed()) {
            return cmd_covers(in, cfg, oracle);
        }
        if (carr->parsed()) {
            if (!query && !all && !stats) {
                throw CLI::ValidationError("cover-array needs --query L, --all or --stats");
            }
            return cmd_cover_array(in, cfg, query, all, stats, save);
        }
        if (fib->parsed()) {
            return cmd_fib(fib_m, fib_query, cfg);
        }
        if (adv->parsed()) {
            check_adversary_args(adv_k, driver);
            const auto r = qc::run_experiment(adv_k, driver, cfg.seed);
            auto j = qc::report_json(r);
            j["touched_within_bound"] = r.touched_within_bound();
            j["ok"] = r.ok();
            std::cout << (cfg.json ? j.dump() : j.dump(2)) << '\n';
            return r.ok() ? kOk : kMismatch;
        }
        if (bench->parsed()) {
            std::vector<std::size_t> exps = parse_sizes(sizes_raw);
            if (exps.empty()) {
                for (std::size_t e = 14; e <= 22; ++e) {
                    exps.push_back(e);
                }
            }
            const std::uint64_t sigma = cfg.sigma.value_or(2);
            json rows = json::array();
            for (auto e : exps) {
                const auto r = qc::measure_stage_costs(std::size_t{1} << e, sigma, cfg.seed, samples);
                rows.push_back({{"n", r.n},
                                {"c", r.c},
                                {"long_units", r.long_units},
                                {"short_word_ops", r.short_ops},
                                {"ipm_calls", r.ipm_calls},
                                {"long_units_per_n_over_c", r.long_per_n_over_c()},
                                {"short_ops_per_n_over_c", r.short_per_n_over_c()}});
                if (!cfg.json) {
                    std::cout << "n=" << r.n << " c=" << r.c << " long_units=" << r.long_units
                              << " short_word_ops=" << r.short_ops << " long/(n/c)=" << r.long_per_n_over_c()
                              << " short/(n/c)=" << r.short_per_n_over_c() << '\n';
                }
            }
            if (cfg.json) {
                std::cout << json{{"sigma", sigma}, {"samples", samples}, {"rows", rows}}.dump() << '\n';
            }
            return kOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
