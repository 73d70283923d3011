// Command-line frontend: match a pattern against a grammar-compressed text,
// generate test programs, decompress, cross-check against the brute-force
// reference, and sweep operation counters for linearity inspection.
//
// Exit codes: 0 found / ok, 1 not found, 2 error, 3 verification mismatch.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "slpmatch/common.hpp"
#include "slpmatch/generator.hpp"
#include "slpmatch/matcher.hpp"
#include "slpmatch/oracle.hpp"
#include "slpmatch/slp.hpp"

namespace {

using slpmatch::Counters;
using slpmatch::CounterSnapshot;
using slpmatch::Matcher;
using slpmatch::MatchResult;
using slpmatch::Slp;

int64_t micros_between(std::chrono::steady_clock::time_point a,
                       std::chrono::steady_clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error on '" + path + "'");
    return buf.str();
}

// Exactly one of the two sources must be set; the file is read verbatim.
std::string load_pattern(const std::string& literal, const std::string& file,
                         bool have_literal, bool have_file) {
    if (have_literal && have_file)
        throw std::runtime_error("give either --pattern or --pattern-file, not both");
    if (!have_literal && !have_file)
        throw std::runtime_error("a pattern is required (--pattern or --pattern-file)");
    return have_literal ? literal : read_file(file);
}

struct RunReport {
    MatchResult result;
    CounterSnapshot counters;
    int64_t build_micros = 0;
    int64_t match_micros = 0;

    void print_kv(std::ostream& out) const {
        out << "found=" << (result.found ? "true" : "false") << '\n';
        if (result.found) {
            out << "witness_rule=" << result.witness_rule << '\n';
            out << "witness_offset=" << result.witness_offset << '\n';
            if (result.occurrence) out << "occurrence=" << *result.occurrence << '\n';
        }
        out << "wa_queries=" << counters.wa_queries << '\n';
        out << "concat_queries=" << counters.concat_queries << '\n';
        out << "lcp_calls=" << counters.lcp_calls << '\n';
        out << "sort_calls=" << counters.sort_calls << '\n';
        out << "build_micros=" << build_micros << '\n';
        out << "match_micros=" << match_micros << '\n';
        out << "total_micros=" << build_micros + match_micros << '\n';
    }

    void print_json(std::ostream& out) const {
        nlohmann::json j;
        j["found"] = result.found;
        if (result.found) {
            j["witness"] = {{"rule", result.witness_rule},
                            {"offset", result.witness_offset}};
            if (result.occurrence) j["occurrence"] = *result.occurrence;
        }
        j["counters"] = {{"wa_queries", counters.wa_queries},
                         {"concat_queries", counters.concat_queries},
                         {"lcp_calls", counters.lcp_calls},
                         {"sort_calls", counters.sort_calls}};
        j["timings"] = {{"build_micros", build_micros},
                        {"match_micros", match_micros},
                        {"total_micros", build_micros + match_micros}};
        out << j.dump() << '\n';
    }
};

RunReport run_match(const Slp& slp, const std::string& pattern) {
    Counters counters;
    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    Matcher matcher(pattern, &counters);
    auto t1 = std::chrono::steady_clock::now();
    rep.result = matcher.match(slp);
    auto t2 = std::chrono::steady_clock::now();
    rep.counters = counters.snapshot();
    rep.build_micros = micros_between(t0, t1);
    rep.match_micros = micros_between(t1, t2);
    return rep;
}

int cmd_match(const std::string& slp_path, const std::string& pattern, bool json_out) {
    Slp slp = Slp::parse_file(slp_path);
    RunReport rep = run_match(slp, pattern);
    if (json_out)
        rep.print_json(std::cout);
    else
        rep.print_kv(std::cout);
    return rep.result.found ? 0 : 1;
}

int cmd_gen(const std::string& shape, uint32_t n, uint32_t sigma, uint64_t seed,
            const std::string& out_path) {
    std::string text = slpmatch::gen::generate(shape, n, sigma, seed);
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write error on '" + out_path + "'");
    return 0;
}

int cmd_decompress(const std::string& slp_path, uint64_t limit) {
    Slp slp = Slp::parse_file(slp_path);
    std::string text = slp.expand(limit);
    std::cout.write(text.data(), std::streamsize(text.size()));
    return 0;
}

int cmd_verify(const std::string& slp_path, const std::string& pattern, uint64_t limit) {
    Slp slp = Slp::parse_file(slp_path);
    RunReport rep = run_match(slp, pattern);

    const uint64_t cap = limit < UINT64_MAX ? limit + 1 : limit;
    const uint64_t text_len = slp.lengths(cap)[1];
    if (text_len > limit) {
        std::cerr << "warning: text longer than " << limit
                  << " bytes, verification skipped\n";
        std::cout << "found=" << (rep.result.found ? "true" : "false")
                  << "\nverified=skipped\n";
        return 0;
    }

    std::string text = slp.expand(limit);
    auto expect = slpmatch::oracle::first_occurrence(text, pattern);
    bool agree = rep.result.found == expect.has_value();
    if (agree && expect && rep.result.occurrence) {
        // Any reported position must hold a real occurrence, never before the
        // leftmost one.
        const uint64_t at = *rep.result.occurrence;
        agree = at >= *expect && at + pattern.size() <= text.size() &&
                text.compare(size_t(at), pattern.size(), pattern) == 0;
    }
    std::cout << "found=" << (rep.result.found ? "true" : "false")
              << "\nreference_found=" << (expect ? "true" : "false")
              << "\nverified=" << (agree ? "agree" : "mismatch") << '\n';
    if (!agree) {
        std::cerr << "verification mismatch on '" << slp_path << "'\n";
        return 3;
    }
    return 0;
}

int cmd_bench(const std::string& shape, uint32_t sigma, uint64_t seed, uint32_t n_min,
              uint32_t n_max, uint32_t m) {
    // One pattern for the whole sweep, cut from the smallest instance's text,
    // so rows differ only in n. Usually a real match, so the full pipeline runs.
    std::string pattern;
    {
        Slp small = Slp::parse_string(slpmatch::gen::generate(shape, n_min, sigma, seed));
        bool truncated = false;
        std::string window = small.expand_prefix(4 * uint64_t(m), truncated);
        if (window.size() < m) throw std::runtime_error("bench: text shorter than m");
        pattern = window.substr(window.size() - m);
    }

    std::cout << "n,m,N_or_cap,wa_queries,concat_queries,micros\n";
    for (uint32_t n = n_min; n <= n_max; n *= 2) {
        Slp slp = Slp::parse_string(slpmatch::gen::generate(shape, n, sigma, seed));
        Counters counters;
        Matcher matcher(pattern, &counters);
        counters.reset();  // count the per-program work only
        auto t0 = std::chrono::steady_clock::now();
        (void)matcher.match(slp);
        auto t1 = std::chrono::steady_clock::now();
        CounterSnapshot snap = counters.snapshot();

        constexpr uint64_t kCap = uint64_t(1) << 62;
        const uint64_t len = slp.lengths(kCap)[1];
        std::cout << n << ',' << m << ',';
        if (len >= kCap)
            std::cout << "cap";
        else
            std::cout << len;
        std::cout << ',' << snap.wa_queries << ',' << snap.concat_queries << ','
                  << micros_between(t0, t1) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern matching on grammar-compressed texts"};
    app.require_subcommand(1);

    std::string slp_path, pattern_literal, pattern_file, out_path;
    std::string shape = "random-binary";
    bool json_out = false;
    uint32_t n = 64, sigma = 2, m = 50, n_min = 256, n_max = 16384;
    uint64_t seed = 1, limit = 1000000;

    auto add_pattern_flags = [&](CLI::App* cmd) {
        cmd->add_option("--pattern", pattern_literal, "pattern bytes as a literal");
        cmd->add_option("--pattern-file", pattern_file, "file whose bytes are the pattern");
    };

    CLI::App* c_match = app.add_subcommand("match", "decide whether the pattern occurs");
    c_match->add_option("slp", slp_path, "program file")->required();
    add_pattern_flags(c_match);
    c_match->add_flag("--json", json_out, "emit the report as JSON");

    CLI::App* c_gen = app.add_subcommand("gen", "generate a test program");
    c_gen->add_option("out", out_path, "output file (stdout when omitted)");
    c_gen->add_option("--shape", shape,
                      "fibonacci | power | random-binary | skewed-chain")
        ->required();
    c_gen->add_option("--n", n, "number of rules")->required();
    c_gen->add_option("--alphabet", sigma, "alphabet size (random shapes)");
    c_gen->add_option("--seed", seed, "generator seed");

    CLI::App* c_dec = app.add_subcommand("decompress", "expand the program to stdout");
    c_dec->add_option("slp", slp_path, "program file")->required();
    c_dec->add_option("--limit", limit, "refuse texts longer than this many bytes");

    CLI::App* c_ver = app.add_subcommand("verify",
                                         "cross-check against the brute-force reference");
    c_ver->add_option("slp", slp_path, "program file")->required();
    add_pattern_flags(c_ver);
    c_ver->add_option("--limit", limit, "skip verification beyond this text length");

    CLI::App* c_bench = app.add_subcommand("bench", "counter sweep over doubling n, CSV");
    c_bench->add_option("--shape", shape, "generator shape");
    c_bench->add_option("--alphabet", sigma, "alphabet size (random shapes)");
    c_bench->add_option("--seed", seed, "generator seed");
    c_bench->add_option("--n-min", n_min, "smallest rule count");
    c_bench->add_option("--n-max", n_max, "largest rule count");
    c_bench->add_option("--m", m, "pattern length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
    }

    try {
        if (c_match->parsed() || c_ver->parsed()) {
            std::string pattern =
                load_pattern(pattern_literal, pattern_file,
                             c_match->parsed() ? !!c_match->count("--pattern")
                                               : !!c_ver->count("--pattern"),
                             c_match->parsed() ? !!c_match->count("--pattern-file")
                                               : !!c_ver->count("--pattern-file"));
            if (c_match->parsed()) return cmd_match(slp_path, pattern, json_out);
            return cmd_verify(slp_path, pattern, limit);
        }
        if (c_gen->parsed()) return cmd_gen(shape, n, sigma, seed, out_path);
        if (c_dec->parsed()) return cmd_decompress(slp_path, limit);
        if (c_bench->parsed()) return cmd_bench(shape, sigma, seed, n_min, n_max, m);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
