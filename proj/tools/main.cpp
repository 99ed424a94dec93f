// Command-line front end: cmorder <command> --poly "c0,c1,...,1" [options]

#include "cmorder/cache.hpp"
#include "cmorder/classgroup.hpp"
#include "cmorder/cmtype.hpp"
#include "cmorder/comparisons.hpp"
#include "cmorder/config.hpp"
#include "cmorder/factor.hpp"
#include "cmorder/overorder.hpp"
#include "cmorder/picard.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <set>
#include <thread>

using namespace cmorder;
using nlohmann::json;

namespace {

enum Exit : int {
    ok = 0,
    math_failure = 1,
    parse_error = 2,
    factoring_failure = 3,
    not_exact = 4,
    timed_out = 5,
    verification_failure = 6,
};

const char* exit_name(int code) {
    switch (code) {
        case math_failure: return "math_error";
        case parse_error: return "parse_error";
        case factoring_failure: return "factoring_failure";
        case not_exact: return "conditional_result";
        case timed_out: return "timeout";
        case verification_failure: return "verification_failure";
        default: return "ok";
    }
}

struct Config {
    std::string command;
    std::string poly;
    std::string q;
    bool json = false;
    bool csv = false;
    std::string cache_dir;
    unsigned threads = 1;
    bool verify = false;
    bool require_exact = false;
    std::size_t search_bound = 0;
    unsigned precision = 0;
    double timeout = 0;
    std::size_t max_matrices = 100;
};

class ParseFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string str(std::size_t n) { return std::to_string(n); }

json divisors(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

// Each command returns a JSON report with an "exact" flag; text and CSV are
// rendered from it, so cached and fresh results print identically.

json cmd_type(const Order& s) {
    auto prof = global_type(s);
    json j = to_json(prof);
    j.erase("order");
    j["gorenstein"] = prof.global_type == 1;
    j["bass"] = is_bass(s);
    j["maximal"] = s.is_maximal();
    j["exact"] = true;
    return j;
}

json cmd_primes(const Order& s) {
    const FracIdeal ok = maximal_order(s.algebra()).lattice();
    json rows = json::array();
    for (const auto& p : s.noninvertible_primes())
        rows.push_back({{"p", p.p().get_str()},
                        {"residue_degree", p.residue_degree()},
                        {"dim_maximal_order", dim_quotient_at_prime(ok, p)},
                        {"type", type_at_prime(s, p)}});
    auto g = g_of_order(s);
    return {{"poly", s.algebra()->poly_string()},
            {"noninvertible_primes", rows},
            {"count", str(rows.size())},
            {"g", g.value},
            {"exact", !g.conditional}};
}

json cmd_overorders(const Order& s, const Config& c) {
    auto lat = overorders(s, c.threads);
    auto sum = classify_overorders(lat, c.threads);
    json j = to_json(lat, sum);
    for (auto& m : j["members"]) m.erase("order");
    j["max_type"] = sum.max_type;
    j["exact"] = true;
    return j;
}

json cmd_wk(const Order& s, const Config& c) {
    auto lat = overorders(s, c.threads);
    auto sum = classify_overorders(lat, c.threads);
    std::vector<std::size_t> counts(lat.members.size());
    parallel_for(lat.members.size(), c.threads,
                 [&](std::size_t k) { counts[k] = weak_classes(s, lat.members[k]).reps.size(); });
    const FracIdeal ok = maximal_order(s.algebra()).lattice();
    json rows = json::array();
    std::size_t total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        total += counts[k];
        rows.push_back({{"index", index(ok, lat.members[k].lattice()).get_str()},
                        {"type", sum.types[k]},
                        {"weak_classes", str(counts[k])}});
    }
    return {{"poly", s.algebra()->poly_string()},
            {"overorders", str(lat.members.size())},
            {"total", str(total)},
            {"parts", rows},
            {"exact", true}};
}

json cmd_pic(const Order& s) {
    auto pg = picard_group(s);
    json j = to_json(pg);
    j.erase("generators");
    j["class_group"] = to_json(class_group(s.algebra()));
    j["units"] = to_json(unit_group(s.algebra()));
    j["exact"] = pg.exact();
    return j;
}

json cmd_icm(const IcmDescription& d) {
    json j = to_json(d, true);
    j["poly"] = d.base.algebra()->poly_string();
    j["exact"] = d.exact;
    return j;
}

json cmd_matrices(const Config& c) {
    auto mc = matrix_conjugacy_classes(parse_polynomial(c.poly), c.threads, c.max_matrices);
    json mats = json::array();
    for (const auto& m : mc.matrices) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(divisors(m.row(i)));
        mats.push_back(rows);
    }
    return {{"poly", EtaleAlgebra::parse(c.poly)->poly_string()},
            {"count", mc.count.get_str()},
            {"matrices", mats},
            {"certification", mc.exact ? "exact" : "conditional(" + std::to_string(saturation_bound()) + ")"},
            {"exact", mc.exact}};
}

json cmd_av(const Config& c) {
    if (c.q.empty()) throw ParseFailure("av-classes needs --q");
    Int q;
    if (q.set_str(c.q, 10) != 0 || q < 2) throw ParseFailure("bad value for --q: " + c.q);
    auto f = parse_polynomial(c.poly);
    auto d = av_isomorphism_classes(f, q, c.threads);
    json j = to_json(d, false);
    j["poly"] = d.base.algebra()->poly_string();
    j["q"] = q.get_str();
    j["order_index"] = d.base.index_in_maximal().get_str();
    j["exact"] = d.exact;
    return j;
}

json cmd_compare(const Order& s, const Config& c) {
    json base = json::array();
    for (const auto& r : comparison_report(s)) base.push_back(to_json(r));
    auto lat = overorders(s, c.threads);
    struct Flags {
        bool gorenstein = true, nearly = true, almost = true;
    };
    std::vector<Flags> flags(lat.members.size());
    parallel_for(lat.members.size(), c.threads, [&](std::size_t k) {
        for (const auto& r : comparison_report(lat.members[k])) {
            flags[k].gorenstein = flags[k].gorenstein && r.type == 1;
            flags[k].nearly = flags[k].nearly && r.nearly_gorenstein;
            flags[k].almost = flags[k].almost && r.almost_gorenstein;
        }
    });
    std::size_t g = 0, n = 0, a = 0;
    for (const auto& f : flags) g += f.gorenstein, n += f.nearly, a += f.almost;
    return {{"poly", s.algebra()->poly_string()},
            {"base_primes", base},
            {"overorders", str(lat.members.size())},
            {"gorenstein", str(g)},
            {"nearly_gorenstein", str(n)},
            {"almost_gorenstein", str(a)},
            {"exact", true}};
}

std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + scalar(v[i]);
        return s + "]";
    }
    if (v.is_object()) return v.dump();
    return v.dump();
}

bool is_table(const json& v) { return v.is_array() && !v.empty() && v[0].is_object(); }

void print_text(const json& j, std::ostream& os) {
    for (const auto& [k, v] : j.items())
        if (!is_table(v) && !v.is_object()) os << k << ": " << scalar(v) << "\n";
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << k << ":\n";
            for (const auto& [k2, v2] : v.items())
                if (!is_table(v2)) os << "  " << k2 << ": " << scalar(v2) << "\n";
        }
    }
    for (const auto& [k, v] : j.items()) {
        if (!is_table(v)) continue;
        os << k << ":\n";
        for (const auto& row : v) {
            os << " ";
            for (const auto& [k2, v2] : row.items())
                if (!v2.is_object()) os << " " << k2 << "=" << scalar(v2);
            os << "\n";
        }
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

void print_csv(const json& j, std::ostream& os) {
    for (const auto& [k, v] : j.items()) {
        if (!is_table(v)) continue;
        std::vector<std::string> cols;
        for (const auto& [k2, v2] : v[0].items())
            if (!v2.is_object()) cols.push_back(k2);
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << "\n";
        for (const auto& row : v) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                os << (i ? "," : "") << csv_cell(row.contains(cols[i]) ? scalar(row[cols[i]]) : "");
            os << "\n";
        }
        return;
    }
    os << "key,value\n";
    for (const auto& [k, v] : j.items())
        if (!v.is_object()) os << k << "," << csv_cell(scalar(v)) << "\n";
}

json run(const Config& c) {
    const std::set<std::string> known{"type", "primes", "overorders", "wk", "pic", "icm",
                                      "matrix-classes", "av-classes", "compare"};
    if (!known.count(c.command)) throw ParseFailure("unknown command " + c.command);
    if (c.poly.empty()) throw ParseFailure("--poly is required");
    AlgebraPtr alg;
    try {
        alg = EtaleAlgebra::parse(c.poly);
    } catch (const MathError& e) {
        throw ParseFailure(e.what());
    }
    const Order s = Order::equation_order(alg);
    if (c.command == "type") return cmd_type(s);
    if (c.command == "primes") return cmd_primes(s);
    if (c.command == "overorders") return cmd_overorders(s, c);
    if (c.command == "wk") return cmd_wk(s, c);
    if (c.command == "pic") return cmd_pic(s);
    if (c.command == "icm") return cmd_icm(icm(s, c.threads));
    if (c.command == "matrix-classes") return cmd_matrices(c);
    if (c.command == "av-classes") return cmd_av(c);
    return cmd_compare(s, c);
}

int emit_error(const Config& c, int code, const std::string& msg) {
    if (c.json)
        std::cout << json{{"error", {{"code", exit_name(code)}, {"exit", code}, {"message", msg}}}}.dump(2) << "\n";
    std::cerr << "cmorder: " << msg << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orders, overorders and ideal classes of etale algebras Q[x]/f"};
    app.require_subcommand(1, 1);
    Config c;
    app.add_option("--poly", c.poly, "ascending integer coefficients, monic: c0,c1,...,1")->envname("CMORDER_POLY");
    app.add_option("--q", c.q, "prime power q for av-classes")->envname("CMORDER_Q");
    app.add_flag("--json", c.json, "JSON output")->envname("CMORDER_JSON");
    app.add_flag("--csv", c.csv, "CSV output")->envname("CMORDER_CSV");
    app.add_option("--cache-dir", c.cache_dir, "directory for cached results")->envname("CMORDER_CACHE_DIR");
    app.add_option("--threads", c.threads, "worker threads")->envname("CMORDER_THREADS")->check(CLI::Range(1u, 256u));
    app.add_flag("--verify", c.verify, "evaluate every redundant formula")->envname("CMORDER_VERIFY");
    app.add_flag("--require-exact", c.require_exact, "fail when the result is only conditional")
        ->envname("CMORDER_REQUIRE_EXACT");
    app.add_option("--search-bound", c.search_bound, "lattice vectors per principality search")
        ->envname("CMORDER_SEARCH_BOUND");
    app.add_option("--precision", c.precision, "bits of precision for complex roots")
        ->envname("CMORDER_PRECISION")
        ->check(CLI::Range(64u, 1u << 16));
    app.add_option("--timeout", c.timeout, "seconds before giving up")->envname("CMORDER_TIMEOUT");
    app.add_option("--max-matrices", c.max_matrices, "largest class count for which matrices are listed")
        ->envname("CMORDER_MAX_MATRICES");
    for (const char* name : {"type", "primes", "overorders", "wk", "pic", "icm", "matrix-classes", "av-classes", "compare"})
        app.add_subcommand(name)->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }
    c.command = app.get_subcommands().front()->get_name();
    set_verification_mode(c.verify);
    if (c.search_bound) set_search_vector_limit(c.search_bound);
    if (c.precision) set_root_precision(c.precision);

    static std::atomic<bool> done{false};
    if (c.timeout > 0) {
        std::thread([c] {
            auto until = std::chrono::steady_clock::now() + std::chrono::duration<double>(c.timeout);
            while (std::chrono::steady_clock::now() < until) {
                if (done) return;
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
            }
            if (!done) {
                emit_error(c, timed_out, "timed out after " + std::to_string(c.timeout) + " s");
                std::cout.flush();
                std::_Exit(timed_out);
            }
        }).detach();
    }

    json result;
    try {
        std::string key = c.poly;
        if (c.command == "av-classes") key += ";q=" + c.q;
        key += c.verify ? ";verify" : "";
        std::optional<FileCache> cache;
        if (!c.cache_dir.empty()) cache.emplace(c.cache_dir);
        std::string warning;
        if (cache)
            if (auto hit = cache->get(key, c.command, &warning)) result = json::parse(*hit);
        if (!warning.empty()) std::cerr << "cmorder: warning: " << warning << "\n";
        if (result.is_null()) {
            result = run(c);
            if (cache) {
                try {
                    cache->put(key, c.command, result.dump());
                } catch (const std::exception& e) {
                    std::cerr << "cmorder: warning: cache write failed: " << e.what() << "\n";
                }
            }
        }
    } catch (const ParseFailure& e) {
        done = true;
        return emit_error(c, parse_error, e.what());
    } catch (const FactorError& e) {
        done = true;
        return emit_error(c, factoring_failure, e.what());
    } catch (const VerificationError& e) {
        done = true;
        return emit_error(c, verification_failure, e.what());
    } catch (const std::exception& e) {
        done = true;
        return emit_error(c, math_failure, e.what());
    }
    done = true;
    const bool exact = result.value("exact", true);
    if (c.json)
        std::cout << result.dump(2) << "\n";
    else if (c.csv)
        print_csv(result, std::cout);
    else
        print_text(result, std::cout);
    if (c.require_exact && !exact) {
        std::cerr << "cmorder: result is conditional and --require-exact was given\n";
        return not_exact;
    }
    return ok;
}
