// bgklt: exact expansions and identity verification for Berends-Giele
// currents, KLT matrices and the S-map on planar binary trees.

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgklt/brst.hpp"
#include "bgklt/currents.hpp"
#include "bgklt/klt.hpp"
#include "bgklt/mandelstam.hpp"
#include "bgklt/pbt.hpp"
#include "bgklt/serialize.hpp"
#include "bgklt/verify.hpp"
#include "bgklt/words.hpp"

namespace {

using nlohmann::json;
using namespace bgklt;
using words::Word;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct BoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int alphabet_bound = 12;
    int word_bound = 8;   // word-level identities and expansions
    int rat_bound = 6;    // rational-function identities
    int klt_bound = 5;    // KLT matrix sweeps
};

Config load_config(const std::string& path) {
    Config cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto end = s.find_last_not_of(" \t");
            s.erase(end == std::string::npos ? 0 : end + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        int value = std::stoi(trim(line.substr(eq + 1)));
        if (key == "alphabet_bound")
            cfg.alphabet_bound = value;
        else if (key == "word_bound")
            cfg.word_bound = value;
        else if (key == "rat_bound")
            cfg.rat_bound = value;
        else if (key == "klt_bound")
            cfg.klt_bound = value;
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    return cfg;
}

Word parse_word_checked(const std::string& s, const Config& cfg) {
    Word w = io::parse_word(s);  // syntax errors -> invalid_argument
    for (int i = 0; i < w.size(); ++i)
        if (w.letter(i) > cfg.alphabet_bound)
            throw BoundError("letter exceeds alphabet bound " +
                             std::to_string(cfg.alphabet_bound));
    if (w.size() > cfg.word_bound)
        throw BoundError("word length exceeds bound " + std::to_string(cfg.word_bound));
    return w;
}

// ---------------------------------------------------------------------------
// expand

int cmd_expand(const std::string& target, const std::vector<std::string>& args,
               io::Format fmt, const Config& cfg) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("expand " + target + " expects " + std::to_string(n) +
                                        " argument(s)");
    };
    auto wordarg = [&](std::size_t i) { return parse_word_checked(args[i], cfg); };
    std::string out;

    if (target == "phi") {
        need(1);
        mandelstam::MRat r = currents::phi_word(wordarg(0));
        out = fmt == io::Format::json    ? io::rat_json(r)
              : fmt == io::Format::latex ? io::rat_latex(r)
                                         : io::rat_text(r);
    } else if (target == "phi-pair") {
        need(2);
        mandelstam::MRat r = currents::phi_pair(wordarg(0), wordarg(1));
        out = fmt == io::Format::json    ? io::rat_json(r)
              : fmt == io::Format::latex ? io::rat_latex(r)
                                         : io::rat_text(r);
    } else if (target == "b") {
        need(1);
        currents::LieRatSum r = currents::b_word(wordarg(0));
        if (fmt == io::Format::json) {
            json arr = json::array();
            for (const auto& [br, c] : r.terms)
                arr.push_back({{"bracketing", br.str()}, {"coeff", json::parse(io::rat_json(c))}});
            out = arr.dump();
        } else {
            out = io::lieratsum_text(r);
        }
    } else if (target == "M") {
        need(1);
        currents::Current c = currents::m_current(wordarg(0));
        out = fmt == io::Format::json    ? io::current_json(c)
              : fmt == io::Format::latex ? io::current_latex(c)
                                         : io::current_text(c);
    } else if (target == "S") {
        if (args.size() != 2 && args.size() != 3)
            throw std::invalid_argument("expand S expects A B [i]");
        words::Letter i = 1;
        if (args.size() == 3) {
            Word iw = parse_word_checked(args[2], cfg);
            if (iw.size() != 1) throw std::invalid_argument("fixed letter must be one letter");
            i = iw.front();
        }
        mandelstam::MPoly p = klt::s_fixed(wordarg(0), wordarg(1), i);
        out = fmt == io::Format::json    ? io::poly_json(p)
              : fmt == io::Format::latex ? io::poly_latex(p)
                                         : io::poly_text(p);
    } else if (target == "S-ext") {
        need(2);
        mandelstam::MPoly p = klt::s_extended(wordarg(0), wordarg(1));
        out = fmt == io::Format::json    ? io::poly_json(p)
              : fmt == io::Format::latex ? io::poly_latex(p)
                                         : io::poly_text(p);
    } else if (target == "sigma") {
        need(1);
        klt::WeightedWordSum s = klt::sigma(wordarg(0));
        out = fmt == io::Format::json    ? io::weighted_json(s)
              : fmt == io::Format::latex ? io::weighted_latex(s)
                                         : io::weighted_text(s);
    } else if (target == "smap") {
        need(2);
        klt::WeightedWordSum s = klt::smap(wordarg(0), wordarg(1));
        out = fmt == io::Format::json    ? io::weighted_json(s)
              : fmt == io::Format::latex ? io::weighted_latex(s)
                                         : io::weighted_text(s);
    } else if (target == "QV" || target == "QM" || target == "E") {
        need(1);
        Word p = wordarg(0);
        brst::GrassmannPoly g = target == "QV"   ? brst::qv(p)
                                : target == "QM" ? brst::qm(p)
                                                 : brst::deconcat_mm(p);
        out = fmt == io::Format::json    ? io::grassmann_json(g)
              : fmt == io::Format::latex ? io::grassmann_latex(g)
                                         : io::grassmann_text(g);
    } else if (target == "amplitude") {
        need(1);
        int n = std::stoi(args[0]);
        if (n < 3) throw std::invalid_argument("amplitude needs n >= 3");
        if (n > cfg.word_bound) throw BoundError("n exceeds bound");
        brst::GrassmannPoly g = brst::amplitude(n);
        out = fmt == io::Format::json    ? io::grassmann_json(g)
              : fmt == io::Format::latex ? io::grassmann_latex(g)
                                         : io::grassmann_text(g);
    } else if (target == "V") {
        need(1);
        auto v = klt::v_from_m(wordarg(0));
        if (fmt == io::Format::json) {
            json obj = json::object();
            for (const auto& [w, p] : v) obj["M" + io::word_str(w)] = json::parse(io::poly_json(p));
            out = obj.dump();
        } else {
            out = io::vcoeffs_text(v);
        }
    } else if (target == "S-matrix") {
        need(1);
        int n = std::stoi(args[0]);
        if (n < 1 || n > cfg.klt_bound + 1) throw BoundError("matrix size exceeds bound");
        std::uint32_t mask = 0;
        for (int l = 2; l <= n + 1; ++l) mask |= 1u << l;
        auto ws = words::all_words(mask);
        json rows = json::array();
        std::string text;
        for (const Word& a : ws) {
            json row = json::array();
            for (const Word& b : ws) {
                mandelstam::MPoly e = klt::s_fixed(a, b, 1);
                row.push_back(json::parse(io::poly_json(e)));
                text += "S(" + io::word_str(a) + "|" + io::word_str(b) + ")_1 = " +
                        io::poly_text(e) + "\n";
            }
            rows.push_back(row);
        }
        out = fmt == io::Format::json ? rows.dump() : text;
        if (!text.empty() && fmt != io::Format::json) out.pop_back();
    } else if (target == "S-ext-matrix") {
        need(1);
        int n = std::stoi(args[0]);
        if (n < 1 || n > cfg.klt_bound) throw BoundError("matrix size exceeds bound");
        auto ws = words::all_perms(n);
        json rows = json::array();
        std::string text;
        for (const Word& a : ws) {
            json row = json::array();
            for (const Word& b : ws) {
                mandelstam::MPoly e = klt::s_extended(a, b);
                row.push_back(json::parse(io::poly_json(e)));
                text += "S(" + io::word_str(a) + "|" + io::word_str(b) + ") = " +
                        io::poly_text(e) + "\n";
            }
            rows.push_back(row);
        }
        out = fmt == io::Format::json ? rows.dump() : text;
        if (!text.empty() && fmt != io::Format::json) out.pop_back();
    } else {
        throw std::invalid_argument("unknown expand target: " + target);
    }
    std::cout << out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

void print_report_text(const verify::Report& rep, bool timings) {
    for (const auto& s : rep.per_n) {
        std::cout << rep.identity << "  n=" << s.n << "  cases=" << s.cases;
        if (timings) std::cout << "  ms=" << static_cast<long>(s.millis);
        std::cout << "\n";
    }
    std::cout << rep.identity << ": " << (rep.ok() ? "ok" : "FAIL") << " (" << rep.cases
              << " cases";
    if (rep.probabilistic) std::cout << ", probabilistic";
    std::cout << ")\n";
    for (const auto& f : rep.failures)
        std::cout << "  failure: " << f.inputs << "\n    lhs = " << f.lhs
                  << "\n    rhs = " << f.rhs << "\n";
}

json report_json(const verify::Report& rep, bool timings) {
    json j;
    j["identity"] = rep.identity;
    j["max_n"] = rep.max_n;
    j["cases"] = rep.cases;
    j["ok"] = rep.ok();
    j["probabilistic"] = rep.probabilistic;
    json per = json::array();
    for (const auto& s : rep.per_n) {
        json e;
        e["n"] = s.n;
        e["cases"] = s.cases;
        if (timings) e["millis"] = s.millis;
        per.push_back(e);
    }
    j["per_n"] = per;
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back({{"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    j["failures"] = fails;
    return j;
}

int cmd_verify(const std::string& name, bool all, bool list, const verify::Options& opts,
               io::Format fmt, bool timings) {
    if (list) {
        for (const auto& id : verify::registry())
            std::cout << id.name << "  (default max n " << id.default_max_n << "): "
                      << id.description << "\n";
        return 0;
    }
    std::vector<verify::Report> reports;
    if (all) {
        reports = verify::run_all(opts);
    } else {
        reports.push_back(verify::run(name, opts));
    }
    bool ok = true;
    if (fmt == io::Format::json) {
        json arr = json::array();
        for (const auto& r : reports) {
            arr.push_back(report_json(r, timings));
            ok = ok && r.ok();
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            print_report_text(r, timings);
            ok = ok && r.ok();
        }
        std::cout << (ok ? "all identities verified" : "verification FAILED") << "\n";
    }
    return ok ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const std::string& target, int n, io::Format fmt, const Config& cfg) {
    if (target == "pbt") {
        if (n < 1 || n > 10) throw BoundError("leaf count out of bounds");
        auto trees = pbt::enumerate(n);
        if (fmt == io::Format::json) {
            json arr = json::array();
            for (const auto& t : trees) arr.push_back(t.str());
            json out;
            out["trees"] = arr;
            out["count"] = trees.size();
            std::cout << out.dump() << "\n";
        } else {
            for (const auto& t : trees) std::cout << t.str() << "\n";
            std::cout << "count: " << trees.size() << "\n";
        }
        return 0;
    }
    if (target == "klt-trees") {
        if (n < 1 || n > cfg.klt_bound) throw BoundError("multiplicity out of bounds");
        std::uint32_t mask = 0;
        for (int l = 2; l <= n + 1; ++l) mask |= 1u << l;
        auto ws = words::all_words(mask);
        klt::SFixedMemo memo(1);
        std::set<mandelstam::Mono> monos;
        for (const Word& a : ws)
            for (const Word& b : ws)
                for (const auto& [m, c] : memo.get(a, b)) {
                    (void)c;
                    monos.insert(m);
                }
        if (fmt == io::Format::json) {
            json arr = json::array();
            for (const auto& m : monos) {
                json edges = json::array();
                for (auto v : m) edges.push_back(io::svar_str(v));
                arr.push_back(edges);
            }
            json out;
            out["trees"] = arr;
            out["count"] = monos.size();
            std::cout << out.dump() << "\n";
        } else {
            for (const auto& m : monos) std::cout << io::mono_str(m) << "\n";
            std::cout << "count: " << monos.size() << "\n";
        }
        return 0;
    }
    throw std::invalid_argument("unknown enumerate target: " + target);
}

// ---------------------------------------------------------------------------
// bench

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int n = std::stoi(s);
        return {n, n};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmd_bench(const std::string& target, const std::string& range, const Config& cfg) {
    auto [lo, hi] = parse_range(range);
    if (lo < 1 || hi > std::max(cfg.word_bound, 8) || lo > hi)
        throw BoundError("bench range out of bounds");
    std::uint64_t catalan[13] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012};
    auto fact = [](int n) {
        std::uint64_t f = 1;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    bool ok = true;
    std::cout << "target  n  terms  predicted  ms\n";
    for (int n = lo; n <= hi; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        std::uint64_t count = 0, predicted = 0;
        if (target == "phi") {
            count = currents::phi_word(words::id_word(n)).size();
            predicted = catalan[n - 1];
        } else if (target == "b") {
            count = currents::b_word(words::id_word(n)).terms.size();
            predicted = catalan[n - 1];
        } else if (target == "M") {
            count = currents::m_current(words::id_word(n)).size();
            predicted = n == 1 ? 1 : fact(n - 1);
        } else if (target == "S") {
            if (n < 2) {
                std::cout << "S  " << n << "  -  -  skipped\n";
                continue;
            }
            std::uint32_t mask = 0;
            for (int l = 2; l <= n; ++l) mask |= 1u << l;
            klt::SFixedMemo memo(1);
            auto ws = words::all_words(mask);
            for (const Word& a : ws)
                for (const Word& b : ws) {
                    memo.get(a, b);
                    ++count;
                }
            predicted = fact(n - 1) * fact(n - 1);
        } else if (target == "QM") {
            count = brst::qm(words::id_word(n)).terms.size();
            predicted = count;  // no closed form; reported only
        } else {
            throw std::invalid_argument("unknown bench target: " + target);
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count();
        std::cout << target << "  " << n << "  " << count << "  " << predicted << "  "
                  << static_cast<long>(ms) << "\n";
        if (count != predicted) ok = false;
    }
    if (!ok) {
        std::cout << "term count mismatch\n";
        return kExitFailure;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact planar-binary-tree currents, KLT matrices and BRST identities"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    std::string format_s = "text";

    auto* expand = app.add_subcommand("expand", "print an expansion");
    std::string ex_target;
    std::vector<std::string> ex_args;
    expand->add_option("target", ex_target,
                       "phi|phi-pair|b|M|S|S-ext|sigma|smap|QV|QM|E|amplitude|V|S-matrix|S-ext-matrix")
        ->required();
    expand->add_option("args", ex_args, "words / letters / sizes");
    expand->add_option("--format", format_s, "text|json|latex");

    auto* verify_cmd = app.add_subcommand("verify", "run identity verification sweeps");
    std::string v_name;
    bool v_all = false, v_list = false, v_parallel = false, v_prob = false, v_timings = false;
    int v_maxn = -1;
    std::uint64_t v_seed = 0;
    verify_cmd->add_option("identity", v_name, "identity name from the registry");
    verify_cmd->add_flag("--all", v_all, "run every registered identity");
    verify_cmd->add_flag("--list", v_list, "list registered identities");
    verify_cmd->add_option("--max-n", v_maxn, "multiplicity cap (default per identity)");
    verify_cmd->add_flag("--parallel", v_parallel, "fan instances across a worker pool");
    verify_cmd->add_flag("--probabilistic", v_prob,
                         "random rational evaluation instead of exact zero tests");
    verify_cmd->add_option("--seed", v_seed, "seed for probabilistic evaluation points");
    verify_cmd->add_flag("--timings", v_timings, "include wall times in the report");
    verify_cmd->add_option("--format", format_s, "text|json");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list combinatorial objects");
    std::string en_target;
    int en_n = 0;
    enumerate_cmd->add_option("target", en_target, "pbt|klt-trees")->required();
    enumerate_cmd->add_option("n", en_n, "size")->required();
    enumerate_cmd->add_option("--format", format_s, "text|json");

    auto* bench_cmd = app.add_subcommand("bench", "time expansions and check term counts");
    std::string be_target, be_range;
    bench_cmd->add_option("target", be_target, "phi|b|S|M|QM")->required();
    bench_cmd->add_option("range", be_range, "n range, e.g. 2..8")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        Config cfg = load_config(config_path);
        io::Format fmt = io::parse_format(format_s);
        if (expand->parsed()) return cmd_expand(ex_target, ex_args, fmt, cfg);
        if (verify_cmd->parsed()) {
            if (!v_list && !v_all && v_name.empty())
                throw std::invalid_argument("verify needs an identity name, --all or --list");
            verify::Options opts;
            opts.max_n = v_maxn;
            opts.parallel = v_parallel;
            opts.probabilistic = v_prob;
            opts.seed = v_seed;
            return cmd_verify(v_name, v_all, v_list, opts, fmt, v_timings);
        }
        if (enumerate_cmd->parsed()) return cmd_enumerate(en_target, en_n, fmt, cfg);
        if (bench_cmd->parsed()) return cmd_bench(be_target, be_range, cfg);
    } catch (const BoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitUsage;
}
