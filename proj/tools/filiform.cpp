#include "filiform/acceptance.hpp"
#include "filiform/cochain.hpp"
#include "filiform/deformation.hpp"
#include "filiform/error.hpp"
#include "filiform/families.hpp"
#include "filiform/json_io.hpp"
#include "filiform/massey.hpp"
#include "filiform/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace filiform;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Global {
    bool json = false;
    int N = 40;
    int threads = 1;
    std::uint64_t seed = 20240601;
    std::string out_dir;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exit status of a subcommand: 0 ok, 1 a computed check failed.
struct Report {
    Json payload;
    std::string table;
    bool ok = true;
};

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("weight range must look like -8..8, got '" + s + "'");
    }
}

void check_run_config(const Global& g) {
    if (g.N < 10) throw UsageError("--N must be at least 10");
    if (g.threads < 1) throw UsageError("--threads must be positive");
}

std::string cell(const std::string& s, int w) {
    std::ostringstream o;
    o << std::setw(w) << s;
    return o.str();
}

std::string tuple_str(const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

std::string branch_str(const std::map<int, Rational>& u) {
    std::string s;
    for (const auto& [m, v] : u) s += (s.empty() ? "" : ", ") + variable_name(m) + "=" + to_string(v);
    return s;
}

// Accepts a bare cochain or the JSON envelope written by `family` or `suppress`.
HomCochain load_cochain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    if (j.contains("result")) j = j["result"];
    if (j.contains("cochain")) j = j["cochain"];
    else if (j.contains("cocycle") && j["cocycle"].is_object()) j = j["cocycle"];
    return cochain_from_json(j);
}

// ---- cohomology

struct CohomologyArgs {
    int q = 1;
    std::string weights = "-8..8";
};

Report run_cohomology(const Global& g, const CohomologyArgs& a) {
    auto [lo, hi] = parse_range(a.weights);
    if (lo > hi || lo < -20 || hi > 20) throw UsageError("weight range must be lo..hi with -20 <= lo <= hi <= 20");
    if (a.q != 1 && a.q != 2) throw UsageError("--q must be 1 or 2");
    Report r;
    r.payload = Json::array();
    std::ostringstream t;
    t << cell("l", 4) << cell("dim", 6) << cell("stable", 8) << cell("cocycles", 10) << cell("coboundaries", 14)
      << "\n";
    for (int l = lo; l <= hi; ++l) {
        auto c = cohomology_dim(a.q, l, g.N);
        r.payload.push_back(cohomology_json(c));
        t << cell(std::to_string(l), 4) << cell(std::to_string(c.dim_window), 6) << cell(c.stable ? "yes" : "no", 8)
          << cell(std::to_string(c.cocycle_dim), 10) << cell(std::to_string(c.coboundary_rank), 14) << "\n";
    }
    r.table = t.str();
    return r;
}

// ---- family

struct FamilyArgs {
    int k = 2;
    int weight = 0;
    int max_index = 20;
    bool allow_contradictory = false;
};

Report run_family(const Global&, const FamilyArgs& a) {
    if (a.k < 2) throw UsageError("--k must be at least 2");
    if (a.max_index < a.k + 2) throw UsageError("--max-index must be at least k+2");
    Report r;
    Validity v = validity_check({a.k, a.weight, a.max_index});
    HomCochain c = k_family({a.k, a.weight, a.max_index}, a.allow_contradictory);
    r.payload["k"] = a.k;
    r.payload["valid"] = v.valid;
    r.payload["reason"] = v.reason;
    r.payload["cocycle"] = is_cocycle(c).ok;
    r.payload["cochain"] = cochain_json(c);

    // column = first index, row = second index
    const int cols = std::min(a.k, a.max_index);
    std::vector<std::vector<std::string>> rows;
    std::vector<size_t> width(cols + 1, 0);
    for (int j = 2; j <= a.max_index; ++j) {
        std::vector<std::string> row{std::to_string(j)};
        for (int i = 1; i <= cols; ++i) row.push_back(i < j ? to_string(c.at({i, j})) : "");
        rows.push_back(std::move(row));
    }
    std::vector<std::string> head{"j\\i"};
    for (int i = 1; i <= cols; ++i) head.push_back(std::to_string(i));
    rows.insert(rows.begin(), head);
    for (const auto& row : rows)
        for (size_t p = 0; p < row.size(); ++p) width[p] = std::max(width[p], row[p].size());
    std::ostringstream t;
    t << a.k << "-family, weight " << a.weight << (v.valid ? "" : " (" + v.reason + ")") << "\n";
    for (const auto& row : rows) {
        for (size_t p = 0; p < row.size(); ++p) t << cell(row[p], static_cast<int>(width[p]) + 2);
        t << "\n";
    }
    r.table = t.str();
    return r;
}

// ---- massey

struct MasseyArgs {
    std::string cocycle;
    std::optional<int> weight;
    std::optional<int> window;
    std::vector<int> triple;
};

Report run_massey(const Global&, const MasseyArgs& a) {
    HomCochain c = load_cochain(a.cocycle);
    if (c.degree() != 2) throw UsageError("the cocycle file must hold a 2-cochain");
    if (a.weight && *a.weight != c.weight())
        throw UsageError("--weight " + std::to_string(*a.weight) + " differs from the file's weight " +
                         std::to_string(c.weight()));
    const int window = a.window.value_or(c.max_index() / 2);
    Report r;
    Json values = Json::array();
    std::ostringstream t;
    t << cell("i", 4) << cell("j", 4) << cell("k", 4) << "  value\n";
    auto add = [&](int i, int j, int k, const Rational& v) {
        Json e;
        e["i"] = i;
        e["j"] = j;
        e["k"] = k;
        e["weight"] = 2 * c.weight();
        e["value"] = rational_json(v);
        values.push_back(std::move(e));
        t << cell(std::to_string(i), 4) << cell(std::to_string(j), 4) << cell(std::to_string(k), 4) << "  "
          << to_string(v) << "\n";
    };
    int skipped = 0;
    if (!a.triple.empty()) {
        add(a.triple[0], a.triple[1], a.triple[2], massey_square(c, a.triple[0], a.triple[1], a.triple[2]));
    } else {
        for (const auto& T : increasing_tuples(3, 1, window)) {
            if (T[0] + T[1] + T[2] + 2 * c.weight() < 1) continue;
            if (!square_in_window(c, T[0], T[1], T[2])) {
                ++skipped;
                continue;
            }
            Rational v = massey_square(c, T[0], T[1], T[2]);
            if (v != 0) add(T[0], T[1], T[2], v);
        }
    }
    r.payload["window"] = window;
    r.payload["cocycle"] = is_cocycle(c).ok;
    r.payload["skipped"] = skipped;
    r.payload["values"] = std::move(values);
    if (skipped) t << skipped << " triples beyond the cochain's indices were skipped\n";
    r.table = t.str();
    return r;
}

// ---- solve

struct SolveArgs {
    int weight = 0;
    int vars = 5;
    int level_max = 14;
    std::string equations = "all";
    int extend = 0;
    int max_branches = 32;
    bool probe_dimension = false;
};

Report run_solve(const Global&, const SolveArgs& a) {
    if (a.vars < 2) throw UsageError("--vars must be at least 2");
    if (a.extend < 0) throw UsageError("--extend must be non-negative");
    EquationSet set;
    try {
        set = parse_equation_set(a.equations);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    SolverConfig cfg;
    cfg.max_branches = a.max_branches;
    QuadraticSystem sys = build_system(a.weight, a.vars, a.level_max, set);
    SolveResult res = solve_projective(sys, cfg);
    Report r;
    r.payload["system"] = system_json(sys);
    r.payload["solution"] = solve_json(res);
    std::ostringstream t;
    t << "weight " << a.weight << ", unknowns " << variable_name(sys.first_var()) << ".."
      << variable_name(sys.last_var()) << ", levels <= " << a.level_max << "\n";
    for (const auto& e : sys.equations)
        t << "  L" << e.level << " " << tuple_str({e.source[0], e.source[1], e.source[2]}) << ": " << render(e.terms)
          << " = 0\n";
    t << res.branches.size() << " branch(es)\n";
    for (const auto& b : res.branches) t << "  " << branch_str(b.assignments) << "\n";
    for (const auto& c : res.curves) {
        t << "  curve in " << variable_name(c.parameter) << ":";
        for (const auto& [m, f] : c.assignments) t << " " << variable_name(m) << "=" << f.str();
        t << "\n";
    }
    for (int m : res.unconstrained_charts) t << "  chart " << variable_name(m) << " unconstrained at this depth\n";
    if (res.irrational_candidates) t << "  " << res.irrational_candidates << " irrational candidate(s) dropped\n";
    for (const auto& d : res.diagnostics) t << "  note: " << d << "\n";
    if (a.extend > 0) {
        Json ext = Json::array();
        for (const auto& b : res.branches) {
            auto e = extend_check(b, a.extend, cfg);
            ext.push_back(extend_json(e));
            t << "extend " << a.extend << " (" << branch_str(b.assignments)
              << "): " << (e.survives ? "survives, " + branch_str(e.extended.assignments) : "fails") << "\n";
            for (const auto& d : e.diagnostics) t << "  note: " << d << "\n";
        }
        r.payload["extend"] = std::move(ext);
    }
    if (a.probe_dimension) {
        auto d = dimension_probe(a.weight, a.vars, a.level_max, set, cfg);
        r.payload["dimension"] = {{"dimension", d.dimension}, {"per_branch", d.per_branch},
                                  {"jacobian_bound", d.jacobian_bound}};
        t << "dimension probe: " << d.dimension << "\n";
    }
    r.table = t.str();
    r.ok = !res.depth_exceeded;
    return r;
}

// ---- deform

struct DeformArgs {
    std::string cocycle;
    std::string t = "1";
    bool check = false;
    bool compensate = false;
    std::optional<int> window;
};

Json check_block(const DeformationCheck& c) { return deformation_check_json(c); }

std::string check_line(const std::string& what, const DeformationCheck& c) {
    std::string s = what + ": " + (c.ok ? "true deformation" : "fails");
    if (!c.ok && c.witness) s += " at t^" + std::to_string(c.power) + " on " + tuple_str({(*c.witness)[0], (*c.witness)[1], (*c.witness)[2]});
    return s + " (" + std::to_string(c.triples_checked) + " triples)\n";
}

Report run_deform(const Global& g, const DeformArgs& a) {
    HomCochain c = load_cochain(a.cocycle);
    Rational t;
    try {
        t = parse_rational(a.t);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const int N = std::min(g.N, c.max_index());
    DeformationSpec spec = make_spec(c.restricted(N), N, t);
    const int window = a.window.value_or(N / 2);
    Report r;
    r.payload["t"] = rational_json(t);
    const GradedAlgebra deformed = deform(spec);
    r.payload["algebra"] = algebra_json(deformed);
    std::ostringstream out;
    out << "deformed bracket, N=" << N << ", t=" << to_string(t) << "\n";
    for (const auto& [ij, vec] : deformed.table())
        for (const auto& [k, v] : vec)
            out << "  [e" << ij.first << ",e" << ij.second << "] += " << to_string(v) << " e" << k << "\n";
    if (a.check || a.compensate) {
        auto chk = is_true_deformation(spec, window);
        r.payload["check"] = check_block(chk);
        out << check_line("check", chk);
        r.ok = chk.ok;
        if (!chk.ok && a.compensate) {
            auto comp = with_compensation(spec, window);
            r.payload["compensated"] = comp.compensated;
            r.payload["compensated_check"] = check_block(comp.final);
            if (comp.spec.quadratic) r.payload["quadratic"] = cochain_json(*comp.spec.quadratic);
            out << check_line("with quadratic correction", comp.final);
            if (!comp.note.empty()) out << "  note: " << comp.note << "\n";
            r.ok = comp.final.ok;
        }
    }
    r.table = out.str();
    return r;
}

// ---- targets

struct TargetsArgs {
    int weight = 0;
};

Report run_targets(const Global& g, const TargetsArgs& a) {
    Report r;
    std::ostringstream t;
    if (a.weight == 0) {
        r.payload["targets"] = Json::array();
        for (const auto& w : weight_zero_targets(g.N)) {
            GradedAlgebra d = deform(w.spec);
            bool equal = d == w.target;
            auto chk = is_true_deformation(w.spec, g.N / 2);
            Json j;
            j["name"] = w.name;
            j["matches_target"] = equal;
            j["check"] = check_block(chk);
            j["cocycle"] = cochain_json(w.spec.cocycle);
            j["algebra"] = algebra_json(d);
            r.payload["targets"].push_back(std::move(j));
            t << w.name << ": bracket table " << (equal ? "matches" : "differs") << ", "
              << (chk.ok ? "true deformation" : "not a true deformation") << "\n";
            r.ok = r.ok && equal && chk.ok;
        }
    }
    if (a.weight < -8 || a.weight > 8) throw UsageError("--weight must lie in [-8, 8]");
    auto count = count_true_deformations(a.weight);
    r.payload["catalogue"] = count_json(count);
    t << "weight " << a.weight << ": " << count.dimension << " independent true deformation(s), cohomology rank "
      << count.cohomology_rank;
    if (count.expected) t << ", expected " << *count.expected;
    t << "\n";
    for (const auto& m : count.members) {
        t << "  " << m.name << ": "
          << (m.true_deformation ? (m.coboundary ? "true, coboundary" : "true") : "not true");
        if (!m.note.empty()) t << " (" << m.note << ")";
        t << "\n";
    }
    for (const auto& n : count.notes) t << "  note: " << n << "\n";
    if (count.expected && count.dimension != *count.expected) r.ok = false;
    r.table = t.str();
    return r;
}

// ---- suppress

struct SuppressArgs {
    int m = 2;
    int max_index = 40;
};

Report run_suppress(const Global&, const SuppressArgs& a) {
    if (a.m < 2) throw UsageError("--m must be at least 2");
    auto s = l1_suppressed(a.m, a.max_index);
    auto cc = is_cocycle(s.extracted_cocycle);
    auto sq = all_squares_zero(s.extracted_cocycle, a.max_index);
    Report r;
    r.payload["m"] = a.m;
    r.payload["algebra"] = algebra_json(s.algebra);
    r.payload["cocycle"] = cochain_json(s.extracted_cocycle);
    r.payload["is_cocycle"] = cc.ok;
    r.payload["square_zero"] = sq.ok;
    std::ostringstream t;
    t << "L1{" << a.m << "}, weight " << s.extracted_cocycle.weight() << " cocycle\n";
    for (int i = 2; i + 1 <= std::min(a.max_index, 8); ++i)
        t << "  a_{" << i << "," << i + 1 << "} = " << to_string(s.extracted_cocycle.at({i, i + 1})) << "\n";
    t << "cocycle: " << (cc.ok ? "yes" : "no") << ", square zero: " << (sq.ok ? "yes" : "no") << "\n";
    r.ok = cc.ok && sq.ok;
    r.table = t.str();
    return r;
}

// ---- verify-all

Report run_verify_all(const Global& g, const std::vector<int>& only) {
    AcceptanceConfig cfg;
    cfg.N = g.N;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    for (int id : only)
        if (id < 1 || id > kCriteria) throw UsageError("--only takes ids in 1.." + std::to_string(kCriteria));
    std::vector<CriterionResult> results;
    if (only.empty())
        results = run_acceptance(cfg);
    else
        for (int id : only) results.push_back(run_criterion(id, cfg));
    Report r;
    r.payload = Json::array();
    std::ostringstream t;
    for (const auto& c : results) {
        r.payload.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
        t << (c.pass ? "PASS " : "FAIL ") << std::setw(2) << c.id << " " << c.title << ": " << c.detail << "\n";
        r.ok = r.ok && c.pass;
    }
    r.table = t.str();
    return r;
}

void emit(const Global& g, const std::string& command, const Report& r) {
    std::string text;
    if (g.json) {
        Json env;
        env["tool"] = "filiform";
        env["version"] = kVersion;
        env["command"] = command;
        env["ok"] = r.ok;
        env["result"] = r.payload;
        text = env.dump(2) + "\n";
    } else {
        text = r.table;
    }
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        auto path = std::filesystem::path(g.out_dir) / (command + (g.json ? ".json" : ".txt"));
        std::ofstream(path) << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology, Massey obstructions and deformations of the filiform Lie algebra m0"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key=value file; flags given on the command line win");
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_flag("--json", g.json, "emit JSON instead of a table");
    app.add_option("--N", g.N, "truncation degree")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized probes")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "also write the output to this directory")->envname("FILIFORM_OUT_DIR");

    CohomologyArgs coh;
    auto* c_coh = app.add_subcommand("cohomology", "dimensions of H^q_l at truncation N");
    c_coh->add_option("--q", coh.q, "degree, 1 or 2")->capture_default_str();
    c_coh->add_option("--weights", coh.weights, "weight range lo..hi")->capture_default_str();

    FamilyArgs fam;
    auto* c_fam = app.add_subcommand("family", "coefficient table of a k-family");
    c_fam->add_option("--k", fam.k)->required();
    c_fam->add_option("--weight", fam.weight)->capture_default_str();
    c_fam->add_option("--max-index", fam.max_index)->capture_default_str();
    c_fam->add_flag("--allow-contradictory", fam.allow_contradictory);

    MasseyArgs mas;
    bool mas_all = false;
    auto* c_mas = app.add_subcommand("massey", "Massey squares of a 2-cocycle");
    c_mas->add_option("--cocycle", mas.cocycle, "cochain JSON file")->required()->check(CLI::ExistingFile);
    c_mas->add_option("--weight", mas.weight);
    c_mas->add_option("--window", mas.window);
    auto* all_flag = c_mas->add_flag("--all", mas_all, "every in-window triple (default)");
    c_mas->add_option("--triple", mas.triple, "single triple i j k")->expected(3)->excludes(all_flag);

    SolveArgs sol;
    auto* c_sol = app.add_subcommand("solve", "quadratic Massey system in the diagonal unknowns");
    c_sol->add_option("--weight", sol.weight)->capture_default_str();
    c_sol->add_option("--vars", sol.vars)->capture_default_str();
    c_sol->add_option("--level-max", sol.level_max)->capture_default_str();
    c_sol->add_option("--equations", sol.equations, "all, m23k or full")->capture_default_str();
    c_sol->add_option("--extend", sol.extend, "further levels for each branch")->capture_default_str();
    c_sol->add_option("--max-branches", sol.max_branches)->capture_default_str();
    c_sol->add_flag("--probe-dimension", sol.probe_dimension);

    DeformArgs def;
    auto* c_def = app.add_subcommand("deform", "deformed bracket of m0 along a cocycle");
    c_def->add_option("--cocycle", def.cocycle, "cochain JSON file")->required()->check(CLI::ExistingFile);
    c_def->add_option("--t", def.t)->capture_default_str();
    c_def->add_flag("--check", def.check, "verify the Jacobi identity in t");
    c_def->add_flag("--compensate", def.compensate, "attach the quadratic correction when needed");
    c_def->add_option("--window", def.window);

    TargetsArgs tgt;
    auto* c_tgt = app.add_subcommand("targets", "named deformations and catalogue counts in a weight");
    c_tgt->add_option("--weight", tgt.weight)->capture_default_str();

    SuppressArgs sup;
    auto* c_sup = app.add_subcommand("suppress", "L1 with e_2..e_{m+1} suppressed");
    c_sup->add_option("--m", sup.m)->capture_default_str();
    c_sup->add_option("--max-index", sup.max_index)->capture_default_str();

    std::vector<int> only;
    auto* c_ver = app.add_subcommand("verify-all", "run every acceptance check");
    c_ver->add_option("--only", only, "run just these criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        check_run_config(g);
        Report r;
        std::string name;
        if (*c_coh) r = run_cohomology(g, coh), name = "cohomology";
        else if (*c_fam) r = run_family(g, fam), name = "family";
        else if (*c_mas) r = run_massey(g, mas), name = "massey";
        else if (*c_sol) r = run_solve(g, sol), name = "solve";
        else if (*c_def) r = run_deform(g, def), name = "deform";
        else if (*c_tgt) r = run_targets(g, tgt), name = "targets";
        else if (*c_sup) r = run_suppress(g, sup), name = "suppress";
        else if (*c_ver) r = run_verify_all(g, only), name = "verify-all";
        emit(g, name, r);
        return r.ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
