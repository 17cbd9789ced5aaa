#include "filiform/json_io.hpp"

#include "filiform/error.hpp"

#include <fstream>

namespace filiform {

namespace {

void put_fraction(Json& j, const Rational& v) {
    j["num"] = v.get_num().get_str();
    j["den"] = v.get_den().get_str();
}

Rational get_fraction(const Json& j) {
    return make_rational(j.at("num").get<std::string>(), j.at("den").get<std::string>());
}

Json triple_json(const std::optional<Triple>& t) {
    if (!t) return nullptr;
    return Json::array({(*t)[0], (*t)[1], (*t)[2]});
}

Json assignments_json(const std::map<int, Rational>& u) {
    Json out = Json::object();
    for (const auto& [m, v] : u) out[variable_name(m)] = rational_json(v);
    return out;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_object()) return get_fraction(j);
    throw Error(ErrorCode::ParseError, "rational must be a string, integer or num/den object");
}

Json algebra_json(const GradedAlgebra& A) {
    Json out;
    out["N"] = A.N();
    if (!A.name().empty()) out["name"] = A.name();
    Json entries = Json::array();
    for (const auto& [ij, vec] : A.table())
        for (const auto& [k, c] : vec) {
            Json e;
            e["i"] = ij.first;
            e["j"] = ij.second;
            e["k"] = k;
            put_fraction(e, c);
            entries.push_back(std::move(e));
        }
    out["entries"] = std::move(entries);
    return out;
}

GradedAlgebra algebra_from_json(const Json& j) {
    try {
        GradedAlgebra A(j.at("N").get<int>(), j.value("name", std::string{}));
        for (const auto& e : j.at("entries"))
            A.set_bracket(e.at("i").get<int>(), e.at("j").get<int>(), e.at("k").get<int>(), get_fraction(e));
        return A;
    } catch (const Json::exception& ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

Json cochain_json(const HomCochain& c) {
    Json out;
    out["q"] = c.degree();
    out["l"] = c.weight();
    out["max_index"] = c.max_index();
    Json coeffs = Json::array();
    for (const auto& [idx, v] : c.coeffs()) {
        Json e;
        e["idx"] = idx;
        put_fraction(e, v);
        coeffs.push_back(std::move(e));
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

HomCochain cochain_from_json(const Json& j) {
    try {
        HomCochain c(j.at("q").get<int>(), j.at("l").get<int>(), j.at("max_index").get<int>());
        for (const auto& e : j.at("coeffs")) c.set(e.at("idx").get<Index>(), get_fraction(e));
        return c;
    } catch (const Json::exception& ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

HomCochain read_cochain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& ex) {
        throw Error(ErrorCode::ParseError, path + ": " + ex.what());
    }
    return cochain_from_json(j);
}

Json cohomology_json(const CohomologyReport& r) {
    Json out;
    out["q"] = r.q;
    out["l"] = r.l;
    out["N"] = r.N;
    out["dim"] = r.dim_window;
    out["stable"] = r.stable;
    out["cocycles"] = r.cocycle_dim;
    out["coboundaries"] = r.coboundary_rank;
    return out;
}

Json quadratic_json(const Quadratic& q) {
    Json out = Json::array();
    for (const auto& [mn, v] : q) {
        Json t;
        t["vars"] = Json::array({mn.first, mn.second});
        t["coeff"] = rational_json(v);
        out.push_back(std::move(t));
    }
    return out;
}

Json system_json(const QuadraticSystem& s) {
    Json out;
    out["l"] = s.l;
    out["vars"] = s.V;
    out["level_max"] = s.level_max;
    out["equations_set"] = equation_set_name(s.set);
    Json eqs = Json::array();
    for (const auto& e : s.equations) {
        Json j;
        j["level"] = e.level;
        j["source"] = e.source;
        j["text"] = render(e.terms);
        j["terms"] = quadratic_json(e.terms);
        j["raw"] = render(e.raw);
        eqs.push_back(std::move(j));
    }
    out["equations"] = std::move(eqs);
    Json ranks = Json::object();
    for (const auto& [level, r] : s.rank_by_level) ranks[std::to_string(level)] = r;
    out["rank_by_level"] = std::move(ranks);
    return out;
}

Json branch_json(const SolutionBranch& b) {
    Json out;
    out["l"] = b.l;
    out["normalization"] = variable_name(b.normalization);
    out["verified_level"] = b.verified_level;
    out["assignments"] = assignments_json(b.assignments);
    return out;
}

Json curve_json(const CurveBranch& c) {
    Json out;
    out["l"] = c.l;
    out["normalization"] = variable_name(c.normalization);
    out["parameter"] = variable_name(c.parameter);
    out["verified_level"] = c.verified_level;
    Json u = Json::object();
    for (const auto& [m, f] : c.assignments) u[variable_name(m)] = f.str();
    out["assignments"] = std::move(u);
    return out;
}

Json solve_json(const SolveResult& r) {
    Json out;
    out["branches"] = Json::array();
    for (const auto& b : r.branches) out["branches"].push_back(branch_json(b));
    out["curves"] = Json::array();
    for (const auto& c : r.curves) out["curves"].push_back(curve_json(c));
    out["unconstrained_charts"] = Json::array();
    for (int m : r.unconstrained_charts) out["unconstrained_charts"].push_back(variable_name(m));
    out["irrational_candidates"] = r.irrational_candidates;
    out["depth_exceeded"] = r.depth_exceeded;
    out["diagnostics"] = r.diagnostics;
    return out;
}

Json extend_json(const ExtendResult& r) {
    Json out;
    out["survives"] = r.survives;
    out["extended"] = branch_json(r.extended);
    out["diagnostics"] = r.diagnostics;
    return out;
}

Json deformation_check_json(const DeformationCheck& c) {
    Json out;
    out["ok"] = c.ok;
    out["witness"] = triple_json(c.witness);
    out["power"] = c.power;
    out["triples_checked"] = c.triples_checked;
    return out;
}

Json count_json(const DeformationCount& c) {
    Json out;
    out["l"] = c.l;
    out["dimension"] = c.dimension;
    out["cohomology_rank"] = c.cohomology_rank;
    out["expected"] = c.expected ? Json(*c.expected) : Json(nullptr);
    Json members = Json::array();
    for (const auto& m : c.members) {
        Json j;
        j["name"] = m.name;
        j["cocycle"] = m.cocycle;
        j["square_zero"] = m.square_zero;
        j["compensated"] = m.compensated;
        j["true_deformation"] = m.true_deformation;
        j["coboundary"] = m.coboundary;
        j["cocycle_witness"] = m.cocycle_witness ? Json(*m.cocycle_witness) : Json(nullptr);
        j["square_witness"] = triple_json(m.square_witness);
        j["note"] = m.note;
        members.push_back(std::move(j));
    }
    out["members"] = std::move(members);
    out["notes"] = c.notes;
    return out;
}

}  // namespace filiform
