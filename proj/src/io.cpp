#include "taydom/io.hpp"

#include <sstream>

namespace taydom::io {

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

long need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<long>();
}

}  // namespace

json to_json(const Rat& r) { return r.to_string(); }

Rat rat_from(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw SchemaError("rational values must be \"p/q\" strings");
    try {
        return Rat::from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

json to_json(const Param& p) {
    if (param_exact(p)) return json{{"exact", std::get<Rat>(p).to_string()}};
    const BF& b = std::get<BF>(p);
    return json{{"float", json{{"hex", b.to_hex_string()}, {"prec", b.precision()}, {"approx", b.to_string()}}}};
}

Param param_from(const json& j) {
    if (j.is_string() || j.is_number_integer()) return rat_from(j);
    if (j.contains("exact")) return rat_from(j.at("exact"));
    if (j.contains("float")) {
        const json& f = j.at("float");
        return BF::from_hex_string(need(f, "hex").get<std::string>(),
                                   static_cast<unsigned>(need_int(f, "prec")));
    }
    throw SchemaError("parameter must carry 'exact' or 'float'");
}

json complex_json(const CF& z) {
    return json{{"re", z.re.to_string()}, {"im", z.im.to_string()}};
}

json to_json(const PolyQ& p) {
    json arr = json::array();
    for (auto& c : p.coeffs()) arr.push_back(c.to_string());
    return arr;
}

PolyQ poly_from(const json& j) {
    if (!j.is_array()) throw SchemaError("polynomial must be a coefficient array (ascending)");
    std::vector<Rat> c;
    for (auto& v : j) c.push_back(rat_from(v));
    return PolyQ(std::move(c));
}

json to_json(const SeqRule& r) {
    if (r.kind() == SeqRule::Kind::tabulated) {
        json out{{"type", "tabulated"}, {"start", r.table_start()}};
        json vals = json::array();
        for (auto& v : r.table()) vals.push_back(v.to_string());
        out["values"] = vals;
        if (r.tail_bound()) out["tail_bound"] = r.tail_bound()->to_string();
        return out;
    }
    if (r.is_zero_rule()) return json{{"type", "zero"}};
    return json{{"type", "closed"}, {"num", to_json(r.num())}, {"den", to_json(r.den())},
                {"geom", r.geom().to_string()}};
}

SeqRule seqrule_from(const json& j) {
    std::string type = need(j, "type").get<std::string>();
    if (type == "zero") return SeqRule::zero();
    if (type == "closed" || type == "rational") {
        PolyQ num = poly_from(need(j, "num"));
        PolyQ den = j.contains("den") ? poly_from(j.at("den")) : PolyQ::constant(Rat(1));
        Rat g = j.contains("geom") ? rat_from(j.at("geom")) : Rat(1);
        if (num.is_zero()) return SeqRule::zero();
        return SeqRule::closed(std::move(num), std::move(den), std::move(g));
    }
    if (type == "tabulated") {
        std::vector<Rat> vals;
        for (auto& v : need(j, "values")) vals.push_back(rat_from(v));
        std::optional<Rat> tail;
        if (j.contains("tail_bound")) tail = rat_from(j.at("tail_bound"));
        return SeqRule::tabulated(need_int(j, "start"), std::move(vals), std::move(tail));
    }
    throw SchemaError("unknown sequence-rule type '" + type + "'");
}

json to_json(const RecurrenceSpec& s) {
    json out{{"d", s.d}};
    json cp = json::array();
    for (auto& c : s.constant_part) cp.push_back(c.to_string());
    out["constant"] = cp;
    if (!s.perturbation.empty()) {
        json ps = json::array();
        for (auto& p : s.perturbation) ps.push_back(to_json(p));
        out["perturbation"] = ps;
    }
    if (s.declared_bounds)
        out["declared_bounds"] =
            json{{"K", s.declared_bounds->K.to_string()}, {"rho", s.declared_bounds->rho.to_string()}};
    if (s.delta) out["delta"] = to_json(*s.delta);
    return out;
}

RecurrenceSpec recurrence_from(const json& j) {
    RecurrenceSpec s;
    s.d = static_cast<int>(need_int(j, "d"));
    for (auto& c : need(j, "constant")) s.constant_part.push_back(rat_from(c));
    if (j.contains("perturbation"))
        for (auto& p : j.at("perturbation")) s.perturbation.push_back(seqrule_from(p));
    if (j.contains("declared_bounds")) {
        const json& db = j.at("declared_bounds");
        s.declared_bounds = DeclaredBounds{rat_from(need(db, "K")), rat_from(need(db, "rho"))};
    }
    if (j.contains("delta")) s.delta = seqrule_from(j.at("delta"));
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return s;
}

json to_json(const CoefficientSequence& s) {
    json vals = json::array();
    for (auto& v : s.values) vals.push_back(v.to_string());
    return json{{"values", vals}, {"provenance", s.provenance}};
}

CoefficientSequence sequence_from(const json& j) {
    CoefficientSequence s;
    const json& vals = j.is_array() ? j : need(j, "values");
    for (auto& v : vals) s.values.push_back(rat_from(v));
    if (j.is_object() && j.contains("provenance")) s.provenance = j.at("provenance").get<std::string>();
    return s;
}

json to_json(const SRule& s) {
    switch (s.kind) {
        case SRule::Kind::constant: return json{{"kind", "constant"}, {"C", to_json(s.C)}};
        case SRule::Kind::turan: return json{{"kind", "turan"}, {"d", s.turan_d}};
        case SRule::Kind::tabulated: {
            json vals = json::array();
            for (auto& v : s.table) vals.push_back(v.to_string());
            return json{{"kind", "tabulated"}, {"start", s.table_start}, {"values", vals}};
        }
    }
    throw std::logic_error("SRule: bad kind");
}

SRule srule_from(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "constant") return SRule::constant_rule(param_from(need(j, "C")));
    if (kind == "turan") return SRule::turan_rule(static_cast<int>(need_int(j, "d")));
    if (kind == "tabulated") {
        std::vector<Rat> vals;
        for (auto& v : need(j, "values")) vals.push_back(rat_from(v));
        return SRule::tabulated_rule(need_int(j, "start"), std::move(vals));
    }
    throw SchemaError("unknown S-rule kind '" + kind + "'");
}

json to_json(const DominationCertificate& c) {
    json prov{{"rule", c.prov.rule}};
    json detail = json::object();
    for (auto& [k, v] : c.prov.detail) detail[k] = v;
    prov["detail"] = detail;
    return json{{"N", c.N}, {"R", to_json(c.R)}, {"s_rule", to_json(c.s_rule)}, {"provenance", prov}};
}

DominationCertificate certificate_from(const json& j) {
    DominationCertificate c;
    c.N = static_cast<int>(need_int(j, "N"));
    c.R = param_from(need(j, "R"));
    c.s_rule = srule_from(need(j, "s_rule"));
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        if (p.contains("rule")) c.prov.rule = p.at("rule").get<std::string>();
        if (p.contains("detail"))
            for (auto& [k, v] : p.at("detail").items()) c.prov.detail.emplace_back(k, v.get<std::string>());
    }
    return c;
}

json to_json(const VerificationReport& r) {
    json out{{"pass", r.pass},          {"exact", r.exact},   {"horizon", r.horizon},
             {"worst_k", r.worst_k},    {"worst_ratio", r.worst_ratio}};
    if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
    if (!r.ratios.empty()) {
        json rows = json::array();
        for (auto& [k, ratio] : r.ratios) rows.push_back(json{{"k", k}, {"ratio", ratio}});
        out["ratios"] = rows;
    }
    return out;
}

json to_json(const ZeroCount& z) {
    return json{{"radius", z.radius.to_string()}, {"count", z.count},       {"residual", z.residual},
                {"nodes", z.nodes},               {"reliable", z.reliable}};
}

json to_json(const ZeroBoundCertificate& z) {
    json out{{"N", z.N},
             {"R_prime", z.R_prime.to_string()},
             {"R", to_json(z.R)},
             {"certified", z.certified},
             {"note", z.note}};
    if (z.certified) {
        out["r_star"] = z.r_star.to_string();
        out["tail_bound"] = z.tail_bound.to_string();
        out["min_modulus"] = z.min_modulus.to_string();
        out["bound"] = z.N;
    }
    return out;
}

json to_json(const ValencyProbe& v) {
    return json{{"polynomial", v.polynomial}, {"slope", v.slope},   {"threshold", v.threshold},
                {"pass", v.pass},             {"points", v.points}};
}

json to_json(const DifferentialOperator& op) {
    json ps = json::array();
    for (auto& p : op.p) ps.push_back(to_json(p));
    return json{{"n", op.n}, {"p", ps}};
}

DifferentialOperator operator_from(const json& j) {
    DifferentialOperator op;
    op.n = static_cast<int>(need_int(j, "n"));
    for (auto& p : need(j, "p")) op.p.push_back(poly_from(p));
    try {
        op.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return op;
}

json to_json(const PieceFun& g) {
    json cuts = json::array();
    for (auto& c : g.cuts) cuts.push_back(c.to_string());
    json pieces = json::array();
    for (auto& pc : g.pieces) {
        json p{{"poly", to_json(pc.poly)}};
        if (pc.exp_mu) p["exp_mu"] = pc.exp_mu->to_string();
        pieces.push_back(p);
    }
    return json{{"a", g.a.to_string()}, {"b", g.b.to_string()}, {"cuts", cuts}, {"pieces", pieces}};
}

PieceFun piecefun_from(const json& j) {
    PieceFun g;
    g.a = rat_from(need(j, "a"));
    g.b = rat_from(need(j, "b"));
    if (j.contains("cuts"))
        for (auto& c : j.at("cuts")) g.cuts.push_back(rat_from(c));
    for (auto& p : need(j, "pieces")) {
        Piece pc;
        pc.poly = poly_from(need(p, "poly"));
        if (p.contains("exp_mu")) pc.exp_mu = rat_from(p.at("exp_mu"));
        g.pieces.push_back(std::move(pc));
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return g;
}

json to_json(const MomentRecurrence& mr) {
    json qs = json::array();
    for (long ell = -mr.n; ell <= mr.alpha; ++ell)
        qs.push_back(json{{"ell", ell}, {"q", to_json(mr.q_of(ell))}});
    return json{{"n", mr.n}, {"alpha", mr.alpha}, {"q", qs}};
}

json to_json(const EpsilonRule& er) {
    json terms = json::array();
    for (auto& t : er.terms) terms.push_back(json{{"x", t.x.to_string()}, {"w", to_json(t.w)}});
    json corr = json::array();
    for (auto& [k, v] : er.corrections) corr.push_back(json{{"k", k}, {"value", v.to_string()}});
    return json{{"terms", terms}, {"corrections", corr}};
}

json to_json(const VanishingBound& vb) {
    return json{{"bound", vb.bound}, {"case", vb.case_tag}, {"note", vb.note}};
}

json to_json(const StieltjesParams& sp) {
    return json{{"N", sp.N}, {"R_star", to_json(sp.R_star)}, {"tau", sp.tau}, {"Lambda", sp.Lambda}};
}

json to_json(const MultiPoly& p) {
    json terms = json::array();
    for (auto& [e, c] : p.terms()) {
        json beta = json::array();
        for (auto v : e) beta.push_back(v);
        terms.push_back(json{{"beta", beta}, {"c", c.to_string()}});
    }
    return json{{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly multipoly_from(const json& j, int nvars) {
    int nv = j.contains("nvars") ? static_cast<int>(need_int(j, "nvars")) : nvars;
    MultiPoly p(nv);
    for (auto& t : need(j, "terms")) {
        MultiPoly::Exp e;
        for (auto& b : need(t, "beta")) e.push_back(b.get<std::uint32_t>());
        if (static_cast<int>(e.size()) != nv) throw SchemaError("monomial exponent arity mismatch");
        p = p + MultiPoly::monomial(nv, std::move(e), rat_from(need(t, "c")));
    }
    return p;
}

json to_json(const ParametricRecurrence& r) {
    json stages = json::array();
    for (auto& st : r.stages) {
        json terms = json::array();
        for (auto& t : st.terms) {
            json u = json::array();
            for (auto v : t.u_exp) u.push_back(v);
            terms.push_back(json{{"u", u}, {"coeff", to_json(t.coeff)}});
        }
        stages.push_back(json{{"terms", terms}});
    }
    return json{{"d", r.d}, {"nparams", r.nparams}, {"stages", stages}};
}

ParametricRecurrence parametric_from(const json& j) {
    ParametricRecurrence r;
    r.d = static_cast<int>(need_int(j, "d"));
    r.nparams = static_cast<int>(need_int(j, "nparams"));
    for (auto& st : need(j, "stages")) {
        ParametricStage stage;
        for (auto& t : need(st, "terms")) {
            ParametricTerm term;
            for (auto& u : need(t, "u")) term.u_exp.push_back(u.get<std::uint32_t>());
            term.coeff = multipoly_from(need(t, "coeff"), r.nparams);
            stage.terms.push_back(std::move(term));
        }
        r.stages.push_back(std::move(stage));
    }
    try {
        r.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return r;
}

json to_json(const UniformCReport& r) {
    json samples = json::array();
    for (auto& s : r.samples) {
        json lam = json::array();
        for (auto& v : s.lambda) lam.push_back(v.to_string());
        json row{{"lambda", lam}, {"zero_locus", s.zero_locus}};
        if (!s.zero_locus) row["C_min"] = s.C_min.to_string();
        samples.push_back(row);
    }
    return json{{"N", r.N},
                {"R", r.R.to_string()},
                {"horizon", r.horizon},
                {"C_sup", r.C_sup.to_string()},
                {"zero_locus_count", r.zero_locus_count},
                {"samples", samples}};
}

json to_json(const A0Profile& p) {
    return json{{"K1", p.K1.to_string()},
                {"K2", p.K2.to_string()},
                {"K3", p.K3.to_string()},
                {"K4", p.K4.to_string()},
                {"norm", p.norm}};
}

json to_json(const AbelEquation& e) {
    return json{{"p", to_json(e.p)}, {"q", to_json(e.q)}, {"a", e.a.to_string()}, {"b", e.b.to_string()}};
}

AbelEquation abel_from(const json& j) {
    AbelEquation e;
    e.p = poly_from(need(j, "p"));
    e.q = poly_from(need(j, "q"));
    e.a = rat_from(need(j, "a"));
    e.b = rat_from(need(j, "b"));
    try {
        e.validate();
    } catch (const std::invalid_argument& ex) {
        throw SchemaError(ex.what());
    }
    return e;
}

json to_json(const PoincareExpansion& e) {
    json vs = json::array();
    for (std::size_t k = 0; k < e.v.size(); ++k) vs.push_back(json{{"k", k}, {"v", to_json(e.v[k])}});
    return json{{"shift", e.shift.to_string()},
                {"length", e.length.to_string()},
                {"orientation", e.orientation},
                {"v", vs}};
}

json to_json(const FixedPointCount& f) {
    json out{{"center", f.center}, {"order_used", f.order_used}};
    if (!f.center) out["count"] = to_json(f.count);
    return out;
}

std::string sequence_csv(const CoefficientSequence& s, bool exact_mode) {
    std::ostringstream os;
    if (exact_mode) {
        os << "k,num,den\n";
        for (long k = 0; k < s.size(); ++k)
            os << k << ',' << s[k].num_string() << ',' << s[k].den_string() << '\n';
    } else {
        os << "k,re,im\n";
        for (long k = 0; k < s.size(); ++k) os << k << ',' << BF(s[k], MPFR_RNDN).to_string() << ",0\n";
    }
    return os.str();
}

namespace {

void render_value(std::ostringstream& os, const json& v) {
    if (v.is_string())
        os << v.get<std::string>();
    else
        os << v.dump();
}

void render_section(std::ostringstream& os, const std::string& name, const json& v, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (v.is_object()) {
        os << pad << name << ":\n";
        for (auto& [k, sub] : v.items()) render_section(os, k, sub, depth + 1);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        // column table
        os << pad << name << ":\n";
        std::vector<std::string> cols;
        for (auto& [k, sub] : v.front().items()) cols.push_back(k);
        std::vector<std::size_t> width;
        for (auto& c : cols) width.push_back(c.size());
        std::vector<std::vector<std::string>> rows;
        for (auto& row : v) {
            std::vector<std::string> cells;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                std::ostringstream cell;
                if (row.contains(cols[i])) render_value(cell, row.at(cols[i]));
                cells.push_back(cell.str());
                width[i] = std::max(width[i], cells.back().size());
            }
            rows.push_back(std::move(cells));
        }
        os << pad << "  ";
        for (std::size_t i = 0; i < cols.size(); ++i) os << cols[i] << std::string(width[i] - cols[i].size() + 2, ' ');
        os << '\n';
        for (auto& r : rows) {
            os << pad << "  ";
            for (std::size_t i = 0; i < cols.size(); ++i) os << r[i] << std::string(width[i] - r[i].size() + 2, ' ');
            os << '\n';
        }
    } else {
        os << pad << name << ": ";
        render_value(os, v);
        os << '\n';
    }
}

}  // namespace

std::string render_table(const json& machine) {
    std::ostringstream os;
    if (machine.is_object())
        for (auto& [k, v] : machine.items()) render_section(os, k, v, 0);
    else
        os << machine.dump(2) << '\n';
    return os.str();
}

}  // namespace taydom::io
