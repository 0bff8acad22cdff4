// Python bindings: the main operations behind the same JSON boundary the CLI
// speaks, plus a few direct numeric helpers.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taydom/io.hpp"
#include "taydom/suite.hpp"

namespace py = pybind11;
using namespace taydom;
using io::json;

namespace {

json parse(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const std::exception& e) {
        throw io::SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

std::vector<Rat> rats(const std::vector<std::string>& xs) {
    std::vector<Rat> out;
    out.reserve(xs.size());
    for (auto& s : xs) out.push_back(Rat::from_string(s));
    return out;
}

std::vector<std::string> strs(const std::vector<Rat>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (auto& r : xs) out.push_back(r.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Taylor domination toolkit: recurrences, certificates, zero bounds, "
              "piecewise D-finite moments, Bautin witnesses, Abel return maps";

    py::register_exception<io::SchemaError>(m, "SchemaError");

    m.def(
        "generate",
        [](const std::string& spec_json, const std::vector<std::string>& init, long horizon) {
            RecurrenceSpec spec = io::recurrence_from(parse(spec_json));
            return strs(generate(spec, rats(init), horizon).values);
        },
        py::arg("recurrence"), py::arg("init"), py::arg("horizon"),
        "Exact coefficient sequence a_0..a_K as rational strings");

    m.def(
        "characteristic_roots",
        [](const std::string& spec_json) {
            RecurrenceSpec spec = io::recurrence_from(parse(spec_json));
            auto cd = characteristic_data(spec);
            std::vector<std::complex<double>> roots;
            for (auto& r : cd.roots.roots)
                for (int i = 0; i < r.multiplicity; ++i) roots.push_back(r.value.to_complex());
            return py::make_tuple(roots, cd.rho.to_double());
        },
        py::arg("recurrence"), "(roots with multiplicity, rho)");

    m.def(
        "radius_estimate",
        [](const std::vector<std::string>& seq, long window) {
            CoefficientSequence s;
            s.values = rats(seq);
            auto est = radius_estimate(s, window);
            return py::make_tuple(est.eventually_zero, est.estimate.to_double());
        },
        py::arg("sequence"), py::arg("window") = 100, "(eventually_zero, limsup |a_k|^{1/k} estimate)");

    m.def(
        "poly_roots",
        [](const std::vector<std::string>& coeffs) {
            PolyQ p(rats(coeffs));
            auto rs = poly_roots(p);
            std::vector<std::pair<std::complex<double>, int>> out;
            for (auto& r : rs.roots) out.emplace_back(r.value.to_complex(), r.multiplicity);
            return out;
        },
        py::arg("coeffs"), "Certified complex roots with multiplicities (ascending coefficients)");

    m.def(
        "certify",
        [](const std::string& doc_json, const std::string& method, long horizon, unsigned precision) {
            BF::set_default_precision(precision);
            json doc = parse(doc_json);
            DominationCertificate cert;
            std::optional<CoefficientSequence> seq;
            if (method == "stieltjes") {
                DifferentialOperator op = io::operator_from(doc.at("operator"));
                PieceFun g = io::piecefun_from(doc.at("g"));
                PiecewiseData pw = piecewise_data(g, op.n);
                CoefficientSequence mom = direct_moments(g, horizon);
                cert = stieltjes_certificate(op, pw, mom);
                seq = std::move(mom);
            } else {
                RecurrenceSpec spec = io::recurrence_from(doc.at("recurrence"));
                if (method == "turan")
                    cert = cert_turan(spec);
                else if (method == "bounded" && doc.contains("K") && doc.contains("rho"))
                    cert = cert_bounded_at(spec, io::rat_from(doc.at("K")), io::rat_from(doc.at("rho")));
                else if (method == "bounded")
                    cert = cert_bounded(spec);
                else if (method == "poincare")
                    cert = cert_poincare(spec);
                else
                    throw io::SchemaError("unknown method '" + method + "'");
                if (doc.contains("init")) {
                    std::vector<Rat> init;
                    for (auto& v : doc.at("init")) init.push_back(io::rat_from(v));
                    seq = generate(spec, init, horizon);
                }
            }
            json out{{"certificate", io::to_json(cert)}};
            if (seq) out["verification"] = io::to_json(verify(*seq, cert, std::min<long>(horizon, seq->size() - 1)));
            return out.dump();
        },
        py::arg("doc"), py::arg("method") = "turan", py::arg("horizon") = 300, py::arg("precision") = 256,
        "Certificate (+ verification when initial data is present) as a JSON string");

    m.def(
        "verify",
        [](const std::string& doc_json, long horizon) {
            json doc = parse(doc_json);
            DominationCertificate cert = io::certificate_from(doc.at("certificate"));
            CoefficientSequence seq;
            if (doc.contains("sequence")) {
                seq = io::sequence_from(doc.at("sequence"));
            } else {
                RecurrenceSpec spec = io::recurrence_from(doc.at("recurrence"));
                std::vector<Rat> init;
                for (auto& v : doc.at("init")) init.push_back(io::rat_from(v));
                seq = generate(spec, init, horizon);
            }
            return io::to_json(verify(seq, cert, std::min<long>(horizon, seq.size() - 1))).dump();
        },
        py::arg("doc"), py::arg("horizon") = 300);

    m.def(
        "count_zeros",
        [](const std::vector<std::string>& seq, const std::string& r) {
            auto zc = count_zeros(rats(seq), Rat::from_string(r));
            return py::make_tuple(zc.count, zc.residual, zc.reliable);
        },
        py::arg("coeffs"), py::arg("r"), "(count, winding residual, reliable)");

    m.def(
        "zero_bound",
        [](const std::string& doc_json) {
            json doc = parse(doc_json);
            DominationCertificate cert = io::certificate_from(doc.at("certificate"));
            std::vector<Rat> prefix;
            for (auto& v : doc.at("prefix")) prefix.push_back(io::rat_from(v));
            return io::to_json(zero_bound(cert, prefix, io::rat_from(doc.at("R_prime")))).dump();
        },
        py::arg("doc"));

    m.def(
        "dfinite",
        [](const std::string& doc_json, long horizon) {
            json doc = parse(doc_json);
            DifferentialOperator op = io::operator_from(doc.at("operator"));
            PieceFun g = io::piecefun_from(doc.at("g"));
            PiecewiseData pw = piecewise_data(g, op.n);
            OperatorAnalysis an = analyze_operator(op, pw);
            MomentRecurrence mr = moment_recurrence(op);
            EpsilonRule eps = epsilon_rule(op, pw);
            CoefficientSequence mom = direct_moments(g, horizon + std::max(mr.alpha, 0L) + 1);
            bool residual_ok = true;
            for (long k = 0; k <= std::min<long>(100, horizon); ++k)
                if (!(mr.lhs(mom.values, k) == eps.eval(k))) residual_ok = false;
            json out{{"analysis",
                      json{{"poincare_ok", an.poincare_ok}, {"alpha", an.alpha}, {"tau", an.tau},
                           {"Lambda", an.Lambda}}},
                     {"moment_recurrence", io::to_json(mr)},
                     {"epsilon", io::to_json(eps)},
                     {"moments", io::to_json(mom)},
                     {"master_oracle_residual_zero", residual_ok}};
            try {
                out["vanishing_bound"] = io::to_json(vanishing_bound(op, pw));
            } catch (const std::domain_error& e) {
                out["vanishing_bound"] = json{{"refused", e.what()}};
            }
            try {
                out["stieltjes"] = io::to_json(stieltjes_params(op, pw));
            } catch (const std::domain_error& e) {
                out["stieltjes"] = json{{"refused", e.what()}};
            }
            return out.dump();
        },
        py::arg("doc"), py::arg("horizon") = 120);

    m.def(
        "abel",
        [](const std::string& doc_json) {
            json doc = parse(doc_json);
            AbelEquation eq = io::abel_from(doc);
            long K = doc.contains("K") ? doc.at("K").get<long>() : 20;
            PoincareExpansion exp = poincare_coefficients(eq, K);
            json out{{"expansion", io::to_json(exp)},
                     {"defining_identity_ok", exp.defining_identity_ok()},
                     {"moment_like", io::to_json(moment_like(eq, K))}};
            if (doc.contains("x_star") && doc.contains("y")) {
                Rat xs = io::rat_from(doc.at("x_star")), y = io::rat_from(doc.at("y"));
                out["return_map"] = return_map_eval(exp, xs, y).to_string();
            }
            if (doc.contains("x_star") && doc.contains("r")) {
                out["fixed_points"] =
                    io::to_json(fixed_point_count(exp, io::rat_from(doc.at("x_star")), io::rat_from(doc.at("r"))));
            }
            return out.dump();
        },
        py::arg("doc"));

    m.def(
        "bautin",
        [](const std::string& doc_json) {
            json doc = parse(doc_json);
            ParametricRecurrence rec = io::parametric_from(doc.at("parametric"));
            std::vector<MultiPoly> init;
            for (auto& v : doc.at("init")) init.push_back(io::multipoly_from(v, rec.nparams));
            long K = doc.contains("K") ? doc.at("K").get<long>() : 20;
            ParametricSeries ps = generate_parametric(rec, init, K);
            IdealWitness w = ideal_witness(rec, init, K);
            json out{{"claimed_index", w.claimed_index},
                     {"identity_checked_to", K},
                     {"a0_profile", io::to_json(a0_profile(ps))}};
            if (rec.linear()) {
                auto rep = coefficient_recurrence_check(rec, ps);
                out["coefficient_identity_ok"] = rep.ok;
            }
            return out.dump();
        },
        py::arg("doc"));

    m.def(
        "acceptance",
        [](std::uint64_t seed, const std::vector<int>& only) {
            json rows = json::array();
            bool all = true;
            for (auto& r : suite::run_acceptance(seed, only)) {
                rows.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
                all = all && r.pass;
            }
            return json{{"all_pass", all}, {"criteria", rows}}.dump();
        },
        py::arg("seed") = 20240817, py::arg("only") = std::vector<int>{},
        "Run the acceptance battery (slow; pass `only` to select criteria)");
}
