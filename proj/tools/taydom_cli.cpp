// taydom command-line front end: recurrence generation, Taylor-domination
// certificates and verification, zero counting/bounding, piecewise D-finite
// moment machinery, parametric (Bautin) recurrences, the Abel Poincare map,
// and the acceptance battery.
//
// Exit codes: 0 ok, 2 schema error, 3 verification failure, 4 numeric result
// flagged unreliable.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "taydom/io.hpp"
#include "taydom/suite.hpp"

using namespace taydom;
using io::json;

namespace {

struct JobSpec {
    std::string command;
    json input;
    std::string mode = "exact";
    unsigned precision = 256;
    long horizon = 300;
    std::uint64_t seed = 20240817;
    std::string out;

    json to_json() const {
        return json{{"command", command}, {"input", input},   {"mode", mode},
                    {"precision", precision}, {"horizon", horizon}, {"seed", seed},
                    {"out", out}};
    }
    static JobSpec from_json(const json& j) {
        JobSpec job;
        job.command = j.at("command").get<std::string>();
        job.input = j.at("input");
        job.mode = j.at("mode").get<std::string>();
        job.precision = j.at("precision").get<unsigned>();
        job.horizon = j.at("horizon").get<long>();
        job.seed = j.at("seed").get<std::uint64_t>();
        job.out = j.at("out").get<std::string>();
        return job;
    }
};

json load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::SchemaError("cannot open input document '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw io::SchemaError(std::string("input document is not valid JSON: ") + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

int emit(const JobSpec& job, const json& results, int exit_code) {
    // the job echo must round-trip byte-identically
    if (JobSpec::from_json(job.to_json()).to_json() != job.to_json())
        throw std::logic_error("job round-trip broke");
    json machine{{"job", job.to_json()}, {"results", results}};
    std::cout << io::render_table(results);
    if (!job.out.empty()) write_file(job.out, machine.dump(2) + "\n");
    return exit_code;
}

CoefficientSequence sequence_from_doc(const json& doc, long horizon) {
    if (doc.contains("sequence")) return io::sequence_from(doc.at("sequence"));
    if (doc.contains("recurrence")) {
        RecurrenceSpec spec = io::recurrence_from(doc.at("recurrence"));
        std::vector<Rat> init;
        for (auto& v : doc.at("init")) init.push_back(io::rat_from(v));
        return generate(spec, init, horizon);
    }
    throw io::SchemaError("document must contain 'sequence' or 'recurrence'+'init'");
}

int cmd_generate(JobSpec& job, const std::string& csv_path) {
    RecurrenceSpec spec = io::recurrence_from(job.input.at("recurrence"));
    std::vector<Rat> init;
    for (auto& v : job.input.at("init")) init.push_back(io::rat_from(v));
    long horizon = job.input.contains("horizon") ? job.input.at("horizon").get<long>() : job.horizon;
    CoefficientSequence seq = generate(spec, init, horizon);
    if (!csv_path.empty()) write_file(csv_path, io::sequence_csv(seq, job.mode == "exact"));
    json results{{"command", "generate"}, {"length", seq.size()}, {"sequence", io::to_json(seq)}};
    return emit(job, results, 0);
}

int cmd_certify(JobSpec& job, const std::string& method) {
    const json& doc = job.input;
    DominationCertificate cert;
    std::optional<CoefficientSequence> seq;

    if (method == "stieltjes") {
        DifferentialOperator op = io::operator_from(doc.at("operator"));
        PieceFun g = io::piecefun_from(doc.at("g"));
        PiecewiseData pw = piecewise_data(g, op.n);
        CoefficientSequence m = direct_moments(g, job.horizon);
        cert = stieltjes_certificate(op, pw, m);
        seq = std::move(m);
    } else if (method == "lipschitz") {
        LipschitzFamilyConfig cfg;
        cfg.d = static_cast<int>(doc.at("d").get<long>());
        cfg.C = io::rat_from(doc.at("C"));
        cfg.delta = doc.contains("delta") ? io::rat_from(doc.at("delta")) : Rat(1);
        cert = cert_lipschitz(cfg);
    } else if (method == "trivial") {
        CoefficientSequence s = sequence_from_doc(doc, job.horizon);
        cert = cert_trivial(s, io::param_from(doc.at("R")));
        seq = std::move(s);
    } else {
        RecurrenceSpec spec = io::recurrence_from(doc.at("recurrence"));
        if (method == "turan")
            cert = cert_turan(spec, job.precision);
        else if (method == "bounded" && doc.contains("K") && doc.contains("rho"))
            cert = cert_bounded_at(spec, io::rat_from(doc.at("K")), io::rat_from(doc.at("rho")));
        else if (method == "bounded")
            cert = cert_bounded(spec, {}, job.precision);
        else if (method == "poincare")
            cert = cert_poincare(spec, job.precision);
        else
            throw io::SchemaError("unknown certificate method '" + method + "'");
        if (doc.contains("init")) {
            std::vector<Rat> init;
            for (auto& v : doc.at("init")) init.push_back(io::rat_from(v));
            seq = generate(spec, init, job.horizon);
        }
    }

    json results{{"command", "certify"}, {"method", method}, {"certificate", io::to_json(cert)}};
    int code = 0;
    if (seq) {
        long K = std::min<long>(job.horizon, seq->size() - 1);
        VerificationReport rep = verify(*seq, cert, K);
        results["verification"] = io::to_json(rep);
        if (!rep.pass) code = 3;
    }
    return emit(job, results, code);
}

int cmd_verify(JobSpec& job) {
    DominationCertificate cert = io::certificate_from(job.input.at("certificate"));
    CoefficientSequence seq = sequence_from_doc(job.input, job.horizon);
    long K = std::min<long>(job.horizon, seq.size() - 1);
    VerificationReport rep = verify(seq, cert, K, job.input.value("keep_ratios", false));
    json results{{"command", "verify"}, {"verification", io::to_json(rep)}};
    return emit(job, results, rep.pass ? 0 : 3);
}

int cmd_zeros(JobSpec& job, const std::string& task) {
    const json& doc = job.input;
    json results{{"command", "zeros"}, {"task", task}};
    int code = 0;
    if (task == "count") {
        CoefficientSequence seq = sequence_from_doc(doc, job.horizon);
        ZeroCount zc = count_zeros(seq.values, io::rat_from(doc.at("r")));
        results["count"] = io::to_json(zc);
        if (!zc.reliable) code = 4;
    } else if (task == "bound") {
        DominationCertificate cert = io::certificate_from(doc.at("certificate"));
        CoefficientSequence seq = sequence_from_doc(doc, job.horizon);
        ZeroBoundCertificate zb = zero_bound(cert, seq.values, io::rat_from(doc.at("R_prime")));
        results["zero_bound"] = io::to_json(zb);
    } else if (task == "valency") {
        CoefficientSequence seq = sequence_from_doc(doc, job.horizon);
        ValencyProbe vp = valency_growth_probe(seq, io::rat_from(doc.at("R")),
                                               static_cast<int>(doc.at("p").get<long>()));
        results["valency_probe"] = io::to_json(vp);
    } else {
        throw io::SchemaError("unknown zeros task '" + task + "'");
    }
    return emit(job, results, code);
}

int cmd_dfinite(JobSpec& job, const std::string& csv_path) {
    DifferentialOperator op = io::operator_from(job.input.at("operator"));
    PieceFun g = io::piecefun_from(job.input.at("g"));
    PiecewiseData pw = piecewise_data(g, op.n);

    json results{{"command", "dfinite"}};
    OperatorAnalysis an = analyze_operator(op, pw, job.precision);
    json zs = json::array();
    for (auto& z : an.Z_A) zs.push_back(io::complex_json(z));
    results["analysis"] = json{{"poincare_ok", an.poincare_ok}, {"alpha", an.alpha},
                               {"tau", an.tau},                 {"Lambda", an.Lambda},
                               {"indicial", io::to_json(an.indicial)}, {"Z_A", zs}};

    MomentRecurrence mr = moment_recurrence(op);
    EpsilonRule eps = epsilon_rule(op, pw);
    results["moment_recurrence"] = io::to_json(mr);
    results["epsilon"] = io::to_json(eps);

    long K = job.horizon;
    CoefficientSequence m = direct_moments(g, K + std::max(mr.alpha, 0L) + 1);
    if (!csv_path.empty()) {
        CoefficientSequence head;
        head.values.assign(m.values.begin(), m.values.begin() + (K + 1));
        write_file(csv_path, io::sequence_csv(head, job.mode == "exact"));
    }

    // master-oracle residual on this (op, g) pair
    bool residual_ok = true;
    for (long k = 0; k <= std::min<long>(100, K); ++k)
        if (!(mr.lhs(m.values, k) == eps.eval(k))) residual_ok = false;
    results["master_oracle_residual_zero"] = residual_ok;

    try {
        VanishingBound vb = vanishing_bound(op, pw);
        results["vanishing_bound"] = io::to_json(vb);
    } catch (const std::domain_error& e) {
        results["vanishing_bound"] = json{{"refused", e.what()}};
    }

    int code = residual_ok ? 0 : 3;
    try {
        StieltjesParams sp = stieltjes_params(op, pw, job.precision);
        results["stieltjes"] = io::to_json(sp);
        CoefficientSequence head;
        head.values.assign(m.values.begin(), m.values.begin() + (K + 1));
        DominationCertificate cert = stieltjes_certificate(op, pw, head, job.precision);
        results["certificate"] = io::to_json(cert);
        VerificationReport rep = verify(head, cert, K);
        results["verification"] = io::to_json(rep);
        if (!rep.pass) code = 3;
    } catch (const std::domain_error& e) {
        results["stieltjes"] = json{{"refused", e.what()}};
    }
    return emit(job, results, code);
}

int cmd_bautin(JobSpec& job) {
    ParametricRecurrence rec = io::parametric_from(job.input.at("parametric"));
    std::vector<MultiPoly> init;
    for (auto& v : job.input.at("init")) init.push_back(io::multipoly_from(v, rec.nparams));
    long K = job.input.contains("K") ? job.input.at("K").get<long>() : std::min<long>(job.horizon, 30);

    json results{{"command", "bautin"}};
    ParametricSeries ps = generate_parametric(rec, init, K);
    IdealWitness w = ideal_witness(rec, init, K);  // asserts the witness identity per k
    std::size_t max_terms = 0;
    for (auto& row : w.cofactors)
        for (auto& cf : row) max_terms = std::max(max_terms, cf.term_count());
    results["witness"] = json{{"claimed_index", w.claimed_index},
                              {"identity_checked_to", K},
                              {"max_cofactor_terms", max_terms}};
    if (job.input.value("full_witness", false)) {
        json gens = json::array();
        for (auto& gpoly : w.generators) gens.push_back(io::to_json(gpoly));
        results["witness"]["generators"] = gens;
        json cof = json::array();
        for (std::size_t k = 0; k < w.cofactors.size(); ++k) {
            json row = json::array();
            for (auto& cf : w.cofactors[k]) row.push_back(io::to_json(cf));
            cof.push_back(json{{"k", k + static_cast<std::size_t>(rec.d)}, {"psi", row}});
        }
        results["witness"]["cofactors"] = cof;
    }

    results["a0_profile"] = io::to_json(a0_profile(ps));
    if (rec.linear()) {
        auto rep = coefficient_recurrence_check(rec, ps);
        results["coefficient_identity"] =
            json{{"ok", rep.ok}, {"checked_k", rep.checked_k}, {"checked_coefficients", rep.checked_coefficients}};
    }
    if (job.input.contains("samples") && job.input.contains("R")) {
        std::vector<std::vector<Rat>> samples;
        for (auto& s : job.input.at("samples")) {
            std::vector<Rat> lam;
            for (auto& v : s) lam.push_back(io::rat_from(v));
            samples.push_back(std::move(lam));
        }
        results["uniform_C"] = io::to_json(
            specialize_and_certify(ps, rec.d, samples, io::rat_from(job.input.at("R"))));
    }
    return emit(job, results, 0);
}

int cmd_abel(JobSpec& job, const std::string& csv_path) {
    AbelEquation eq = io::abel_from(job.input);
    long K = job.input.contains("K") ? job.input.at("K").get<long>() : 20;
    PoincareExpansion exp = poincare_coefficients(eq, K);

    json results{{"command", "abel"}};
    results["expansion"] = io::to_json(exp);
    results["defining_identity_ok"] = exp.defining_identity_ok();
    int code = exp.defining_identity_ok() ? 0 : 3;

    CoefficientSequence mom = moment_like(eq, K);
    results["moment_like"] = io::to_json(mom);
    if (!csv_path.empty()) write_file(csv_path, io::sequence_csv(mom, job.mode == "exact"));

    Rat x_star = job.input.contains("x_star") ? io::rat_from(job.input.at("x_star")) : exp.length;
    if (job.input.contains("y")) {
        Rat y = io::rat_from(job.input.at("y"));
        Rat val = return_map_eval(exp, x_star, y);
        json ev{{"x_star", x_star.to_string()}, {"y", y.to_string()}, {"value", val.to_string()},
                {"value_approx", val.to_double()}};
        if (job.input.value("oracle", false)) {
            BF o = ode_oracle(exp, x_star, BF(y, MPFR_RNDN, 512), 512, -90);
            ev["oracle"] = o.to_string();
            ev["mismatch"] = abs(BF(val, MPFR_RNDN, 512) - o).to_string();
        }
        results["return_map"] = ev;
    }
    if (job.input.contains("r")) {
        FixedPointCount fc = fixed_point_count(exp, x_star, io::rat_from(job.input.at("r")));
        results["fixed_points"] = io::to_json(fc);
        if (!fc.center && !fc.count.reliable) code = 4;
    }
    return emit(job, results, code);
}

int cmd_suite(JobSpec& job, const std::string& criteria) {
    std::vector<int> only;
    if (!criteria.empty()) {
        std::stringstream ss(criteria);
        std::string item;
        while (std::getline(ss, item, ',')) only.push_back(std::stoi(item));
    }
    bool all_pass = true;
    json rows = json::array();
    auto results = suite::run_acceptance(job.seed, only, [&](const suite::CriterionResult& r) {
        std::printf("[%s] %2d. %s  (%.1f s)\n      %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.details.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    });
    for (auto& r : results)
        rows.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    json out{{"command", "suite"}, {"seed", job.seed}, {"criteria", rows}, {"all_pass", all_pass}};
    if (!job.out.empty()) {
        json machine{{"job", job.to_json()}, {"results", out}};
        write_file(job.out, machine.dump(2) + "\n");
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taydom: Taylor domination certificates for recurrence-generated power series"};
    app.require_subcommand(1);

    JobSpec job;
    std::string in_path, csv_path, method = "turan", task = "count", criteria;

    app.add_option("--mode", job.mode, "arithmetic rendering: exact|float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--precision", job.precision, "float precision in bits (default 256)");
    app.add_option("--horizon", job.horizon, "sequence horizon K (default 300)");
    app.add_option("--seed", job.seed, "seed for randomized batteries");
    app.add_option("--out", job.out, "write the machine report (JSON) here");

    auto add_in = [&](CLI::App* sub, bool required = true) {
        sub->fallthrough();  // accept the global flags after the subcommand
        auto* opt = sub->add_option("--in", in_path, "input document (JSON)");
        if (required) opt->required();
    };

    auto* g = app.add_subcommand("generate", "generate a coefficient sequence from a recurrence");
    add_in(g);
    g->add_option("--csv", csv_path, "write the sequence as CSV here");

    auto* c = app.add_subcommand("certify", "construct a Taylor-domination certificate");
    add_in(c);
    c->add_option("--method", method, "turan|bounded|poincare|trivial|lipschitz|stieltjes");

    auto* v = app.add_subcommand("verify", "verify a certificate against a sequence");
    add_in(v);

    auto* z = app.add_subcommand("zeros", "zero counting, zero bounds, valency probe");
    add_in(z);
    z->add_option("--task", task, "count|bound|valency");

    auto* d = app.add_subcommand("dfinite", "piecewise D-finite moment machinery");
    add_in(d);
    d->add_option("--csv", csv_path, "write the moment sequence as CSV here");

    auto* b = app.add_subcommand("bautin", "parametric recurrences, ideal witnesses, profiles");
    add_in(b);

    auto* a = app.add_subcommand("abel", "Abel equation Poincare coefficients and return map");
    add_in(a);
    a->add_option("--csv", csv_path, "write the moment-like sequence as CSV here");

    auto* s = app.add_subcommand("suite", "run the acceptance batteries");
    s->fallthrough();
    s->add_option("--criteria", criteria, "comma-separated criterion ids (default: all)");

    CLI11_PARSE(app, argc, argv);

    try {
        BF::set_default_precision(job.precision);
        if (app.got_subcommand(s)) {
            job.command = "suite";
            return cmd_suite(job, criteria);
        }
        job.input = load_doc(in_path);
        if (app.got_subcommand(g)) {
            job.command = "generate";
            return cmd_generate(job, csv_path);
        }
        if (app.got_subcommand(c)) {
            job.command = "certify";
            return cmd_certify(job, method);
        }
        if (app.got_subcommand(v)) {
            job.command = "verify";
            return cmd_verify(job);
        }
        if (app.got_subcommand(z)) {
            job.command = "zeros";
            return cmd_zeros(job, task);
        }
        if (app.got_subcommand(d)) {
            job.command = "dfinite";
            return cmd_dfinite(job, csv_path);
        }
        if (app.got_subcommand(b)) {
            job.command = "bautin";
            return cmd_bautin(job);
        }
        if (app.got_subcommand(a)) {
            job.command = "abel";
            return cmd_abel(job, csv_path);
        }
    } catch (const io::SchemaError& e) {
        json diag{{"error", {{"type", "schema"}, {"message", e.what()}}}};
        std::cerr << diag.dump(2) << std::endl;
        return 2;
    } catch (const nlohmann::json::exception& e) {
        json diag{{"error", {{"type", "schema"}, {"message", e.what()}}}};
        std::cerr << diag.dump(2) << std::endl;
        return 2;
    } catch (const NearContourZero& e) {
        json diag{{"error", {{"type", "numeric-unreliable"}, {"message", e.what()}}}};
        std::cerr << diag.dump(2) << std::endl;
        return 4;
    } catch (const std::exception& e) {
        json diag{{"error", {{"type", "domain"}, {"message", e.what()}}}};
        std::cerr << diag.dump(2) << std::endl;
        return 2;
    }
    return 0;
}
