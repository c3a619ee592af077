#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "problem_io.hpp"
#include "report.hpp"

namespace bpscal::io {

enum ExitCode { ExitOk = 0, ExitUsage = 1, ExitHypothesis = 2, ExitVerification = 3 };

/// Options shared by the subcommands; each reads the fields it needs.
struct CommandArgs {
    std::string phi = "seminorm-linear";
    std::optional<Point> xstar;
    std::optional<double> alpha;
    std::optional<Point> a;
    std::optional<Point> k;
    std::string concept_ = "eff";
    std::string theorem = "peff";
    std::optional<std::string> xbar;
    bool weak = false;
    std::uint64_t seed = 1;
};

struct CommandResult {
    RunReport report;
    int exit_code = ExitOk;
};

namespace detail {

inline std::string csv(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt(p[i]);
    return s;
}

inline std::vector<std::string> labels_of(const VOProblem& p, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (std::size_t i : idx) out.push_back(p.labels[i]);
    return out;
}

inline RunReport start(const std::string& cmd, const VOProblem& p, const CommandArgs& a) {
    RunReport r;
    r.command = cmd;
    r.seed = a.seed;
    for (std::size_t i = 0; i < p.size(); ++i) r.rows.push_back({p.labels[i], p.images[i], {}, {}, {}, {}});
    return r;
}

inline ScalarizingPair pair_arg(const VOProblem& p, const CommandArgs& a) {
    if (!a.xstar || !a.alpha) throw Error(ErrorKind::InvalidArgument, "--xstar and --alpha are required");
    require_dim(*a.xstar, p.dim(), "--xstar");
    return ScalarizingPair(*a.xstar, *a.alpha, p.psi);
}

inline void flag_sets(RunReport& r, const VOProblem& p, const SolutionSet& eff, const std::optional<SolutionSet>& weff,
                      const std::optional<SolutionSet>& peff) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        r.rows[i].in_eff = eff.contains(i);
        if (weff) r.rows[i].in_weff = weff->contains(i);
        if (peff) r.rows[i].in_peff = peff->contains(i);
    }
}

inline std::optional<SolutionSet> weff_if_supported(const VOProblem& p) {
    if (!p.K.interior_supported()) return std::nullopt;
    return weff_set(p);
}

inline void add_certificates(RunReport& r, const VOProblem& p, const SolutionSet& s, const std::string& kind) {
    for (const auto& [i, pair] : s.certificates) r.certificates.push_back({p.labels[i], kind, pair.xstar, pair.alpha});
}

inline ReportCheck check_entry(const std::string& name, const CheckResult& c) {
    return {name, to_string(c.verdict), c.detail, c.witness};
}

} // namespace detail

/// Enumerates (P_phi^a) or (P_phi^{a,k}) over the feasible labels.
inline CommandResult cmd_solve_scalar(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("solve-scalar", p, a);
    const Point av = a.a.value_or(Point(p.dim()));
    require_dim(av, p.dim(), "--a");
    r.parameters = {{"phi", a.phi}, {"a", detail::csv(av)}};
    ScalarSolveResult s;
    if (a.phi == "seminorm-linear") {
        ScalarizingPair pair = detail::pair_arg(p, a);
        r.parameters.push_back({"xstar", detail::csv(pair.xstar)});
        r.parameters.push_back({"alpha", detail::fmt(pair.alpha)});
        s = solve_P_phi_a(p, ScalarizerSpec::seminorm_linear(pair), av);
    } else if (a.phi == "gerstewitz") {
        if (!a.k) throw Error(ErrorKind::InvalidArgument, "--k is required for the Gerstewitz scalarization");
        require_dim(*a.k, p.dim(), "--k");
        r.parameters.push_back({"k", detail::csv(*a.k)});
        s = solve_P_phi_ak(p, p.K, av, *a.k);
    } else {
        throw Error(ErrorKind::InvalidArgument, "--phi must be seminorm-linear or gerstewitz");
    }
    for (std::size_t i = 0; i < p.size(); ++i) r.rows[i].value = s.values[i];
    r.scalars.push_back({"optimum", s.optimum});
    r.sets.push_back({"argmin", detail::labels_of(p, s.minimizers)});
    detail::flag_sets(r, p, eff_set(p), detail::weff_if_supported(p), std::nullopt);
    return {r, ExitOk};
}

/// Brute-force solution set for one concept.
inline CommandResult cmd_solve_vector(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("solve-vector", p, a);
    r.parameters = {{"concept", a.concept_}};
    const SolutionSet eff = eff_set(p);
    std::optional<SolutionSet> weff, peff;
    if (a.concept_ == "eff") {
        r.sets.push_back({"eff", detail::labels_of(p, eff.members)});
    } else if (a.concept_ == "weff") {
        weff = weff_set(p);
        r.sets.push_back({"weff", detail::labels_of(p, weff->members)});
    } else if (a.concept_ == "peff-a") {
        peff = peff_A_set(p, AMapVariant::RaysOfDifferences);
        r.sets.push_back({"peff_a", detail::labels_of(p, peff->members)});
    } else if (a.concept_ == "peff-henig") {
        peff = peff_he_set(p);
        r.sets.push_back({"peff_he", detail::labels_of(p, peff->members)});
        detail::add_certificates(r, p, *peff, "a_sharp");
    } else {
        throw Error(ErrorKind::InvalidArgument, "--concept must be eff, weff, peff-a or peff-henig");
    }
    detail::flag_sets(r, p, eff, weff, peff);
    return {r, ExitOk};
}

/// Augmented dual classes of (x*, alpha) for the problem's cone and seminorm.
inline CommandResult cmd_check_cone(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("check-cone", p, a);
    ScalarizingPair pair = detail::pair_arg(p, a);
    r.parameters = {{"xstar", detail::csv(pair.xstar)}, {"alpha", detail::fmt(pair.alpha)}};
    const SamplingOptions opt{0, a.seed};
    for (AugDualClass c : {AugDualClass::APlus, AugDualClass::ACirc, AugDualClass::ASharp}) {
        try {
            AugDualReport d = aug_dual_membership(p.K, p.psi, pair, c, p.tol, opt);
            r.checks.push_back({to_string(c), to_string(d.verdict), "margin " + detail::fmt(d.margin), d.witness});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InteriorUnsupported) throw;
            r.checks.push_back({to_string(c), "unsupported", e.what(), std::nullopt});
        }
    }
    r.checks.push_back(detail::check_entry("cond9", check_condition_9(negate(p.K), p.psi, pair, 512, p.tol, a.seed)));
    return {r, ExitOk};
}

/// Separation of A(xbar) = R+ (f[Omega] - f(xbar)) from -K.
inline CommandResult cmd_separate(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("separate", p, a);
    const std::size_t xbar = a.xbar ? p.index_of(*a.xbar) : 0;
    r.parameters = {{"xbar", p.labels[xbar]}, {"mode", a.weak ? "weak" : "strict"}};
    const AMapCone am = amap_cone(p, xbar, AMapVariant::RaysOfDifferences);
    if (am.is_zero()) {
        r.checks.push_back({"A_is_zero_cone", "holds", "", std::nullopt});
        auto s = find_sharp_pair(p.K, p.psi, 0.05, p.tol, SamplingOptions{0, a.seed});
        if (!s) {
            r.status = "no_certificate";
            return {r, ExitHypothesis};
        }
        r.certificates.push_back({p.labels[xbar], "a_sharp", s->pair.xstar, s->pair.alpha});
        return {r, ExitOk};
    }
    const ConeRep A = am.cone();
    const SamplingOptions opt{0, a.seed};
    for (SeparationCondition c : {SeparationCondition::Cond4, SeparationCondition::Cond5, SeparationCondition::Cond6})
        r.checks.push_back(detail::check_entry(to_string(c), check_condition(c, A, p.K, p.psi, p.tol, opt)));
    std::optional<SeparationCertificate> cert;
    for (double am_min : PipelineOptions{}.alpha_schedule) {
        cert = find_separating_pair(A, p.K, p.psi, !a.weak, am_min, p.tol, opt);
        if (cert) break;
    }
    if (!cert) {
        r.status = "no_certificate";
        return {r, ExitHypothesis};
    }
    r.certificates.push_back({p.labels[xbar], a.weak ? "weak" : "strict", cert->pair.xstar, cert->pair.alpha});
    r.scalars.push_back({"margin_K", ExtendedReal::finite(cert->margin_K)});
    r.scalars.push_back({"margin_A", ExtendedReal::finite(cert->margin_A)});
    const CertificateChecks& cc = cert->conclusions;
    r.checks.push_back({"K_in_C", to_string(cc.K_in_C), "", std::nullopt});
    r.checks.push_back({"A_meets_minus_C_only_at_0", to_string(cc.A_meets_minus_C_only_at_0), "", std::nullopt});
    r.checks.push_back({"interior_inclusions", to_string(cc.interior_inclusions), "", std::nullopt});
    if (!cc.passed_all()) {
        r.status = "verification_failed";
        return {r, ExitVerification};
    }
    return {r, ExitOk};
}

/// Runs one theorem pipeline at --xbar, or at every label of the matching brute-force set.
inline CommandResult cmd_verify_theorems(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("verify-theorems", p, a);
    Theorem t;
    if (a.theorem == "weff") t = Theorem::WEffTh;
    else if (a.theorem == "peff") t = Theorem::PEffTh;
    else if (a.theorem == "henig1") t = Theorem::HenigTh1;
    else if (a.theorem == "henig2") t = Theorem::HenigTh2;
    else throw Error(ErrorKind::InvalidArgument, "--theorem must be weff, peff, henig1 or henig2");
    r.parameters = {{"theorem", a.theorem}};

    std::vector<std::size_t> targets;
    if (a.xbar) {
        targets.push_back(p.index_of(*a.xbar));
        r.parameters.push_back({"xbar", *a.xbar});
    } else {
        targets = t == Theorem::WEffTh || t == Theorem::HenigTh2 ? weff_set(p).members : eff_set(p).members;
    }
    PipelineOptions opt;
    opt.sampling.seed = a.seed;
    bool hyp = false, ver = false;
    std::vector<std::string> passed;
    for (std::size_t x : targets) {
        PipelineReport pr = run_theorem_pipeline(p, t, x, opt);
        const std::string prefix = p.labels[x] + "/";
        for (const PipelineStep& s : pr.steps)
            r.checks.push_back({prefix + s.name, to_string(s.verdict), s.detail, s.witness});
        if (pr.pair)
            r.certificates.push_back({p.labels[x], to_string(t), pr.pair->xstar, pr.pair->alpha});
        hyp = hyp || pr.status == PipelineStatus::HypothesisFailed;
        ver = ver || pr.status == PipelineStatus::VerificationFailed;
        if (pr.passed()) passed.push_back(p.labels[x]);
    }
    r.sets.push_back({"passed", passed});
    detail::flag_sets(r, p, eff_set(p), detail::weff_if_supported(p), std::nullopt);
    if (ver) {
        r.status = "verification_failed";
        return {r, ExitVerification};
    }
    if (hyp) {
        r.status = "hypothesis_failed";
        return {r, ExitHypothesis};
    }
    return {r, ExitOk};
}

/// Plot-ready summary: every solution concept, Henig certificates, and optional scalar values.
inline CommandResult cmd_report(const VOProblem& p, const CommandArgs& a) {
    RunReport r = detail::start("report", p, a);
    const SolutionSet eff = eff_set(p);
    const std::optional<SolutionSet> weff = detail::weff_if_supported(p);
    const SolutionSet pa = peff_A_set(p, AMapVariant::RaysOfDifferences);
    const SolutionSet he = peff_he_set(p);
    r.sets.push_back({"eff", detail::labels_of(p, eff.members)});
    if (weff) r.sets.push_back({"weff", detail::labels_of(p, weff->members)});
    r.sets.push_back({"peff_a", detail::labels_of(p, pa.members)});
    r.sets.push_back({"peff_he", detail::labels_of(p, he.members)});
    detail::add_certificates(r, p, he, "a_sharp");
    detail::flag_sets(r, p, eff, weff, he);
    if (a.xstar || a.alpha) {
        ScalarizingPair pair = detail::pair_arg(p, a);
        const Point av = a.a.value_or(Point(p.dim()));
        r.parameters = {{"xstar", detail::csv(pair.xstar)}, {"alpha", detail::fmt(pair.alpha)}, {"a", detail::csv(av)}};
        ScalarSolveResult s = solve_P_phi_a(p, ScalarizerSpec::seminorm_linear(pair), av);
        for (std::size_t i = 0; i < p.size(); ++i) r.rows[i].value = s.values[i];
        r.scalars.push_back({"optimum", s.optimum});
    }
    return {r, ExitOk};
}

inline CommandResult run_command(const std::string& name, const VOProblem& p, const CommandArgs& a) {
    if (name == "solve-scalar") return cmd_solve_scalar(p, a);
    if (name == "solve-vector") return cmd_solve_vector(p, a);
    if (name == "check-cone") return cmd_check_cone(p, a);
    if (name == "separate") return cmd_separate(p, a);
    if (name == "verify-theorems") return cmd_verify_theorems(p, a);
    if (name == "report") return cmd_report(p, a);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

/// Serialized report text; JSON ends with a newline.
inline std::string render(const RunReport& r, const std::string& format) {
    if (format == "csv") return to_csv(r);
    return to_json(r).dump(2) + "\n";
}

} // namespace bpscal::io
