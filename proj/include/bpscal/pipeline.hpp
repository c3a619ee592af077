#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vopt.hpp"

namespace bpscal {

enum class Theorem { WEffTh, PEffTh, HenigTh1, HenigTh2 };

inline const char* to_string(Theorem t) {
    switch (t) {
    case Theorem::WEffTh: return "weff";
    case Theorem::PEffTh: return "peff";
    case Theorem::HenigTh1: return "henig1";
    case Theorem::HenigTh2: return "henig2";
    }
    return "?";
}

enum class PipelineStatus { Passed, HypothesisFailed, VerificationFailed };

inline const char* to_string(PipelineStatus s) {
    switch (s) {
    case PipelineStatus::Passed: return "passed";
    case PipelineStatus::HypothesisFailed: return "hypothesis_failed";
    case PipelineStatus::VerificationFailed: return "verification_failed";
    }
    return "?";
}

struct PipelineStep {
    std::string name;
    Verdict verdict = Verdict::Fails;
    std::string detail;
    std::optional<Point> witness;
};

struct PipelineReport {
    Theorem theorem = Theorem::PEffTh;
    std::size_t xbar = 0;
    PipelineStatus status = PipelineStatus::VerificationFailed;
    std::string failed_step;
    std::optional<ScalarizingPair> pair;
    double alpha_min = 0.0;
    std::vector<PipelineStep> steps;

    bool passed() const noexcept { return status == PipelineStatus::Passed; }
    const PipelineStep* step(const std::string& name) const {
        for (const PipelineStep& s : steps)
            if (s.name == name) return &s;
        return nullptr;
    }
};

struct PipelineOptions {
    std::vector<double> alpha_schedule{0.05, 0.01, 1e-3, 1e-4, 1e-6};
    SamplingOptions sampling{};
    std::size_t verify_samples = 256;
    std::size_t interior_directions = 5;
    std::optional<ConeRep> dilating_cone; // D for the Henig theorems; defaults to a certified BP cone
};

namespace detail {

inline Verdict verdict_of(bool ok, bool exact) {
    if (!ok) return Verdict::Fails;
    return exact ? Verdict::Holds : Verdict::HoldsOnSamples;
}

/// Rays of Dbar = Y \ (-int D) on the psi-sphere: random directions kept when -y is not interior
/// to D, plus boundary points bisected between kept and rejected directions.
inline std::vector<Point> complement_rays(const ConeRep& D, const Seminorm& psi, const SamplingOptions& opt,
                                          double eps) {
    const std::size_t n = D.dim();
    Rng rng(opt.seed ^ 0x5bd1e995ULL);
    std::vector<Point> in, out;
    const std::size_t want = opt.resolved(n);
    for (std::size_t i = 0; i < want; ++i) {
        Point y = rng.direction(n);
        (classify(D, -y, eps) == Membership::Interior ? out : in).push_back(y);
    }
    std::vector<Point> rays;
    auto push = [&](const Point& y) {
        const double s = psi(y);
        if (s > eps) rays.push_back(y / s);
    };
    for (const Point& y : in) push(y);
    if (!in.empty() && !out.empty()) {
        for (std::size_t i = 0; i < want; ++i) {
            Point a = in[rng.index(in.size())], b = out[rng.index(out.size())];
            for (int it = 0; it < 60; ++it) {
                Point m = a + b;
                const double nm = norm2(m);
                if (nm <= 1e-12) break;
                m = m / nm;
                (classify(D, -m, eps) == Membership::Interior ? b : a) = m;
            }
            push(a);
        }
    }
    return rays;
}

inline std::vector<Point> interior_directions(const BaseSet& kb, std::size_t count, std::uint64_t seed) {
    std::vector<Point> out;
    if (kb.points.empty()) return out;
    Rng rng(seed);
    Point sum(kb.dim);
    for (const Point& b : kb.points) sum = sum + b;
    out.push_back(sum / static_cast<double>(kb.points.size()));
    while (out.size() < count) {
        std::vector<double> w = rng.simplex_weights(kb.points.size(), false);
        for (double& x : w) x = 0.5 * x + 0.5 / static_cast<double>(w.size());
        out.push_back(combine(kb.points, w));
    }
    return out;
}

inline bool same_indices(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) { return a == b; }

} // namespace detail

class TheoremPipeline {
public:
    TheoremPipeline(const VOProblem& p, Theorem which, std::size_t xbar, PipelineOptions opt)
        : p_(p), opt_(std::move(opt)) {
        require(xbar < p.size(), ErrorKind::InvalidArgument, "xbar out of range");
        r_.theorem = which;
        r_.xbar = xbar;
    }

    PipelineReport run() {
        switch (r_.theorem) {
        case Theorem::WEffTh: run_weff(); break;
        case Theorem::PEffTh: run_peff(); break;
        case Theorem::HenigTh1:
        case Theorem::HenigTh2: run_henig(); break;
        }
        return r_;
    }

private:
    const VOProblem& p_;
    PipelineOptions opt_;
    PipelineReport r_;

    const Point& fx() const { return p_.images[r_.xbar]; }

    /// Records a step; a failing step ends the pipeline with the given status.
    bool step(const std::string& name, Verdict v, std::string detail = {}, std::optional<Point> w = std::nullopt,
              PipelineStatus on_fail = PipelineStatus::VerificationFailed) {
        r_.steps.push_back({name, v, std::move(detail), std::move(w)});
        if (v == Verdict::Fails && r_.failed_step.empty()) {
            r_.failed_step = name;
            r_.status = on_fail;
        }
        return v != Verdict::Fails;
    }

    bool hypothesis(const std::string& name, Verdict v, std::string detail = {}, std::optional<Point> w = std::nullopt) {
        return step(name, v, std::move(detail), std::move(w), PipelineStatus::HypothesisFailed);
    }

    template <class Search>
    bool search_pair(Search&& search) {
        for (double am : opt_.alpha_schedule) {
            if (auto pr = search(am)) {
                r_.pair = *pr;
                r_.alpha_min = am;
                step("separating_pair", Verdict::HoldsOnSamples,
                     "alpha_min " + std::to_string(am) + ", alpha " + std::to_string(pr->alpha));
                return true;
            }
        }
        return step("separating_pair", Verdict::Fails, "no pair found on the alpha_min schedule");
    }

    void finish() {
        if (r_.failed_step.empty()) r_.status = PipelineStatus::Passed;
    }

    /// x* and alpha in K^{a#} (sharp) or K^{a circ}.
    bool check_class(AugDualClass cls) {
        AugDualReport a = aug_dual_membership(p_.K, p_.psi, *r_.pair, cls, p_.tol, opt_.sampling);
        return step(std::string("pair_in_") + to_string(cls), a.verdict, "margin " + std::to_string(a.margin),
                    a.witness);
    }

    /// Efficiency under C and the equivalent scalar characterizations.
    bool check_eff_conclusions(const BaseSet& kb) {
        const ScalarizingPair& pr = *r_.pair;
        const ConeRep C = pr.cone();
        const VOProblem pc = p_.with_cone(C);
        const std::vector<std::size_t> same = same_image_set(p_, r_.xbar);
        const bool eff_c = eff_set(pc).contains(r_.xbar);
        step("xbar_eff_under_C", detail::verdict_of(eff_c, true));

        ScalarSolveResult lin = solve_P_phi_a(pc, ScalarizerSpec::seminorm_linear(pr), fx());
        const bool argmin_ok = lin.minimizers == same;
        step("argmin_identity", detail::verdict_of(argmin_ok == eff_c, true),
             argmin_ok ? "argmin equals the level set of f(xbar)" : "argmin differs from the level set of f(xbar)");

        bool gs_all = true;
        for (const Point& k : detail::interior_directions(kb, opt_.interior_directions, opt_.sampling.seed)) {
            ScalarSolveResult g = solve_P_phi_ak(pc, C, fx(), k);
            const bool ok = g.optimum.is_finite() && std::abs(g.optimum.value()) <= 1e-7 && g.minimizers == same;
            gs_all = gs_all && ok;
        }
        step("gerstewitz_solution_set", detail::verdict_of(gs_all == eff_c, true));

        if (eff_c && !kb.points.empty()) {
            const Point& k = kb.points.front();
            auto cert = eff_certificate_via_PS(pc, r_.xbar, {fx()}, {k}, {0.0});
            step("covering_certificate", detail::verdict_of(cert.has_value(), true));
        }

        const SolutionSet ec = eff_set(pc), ek = eff_set(p_);
        bool subset = true;
        for (std::size_t i : ec.members) subset = subset && ek.contains(i);
        step("eff_C_subset_eff_K", detail::verdict_of(subset, true));
        return r_.failed_step.empty();
    }

    /// Weak efficiency under C and the equivalent scalar characterizations.
    bool check_weff_conclusions(const BaseSet& kb) {
        const ScalarizingPair& pr = *r_.pair;
        const ConeRep C = pr.cone();
        const VOProblem pc = p_.with_cone(C);
        const bool weff_c = weff_set(pc).contains(r_.xbar);
        step("xbar_weff_under_C", detail::verdict_of(weff_c, true));

        ScalarSolveResult lin = solve_P_phi_a(pc, ScalarizerSpec::seminorm_linear(pr), fx());
        const bool in_argmin = std::find(lin.minimizers.begin(), lin.minimizers.end(), r_.xbar) != lin.minimizers.end();
        step("argmin_membership", detail::verdict_of(in_argmin == weff_c, true));

        bool gs_all = true;
        for (const Point& k : detail::interior_directions(kb, opt_.interior_directions, opt_.sampling.seed)) {
            if (classify(C, k, p_.tol.eps_strict) != Membership::Interior) continue;
            ScalarSolveResult g = solve_P_phi_ak(pc, C, fx(), k);
            const bool ok = g.optimum.is_finite() && std::abs(g.optimum.value()) <= 1e-7 &&
                            std::find(g.minimizers.begin(), g.minimizers.end(), r_.xbar) != g.minimizers.end();
            gs_all = gs_all && ok;
        }
        step("gerstewitz_zero_optimal", detail::verdict_of(gs_all == weff_c, true));
        return r_.failed_step.empty();
    }

    void run_peff() {
        const AMapCone a = amap_cone(p_, r_.xbar, AMapVariant::RaysOfDifferences);
        const BaseSet kb = normlike_base(p_.K, p_.psi, opt_.sampling, p_.tol.eps_mem);
        if (a.is_zero()) {
            step("A_is_zero_cone", Verdict::Holds, "only f(xbar) is attained");
            if (!search_pair([&](double am) -> std::optional<ScalarizingPair> {
                    if (auto s = find_sharp_pair(p_.K, p_.psi, am, p_.tol, opt_.sampling)) return s->pair;
                    return std::nullopt;
                }))
                return;
        } else {
            const ConeRep A = a.cone();
            CheckResult h = check_condition(SeparationCondition::Cond4, A, p_.K, p_.psi, p_.tol, opt_.sampling);
            if (!hypothesis("closures_disjoint", h.verdict, h.detail, h.witness)) return;
            if (!search_pair([&](double am) -> std::optional<ScalarizingPair> {
                    if (auto c = find_separating_pair(A, p_.K, p_.psi, true, am, p_.tol, opt_.sampling)) return c->pair;
                    return std::nullopt;
                }))
                return;
        }
        if (check_class(AugDualClass::ASharp)) check_eff_conclusions(kb);
        finish();
    }

    void run_weff() {
        const BaseSet kb = detail::augmented_base(p_.K, p_.psi, opt_.sampling, p_.tol.eps_mem);
        if (!hypothesis("K_solid", detail::verdict_of(p_.K.interior_supported() && is_solid(hull_S0(kb, true)),
                                                      kb.exactness == Exactness::ExactVertices)))
            return;
        const Polytope smk = detail::negated(hull_S0(kb, false));
        if (!hypothesis("S_minus_K_solid", detail::verdict_of(is_solid(smk), kb.exactness == Exactness::ExactVertices),
                        "the hull of the base of -K must span R^n"))
            return;
        const AMapCone a = amap_cone(p_, r_.xbar, AMapVariant::RaysOfDifferencesPlusK, 8, opt_.sampling.seed);
        const ConeRep A = a.cone();
        const BaseSet ab = detail::augmented_base(A, p_.psi, opt_.sampling, p_.tol.eps_mem);
        auto meet = meets_interior(hull_S0(ab, true), smk, p_.tol.eps_strict);
        if (!hypothesis("S0_A_misses_int_S_minus_K", meet ? Verdict::Fails : Verdict::HoldsOnSamples,
                        meet ? "a point of S0_A lies in int S_-K" : "", meet))
            return;
        if (!search_pair([&](double am) -> std::optional<ScalarizingPair> {
                if (auto c = find_separating_pair(A, p_.K, p_.psi, false, am, p_.tol, opt_.sampling)) return c->pair;
                return std::nullopt;
            }))
            return;
        if (check_class(AugDualClass::ACirc)) check_weff_conclusions(kb);
        finish();
    }

    void run_henig() {
        const bool weak = r_.theorem == Theorem::HenigTh2;
        const BaseSet kb = normlike_base(p_.K, p_.psi, opt_.sampling, p_.tol.eps_mem);
        ConeRep D = ConeRep::orthant(p_.dim());
        if (opt_.dilating_cone) {
            D = *opt_.dilating_cone;
        } else {
            auto pr = peff_henig_check(p_, r_.xbar, opt_.alpha_schedule.front(), opt_.sampling);
            if (!pr) pr = peff_henig_check(p_, r_.xbar, opt_.alpha_schedule.back(), opt_.sampling);
            if (!hypothesis("dilating_cone_available", pr ? Verdict::HoldsOnSamples : Verdict::Fails,
                            pr ? "D taken as a certified Bishop-Phelps cone" : "no dilating cone certifies xbar"))
                return;
            D = pr->cone();
        }
        require(D.dim() == p_.dim(), ErrorKind::DimensionMismatch, "dilating cone dimension");
        if (!D.interior_supported())
            throw Error(ErrorKind::InteriorUnsupported, "the dilating cone needs interior queries");

        // D in the dilating family: K \ {0} inside int D.
        std::optional<Point> bad;
        Rng rng(opt_.sampling.seed);
        ConeSampler ks(p_.K, rng);
        for (const Point& b : kb.points)
            if (!bad && classify(D, b, p_.tol.eps_mem) != Membership::Interior) bad = b;
        for (std::size_t i = 0; i < opt_.verify_samples && !bad && !ks.empty(); ++i) {
            Point k = ks.draw(rng, i % 2 == 0);
            if (norm_inf(k) > 1e-12 && classify(D, k, p_.tol.eps_mem) != Membership::Interior) bad = k;
        }
        if (!hypothesis("D_dilates_K", bad ? Verdict::Fails : Verdict::HoldsOnSamples, "", bad)) return;

        const VOProblem pd = p_.with_cone(D);
        const bool opt_d = weak ? weff_set(pd).contains(r_.xbar) : eff_set(pd).contains(r_.xbar);
        if (!hypothesis(weak ? "xbar_weff_under_D" : "xbar_eff_under_D", detail::verdict_of(opt_d, true))) return;

        std::vector<Point> rays = detail::complement_rays(D, p_.psi, opt_.sampling, p_.tol.eps_mem);
        if (!hypothesis("complement_sampled", detail::verdict_of(!rays.empty(), false))) return;
        const ConeRep Dbar = ConeRep::ray_union(rays);
        const BaseSet mkb = detail::augmented_base(p_.K, p_.psi, opt_.sampling, p_.tol.eps_mem);
        auto d = polytopes_disjoint(hull_S0(normlike_base(Dbar, p_.psi, opt_.sampling, p_.tol.eps_mem), true),
                                    detail::negated(hull_S0(mkb, false)), p_.tol.eps_strict);
        if (!hypothesis("closures_disjoint", d.disjoint ? Verdict::HoldsOnSamples : Verdict::Fails,
                        d.disjoint ? "gap " + std::to_string(d.gap) : "hulls intersect",
                        d.disjoint ? std::nullopt : d.common))
            return;
        if (!search_pair([&](double am) -> std::optional<ScalarizingPair> {
                if (auto c = find_separating_pair(Dbar, p_.K, p_.psi, true, am, p_.tol, opt_.sampling)) return c->pair;
                return std::nullopt;
            }))
            return;
        if (!check_class(AugDualClass::ASharp)) return finish();
        CheckResult dil = dilating_inclusion_check(*r_.pair, D, opt_.verify_samples, p_.tol, opt_.sampling.seed);
        if (!step("dilating_inclusion", dil.verdict, dil.detail, dil.witness)) return finish();
        if (weak)
            check_weff_conclusions(kb);
        else
            check_eff_conclusions(kb);
        finish();
    }
};

/// Runs one scalarization theorem end to end at xbar: builds A(xbar) or Dbar, checks the
/// separation hypothesis, finds a Bishop-Phelps pair and verifies every stated conclusion.
inline PipelineReport run_theorem_pipeline(const VOProblem& p, Theorem which, std::size_t xbar,
                                           const PipelineOptions& opt = {}) {
    return TheoremPipeline(p, which, xbar, opt).run();
}

} // namespace bpscal
