// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <bpscal/commands.hpp>

#include "catalog.hpp"

using namespace bpscal;
using testing_support::labels_for;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Tally {
    long checks = 0;
    long violations = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (violations++ == 0) first = what;
    }
    Outcome outcome(const std::string& summary) const {
        Outcome o{violations == 0, summary + ", " + std::to_string(checks) + " checks"};
        if (violations) o.detail += ", " + std::to_string(violations) + " violations, first: " + first;
        return o;
    }
};

std::string str(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    return os.str() + ')';
}

// Componentwise Pareto scan for the orthant, independent of cone classification.
std::vector<std::size_t> pareto_scan(const std::vector<Point>& f, bool weak) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < f.size() && !dom; ++j) {
            bool le = true, lt_all = true, differs = false;
            for (std::size_t c = 0; c < f[i].size(); ++c) {
                le = le && f[j][c] <= f[i][c];
                lt_all = lt_all && f[j][c] < f[i][c];
                differs = differs || f[j][c] != f[i][c];
            }
            dom = weak ? lt_all : (le && differs);
        }
        if (!dom) out.push_back(i);
    }
    return out;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// `norms_only` restricts psi to L1, L2 and Linf, which never vanish on a cone direction.
VOProblem random_problem(Rng& rng, std::size_t n, std::size_t i, std::size_t lo, std::size_t hi, bool norms_only = false) {
    auto cat = testing_support::seminorm_catalog(n);
    if (norms_only) cat.erase(cat.begin() + 3, cat.end());
    ConeRep K = testing_support::random_cone(rng, n, i);
    auto imgs = testing_support::random_images(rng, n, lo + static_cast<std::size_t>(rng.integer(0, static_cast<long>(hi - lo))));
    return VOProblem(labels_for(imgs.size()), imgs, K, cat[i % cat.size()]);
}

// Dual norm of x* for the three norms at the front of the catalog, with a direction attaining it.
std::pair<double, Point> dual_norm(const Seminorm& psi, const Point& xs) {
    const std::size_t n = xs.size();
    Point k(n);
    if (psi.kind() == SeminormKind::L2) return {norm2(xs), xs / norm2(xs)};
    if (psi.kind() == SeminormKind::L1) {
        std::size_t j = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(xs[i]) > std::abs(xs[j])) j = i;
        k[j] = xs[j] >= 0 ? 1.0 : -1.0;
        return {std::abs(xs[j]), k};
    }
    for (std::size_t i = 0; i < n; ++i) k[i] = xs[i] >= 0 ? 1.0 : -1.0;
    return {norm1(xs), k};
}

// 1. The L1 Bishop-Phelps cone at ((1,1), 1) is the orthant and has empty C^>.
Outcome criterion_1() {
    Tolerances tol;
    tol.eps_mem = tol.eps_strict = 1e-12;
    const ConeRep C = ConeRep::bishop_phelps(Point{1, 1}, 1.0, Seminorm::l1());
    Tally t;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            const Point y{-2.0 + 0.04 * i, -2.0 + 0.04 * j};
            const Membership m = classify(C, y, tol.eps_mem);
            const bool orth = y[0] >= 0.0 && y[1] >= 0.0;
            t.expect(is_member(m) == orth, "membership differs at " + str(y));
            t.expect(m != Membership::Interior, "interior point " + str(y));
        }
    return t.outcome("101x101 grid");
}

// 2. n = 1, x* = 1, alpha = 0.5: the base of C is {1} while the ball slice is [0.5, 1].
Outcome criterion_2() {
    const Seminorm l1 = Seminorm::l1();
    const ScalarizingPair pair(Point{1}, 0.5, l1);
    Tally t;
    const BaseSet base = normlike_base(pair.cone(), l1);
    // Sampled bases may repeat a point; compare as sets.
    t.expect(!base.points.empty() && std::all_of(base.points.begin(), base.points.end(),
                                                 [](const Point& b) { return std::abs(b[0] - 1.0) <= 1e-12; }),
             "base is not {1}");
    // 0.75 lies in the slice {|y| <= 1, y >= 0.5} but not in the base.
    t.expect(std::abs(0.75) <= 1.0 && 0.75 >= 0.5, "0.75 outside the slice");
    t.expect(std::none_of(base.points.begin(), base.points.end(), [](const Point& b) { return std::abs(b[0] - 0.75) < 1e-9; }),
             "0.75 in the base");
    const CheckResult r = check_condition_9(negate(ConeRep::orthant(1)), l1, pair, 200);
    t.expect(r.verdict == Verdict::Fails, "condition 9 did not fail");
    t.expect(r.witness && (*r.witness)[0] > 0.5 && (*r.witness)[0] < 1.0, "witness outside (0.5, 1)");
    return t.outcome("witness " + (r.witness ? str(*r.witness) : std::string("none")));
}

// 3. Gerstewitz closed form vs bisection, and translation along k.
Outcome criterion_3() {
    Rng rng(3);
    double max_diff = 0.0, max_shift = 0.0;
    Tally t;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        Point k = rng.box(n, 0.2, 1.0);
        ConeRep c = ConeRep::orthant(n);
        if (i % 2) {
            std::vector<Point> w;
            for (std::size_t j = 0; j < n + 1; ++j) {
                Point d = rng.direction(n);
                if (dot(d, k) < 0.05) d = d + k * ((0.1 - dot(d, k)) / dot(k, k));
                w.push_back(d);
            }
            c = ConeRep::halfspace(w);
        }
        const Point a = rng.box(n, -1, 1), y = rng.box(n, -3, 3);
        const ExtendedReal closed = eval_gerstewitz(c, a, k, y);
        const ExtendedReal bis = gerstewitz_bisection(c, a, k, y);
        t.expect(closed.is_finite() && bis.is_finite(), "infinite value");
        if (!closed.is_finite() || !bis.is_finite()) continue;
        max_diff = std::max(max_diff, std::abs(closed.value() - bis.value()));
        const double s = rng.uniform(-5, 5);
        const ExtendedReal moved = eval_gerstewitz(c, a, k, y + k * s);
        max_shift = std::max(max_shift, std::abs(moved.value() - closed.value() - s));
    }
    t.expect(max_diff <= 1e-7, "closed form vs bisection " + std::to_string(max_diff));
    t.expect(max_shift <= 1e-8, "translation " + std::to_string(max_shift));
    char buf[96];
    std::snprintf(buf, sizeof buf, "max diff %.3g, max translation error %.3g", max_diff, max_shift);
    return t.outcome(buf);
}

// 4. (P_phi^{a,k}) via Gerstewitz and via per-label constraint bisection.
Outcome criterion_4() {
    Rng rng(4);
    Tally t;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        auto imgs = testing_support::random_images(rng, n, 5 + static_cast<std::size_t>(rng.integer(0, 25)));
        VOProblem p(labels_for(imgs.size()), imgs, ConeRep::orthant(n), Seminorm::l2());
        Point a = rng.direction(n);
        Point k = rng.box(n, 0.2, 2.0);
        ScalarSolveResult g, b;
        if (i % 3 == 2) {
            auto cat = testing_support::seminorm_catalog(n);
            const Seminorm& psi = cat[static_cast<std::size_t>(i) % 3];
            const Point xs = rng.box(n, 0.5, 2.0);
            const auto [dn, kdir] = dual_norm(psi, xs);
            const ScalarizingPair pr(xs, rng.uniform(0.1, 0.9) * dn, psi);
            k = kdir;
            g = solve_P_phi_ak(p, pr.cone(), a, k);
            b = solve_P_phi_ak_by_constraint(p, ScalarizerSpec::seminorm_linear(pr), a, k);
        } else {
            ConeRep C = i % 3 ? testing_support::random_cone(rng, n, 1) : ConeRep::orthant(n);
            // phi is the Gerstewitz functional of -C along a second interior direction k2.
            Point k2 = rng.box(n, 0.5, 1.5);
            if (C.kind() == ConeKind::Generated) {
                k = combine(C.vectors(), std::vector<double>(C.vectors().size(), 1.0));
                std::vector<double> w;
                for (std::size_t j = 0; j < C.vectors().size(); ++j) w.push_back(rng.uniform(0.5, 1.5));
                k2 = combine(C.vectors(), w);
            }
            g = solve_P_phi_ak(p, C, a, k);
            b = solve_P_phi_ak_by_constraint(p, ScalarizerSpec::gerstewitz(C, Point(n), k2), a, k);
        }
        t.expect(g.minimizers == b.minimizers, "minimizer sets differ on instance " + std::to_string(i));
        if (g.optimum.is_finite() && b.optimum.is_finite()) {
            const double d = std::abs(g.optimum.value() - b.optimum.value());
            worst = std::max(worst, d);
            t.expect(d <= 1e-9, "optimum differs by " + std::to_string(d) + " on instance " + std::to_string(i));
        } else {
            t.expect(g.optimum == b.optimum, "finiteness differs on instance " + std::to_string(i));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "100 instances, max |lambda diff| %.3g", worst);
    return t.outcome(buf);
}

// 5. argmin(P_phi^a) lies in Eff for sharp pairs and in WEff for circ pairs.
Outcome criterion_5() {
    Rng rng(5);
    Tally t;
    int sharp = 0, circ = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        VOProblem p = random_problem(rng, n, static_cast<std::size_t>(i / 2), 5, 50);
        const Point a = rng.box(n, -1, 1);
        const auto eff = eff_set(p).members;
        const auto weff = weff_set(p).members;
        if (p.K.kind() == ConeKind::Orthant) {
            t.expect(eff == pareto_scan(p.images, false), "eff oracle mismatch");
            t.expect(weff == pareto_scan(p.images, true), "weff oracle mismatch");
        }
        if (auto s = find_sharp_pair(p.K, p.psi)) {
            ++sharp;
            auto r = solve_P_phi_a(p, ScalarizerSpec::seminorm_linear(s->pair), a);
            t.expect(subset(r.minimizers, eff), "sharp argmin outside Eff on instance " + std::to_string(i));
        }
        if (auto c = find_circ_pair(p.K, p.psi)) {
            ++circ;
            auto r = solve_P_phi_a(p, ScalarizerSpec::seminorm_linear(c->pair), a);
            t.expect(subset(r.minimizers, weff), "circ argmin outside WEff on instance " + std::to_string(i));
        }
    }
    t.expect(sharp >= 100 && circ >= 100, "too few pairs found");
    return t.outcome("200 instances, " + std::to_string(sharp) + " sharp and " + std::to_string(circ) + " circ pairs");
}

// 6. Equivalent characterizations of Eff and WEff under a Bishop-Phelps cone.
Outcome criterion_6() {
    Rng rng(6);
    Tally t;
    long eff_hits = 0, weff_hits = 0, labels = 0;
    for (int i = 0; i < 200; ++i) {
        const bool weak = i >= 100;
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        auto cat = testing_support::seminorm_catalog(n);
        const Seminorm& psi = cat[static_cast<std::size_t>(i) % 3];
        const Point xs = rng.box(n, -1, 2);
        auto [dn, kdir] = dual_norm(psi, xs);
        if (dn < 0.1) continue;
        const ScalarizingPair pr(xs, rng.uniform(0.1, 0.9) * dn, psi);
        const ConeRep C = pr.cone();
        auto imgs = testing_support::random_images(rng, n, 6 + static_cast<std::size_t>(rng.integer(0, 14)));
        const VOProblem p(labels_for(imgs.size()), imgs, C, psi);
        // Directions in C^>: kdir and perturbations of it that stay interior.
        std::vector<Point> ks{kdir};
        while (ks.size() < 5) {
            Point k = kdir + rng.direction(n) * rng.uniform(0.0, 0.3);
            if (dot(xs, k) - pr.alpha * psi(k) > 1e-3) ks.push_back(k);
        }
        const auto eff = eff_set(p);
        const auto weff = weff_set(p);
        for (std::size_t x = 0; x < p.size(); ++x) {
            ++labels;
            const auto same = same_image_set(p, x);
            const auto r = solve_P_phi_a(p, ScalarizerSpec::seminorm_linear(pr), imgs[x]);
            const std::string at = "instance " + std::to_string(i) + " label " + std::to_string(x);
            if (!weak) {
                const bool s1 = eff.contains(x);
                const bool s3 = r.minimizers == same;
                t.expect(s1 == s3, "Eff 1 vs 3 at " + at);
                for (std::size_t j = 0; j < 3; ++j) {
                    const auto g = solve_P_phi_ak(p, C, imgs[x], ks[j]);
                    const bool s2 = g.minimizers == same && std::abs(g.optimum.value()) <= p.tol.eps_opt;
                    t.expect(s1 == s2, "Eff 1 vs 2 at " + at);
                }
                eff_hits += s1;
            } else {
                const bool s1 = weff.contains(x);
                const bool s3 = std::binary_search(r.minimizers.begin(), r.minimizers.end(), x);
                t.expect(s1 == s3, "WEff 1 vs 3 at " + at);
                for (const Point& k : ks) {
                    const auto g = solve_P_phi_ak(p, C, imgs[x], k);
                    const bool s2 = g.optimum.value() >= -p.tol.eps_opt &&
                                    std::binary_search(g.minimizers.begin(), g.minimizers.end(), x);
                    t.expect(s1 == s2, "WEff 1 vs 2 at " + at);
                }
                weff_hits += s1;
            }
        }
    }
    t.expect(eff_hits > 0 && weff_hits > 0, "no efficient labels exercised");
    return t.outcome(std::to_string(labels) + " labels, " + std::to_string(eff_hits) + " efficient, " +
                     std::to_string(weff_hits) + " weakly efficient");
}

// 7. Augmented dual verdicts never contradict sampled monotonicity falsifiers.
Outcome criterion_7() {
    Rng rng(7);
    Tally t;
    long plus = 0, falsified = 0;
    std::vector<ConeRep> cones;
    for (std::size_t n : {2u, 3u}) {
        cones.push_back(ConeRep::orthant(n));
        for (int j = 0; j < 4; ++j) cones.push_back(testing_support::random_cone(rng, n, 1));
    }
    for (int i = 0; i < 100000; ++i) {
        const ConeRep& K = cones[static_cast<std::size_t>(i) % cones.size()];
        const std::size_t n = K.dim();
        const Seminorm psi = testing_support::seminorm_catalog(n)[static_cast<std::size_t>(i / 10) % 3];
        const ScalarizingPair pr(rng.box(n, -0.5, 2.0), rng.uniform(0, 1.5), psi);
        const ScalarizerSpec phi = ScalarizerSpec::seminorm_linear(pr);
        const bool strong = i % 2;
        const AugDualClass cls = strong ? AugDualClass::ASharp : AugDualClass::APlus;
        const MonotoneMode mode = strong ? MonotoneMode::Strongly : MonotoneMode::Increasing;
        const Verdict v = aug_dual_membership(K, psi, pr, cls).verdict;
        const MonotoneResult m = check_monotone(phi, K, mode, 8, {}, static_cast<std::uint64_t>(i));
        plus += v == Verdict::Holds;
        falsified += m.verdict == Verdict::Fails;
        if (v == Verdict::Holds) t.expect(m.verdict != Verdict::Fails, "falsifier contradicts Holds at pair " + std::to_string(i));
        if (m.verdict == Verdict::Fails) t.expect(v == Verdict::Fails, "membership not Fails at pair " + std::to_string(i));
    }
    return t.outcome("100000 pairs, " + std::to_string(plus) + " memberships, " + std::to_string(falsified) + " falsified");
}

// 8. Generator-vertex verdicts equal dense-sample verdicts.
Outcome criterion_8() {
    Rng rng(8);
    Tally t;
    long compared = 0, skipped = 0;
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = 2 + static_cast<std::size_t>(c % 2);
        auto gens = testing_support::random_pointed_generators(rng, n, n + static_cast<std::size_t>(rng.integer(0, 2)));
        const ConeRep K = ConeRep::generated(gens);
        for (const Seminorm& psi : testing_support::seminorm_catalog(n)) {
            bool degenerate = false;
            for (const Point& g : gens) degenerate |= psi(g) <= 1e-6 * norm_inf(g);
            if (degenerate) {
                ++skipped;
                continue;
            }
            const ScalarizingPair pr(rng.box(n, -1, 2), rng.uniform(0, 1), psi);
            double dense_min = INFINITY;
            for (int s = 0; s < 10000; ++s) {
                const Point y = combine(gens, rng.simplex_weights(gens.size(), s % 2 == 0));
                dense_min = std::min(dense_min, (dot(pr.xstar, y) - pr.alpha * psi(y)) / psi(y));
            }
            if (std::abs(dense_min) < 1e-9) {
                ++skipped;
                continue;
            }
            ++compared;
            const Verdict vp = aug_dual_membership(K, psi, pr, AugDualClass::APlus).verdict;
            const Verdict vs = aug_dual_membership(K, psi, pr, AugDualClass::ASharp).verdict;
            t.expect((vp == Verdict::Holds) == (dense_min >= 0), "APlus differs on cone " + std::to_string(c));
            t.expect((vs == Verdict::Holds) == (dense_min > 0), "ASharp differs on cone " + std::to_string(c));
        }
    }
    return t.outcome(std::to_string(compared) + " cone/seminorm pairs, " + std::to_string(skipped) + " skipped");
}

// 9. Cond5 and Cond6 imply Cond4 for convex A; strict certificates re-verify.
Outcome criterion_9() {
    Rng rng(9);
    Tally t;
    int qualifying = 0, certs = 0;
    for (int i = 0; qualifying < 100 && i < 2000; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        const Seminorm psi = testing_support::seminorm_catalog(n)[static_cast<std::size_t>(i) % 3];
        const ConeRep A = ConeRep::generated(testing_support::random_pointed_generators(rng, n, 2 + static_cast<std::size_t>(i % 3)));
        const ConeRep K = ConeRep::generated(testing_support::random_pointed_generators(rng, n, 3));
        if (!passed(check_condition(SeparationCondition::Cond5, A, K, psi).verdict) ||
            !passed(check_condition(SeparationCondition::Cond6, A, K, psi).verdict))
            continue;
        ++qualifying;
        t.expect(passed(check_condition(SeparationCondition::Cond4, A, K, psi).verdict),
                 "Cond4 fails on instance " + std::to_string(i));
    }
    t.expect(qualifying == 100, "only " + std::to_string(qualifying) + " qualifying instances");
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        const Seminorm psi = testing_support::seminorm_catalog(n)[static_cast<std::size_t>(i) % 3];
        std::vector<Point> ga;
        for (std::size_t j = 0; j < 3; ++j) ga.push_back(rng.direction(n));
        const ConeRep A = i % 2 ? ConeRep::ray_union(ga) : ConeRep::generated(testing_support::random_pointed_generators(rng, n, 2));
        const auto gk = testing_support::random_pointed_generators(rng, n, 3);
        const ConeRep K = ConeRep::generated(gk);
        auto cert = find_separating_pair(A, K, psi, true, 0.05, {}, SamplingOptions{0, static_cast<std::uint64_t>(i)});
        if (!cert) continue;
        ++certs;
        const ConeRep C = cert->pair.cone();
        for (const Point& g : gk) t.expect(classify(C, g, 1e-9) == Membership::Interior, "K generator not interior");
        for (const Point& a : A.vectors()) t.expect(classify(C, a * -1.0, 1e-9) == Membership::Outside, "A ray meets -C");
        t.expect(verify_certificate(*cert, A, K, 200, {}, 100 + static_cast<std::uint64_t>(i)).passed_all(),
                 "re-verification failed");
    }
    t.expect(certs >= 20, "only " + std::to_string(certs) + " certificates");
    return t.outcome(std::to_string(qualifying) + " qualifying instances, " + std::to_string(certs) + " certificates");
}

// 10. Theorem pipelines on fixtures and random instances.
Outcome criterion_10() {
    Tally t;
    int passed_runs = 0, hyp = 0, henig_runs = 0, henig_passed = 0;
    auto run_peff = [&](const VOProblem& p, const std::string& name) {
        for (std::size_t x : peff_A_set(p, AMapVariant::RaysOfDifferences).members) {
            PipelineReport r = run_theorem_pipeline(p, Theorem::PEffTh, x);
            const std::string at = name + " label " + p.labels[x];
            if (r.status == PipelineStatus::HypothesisFailed) {
                ++hyp;
                t.expect(!r.steps.empty() && r.steps.back().witness.has_value(), "hypothesis failure without witness at " + at);
                continue;
            }
            t.expect(r.passed(), "pipeline " + r.failed_step + " at " + at);
            if (!r.passed()) continue;
            ++passed_runs;
            for (const PipelineStep& s : r.steps) t.expect(s.verdict != Verdict::Fails, s.name + " at " + at);
            const auto ec = eff_set(p.with_cone(r.pair->cone())).members;
            t.expect(subset(ec, eff_set(p).members), "Eff(C) not in Eff(K) at " + at);
            if (p.K.kind() == ConeKind::Orthant) t.expect(subset(ec, pareto_scan(p.images, false)), "Eff(C) not Pareto at " + at);
        }
    };
    auto run_henig = [&](const VOProblem& p, std::size_t x, const PipelineOptions& opt, const std::string& name) {
        for (Theorem th : {Theorem::HenigTh1, Theorem::HenigTh2}) {
            PipelineReport r = run_theorem_pipeline(p, th, x, opt);
            ++henig_runs;
            const std::string at = name + " " + to_string(th) + " label " + p.labels[x];
            t.expect(r.status != PipelineStatus::VerificationFailed, "verification failed at " + at + ": " + r.failed_step);
            if (!r.passed()) continue;
            ++henig_passed;
            const PipelineStep* d = r.step("dilating_inclusion");
            t.expect(d && passed(d->verdict), "dilating inclusion at " + at);
            t.expect(subset(eff_set(p.with_cone(r.pair->cone())).members, eff_set(p).members), "Eff(C) not in Eff(K) at " + at);
        }
    };

    const VOProblem fixture = io::load_problem(std::string(BPSCAL_SAMPLES_DIR) + "/fixture.json");
    run_peff(fixture, "fixture");
    const VOProblem four(labels_for(4), {Point{1, 3}, Point{2, 2}, Point{3, 1}, Point{3, 3}}, ConeRep::orthant(2),
                         Seminorm::l2());
    run_peff(four, "four-point");
    PipelineOptions dil;
    dil.dilating_cone = ConeRep::generated({Point{2, -1}, Point{-1, 2}});
    for (std::size_t x = 0; x < 3; ++x) {
        run_henig(four, x, dil, "four-point");
        run_henig(fixture, x, {}, "fixture");
    }

    Rng rng(10);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        VOProblem p = random_problem(rng, n, static_cast<std::size_t>(i), 5, 20, true);
        run_peff(p, "instance " + std::to_string(i));
        if (i % 5 == 0) {
            const auto eff = eff_set(p).members;
            if (!eff.empty()) run_henig(p, eff.front(), {}, "instance " + std::to_string(i));
        }
    }
    t.expect(passed_runs > 20, "only " + std::to_string(passed_runs) + " certified runs");
    t.expect(henig_passed > 10, "only " + std::to_string(henig_passed) + " certified Henig runs");
    return t.outcome(std::to_string(passed_runs) + " certified, " + std::to_string(hyp) + " hypothesis failures, " +
                     std::to_string(henig_passed) + "/" + std::to_string(henig_runs) + " Henig runs certified");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// 11. Two consecutive CLI runs write identical bytes.
Outcome criterion_11() {
    const std::string cli = BPSCAL_CLI_PATH;
    const std::string dir = BPSCAL_SAMPLES_DIR;
    const auto tmp = std::filesystem::temp_directory_path() / ("bpscal_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    const std::vector<std::string> runs = {
        "solve-scalar --problem " + dir + "/fixture.json --xstar 1,1 --alpha 0.5 --a 0,0",
        "solve-scalar --problem " + dir + "/biobjective.json --phi gerstewitz --k 1,1 --format csv",
        "solve-vector --problem " + dir + "/fixture.json --concept eff",
        "solve-vector --problem " + dir + "/grid.json --concept weff",
        "solve-vector --problem " + dir + "/biobjective.json --concept peff-a",
        "solve-vector --problem " + dir + "/biobjective.json --concept peff-henig --seed 5",
        "check-cone --problem " + dir + "/fixture.json --xstar 2,2 --alpha 1 --seed 3",
        "separate --problem " + dir + "/fixture.json --xbar x2 --seed 9",
        "separate --problem " + dir + "/grid.json --xbar g1 --weak",
        "verify-theorems --problem " + dir + "/fixture.json --theorem peff --seed 7",
        "verify-theorems --problem " + dir + "/grid.json --theorem weff --seed 7",
        "verify-theorems --problem " + dir + "/biobjective.json --theorem henig1 --seed 2",
        "verify-theorems --problem " + dir + "/fixture.json --theorem henig2 --seed 2",
        "report --problem " + dir + "/biobjective.json --xstar 1,1 --alpha 0.5 --format csv",
        "report --problem " + dir + "/grid.json",
    };
    Tally t;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::string out[2];
        int rc[2];
        for (int rep = 0; rep < 2; ++rep) {
            const auto file = tmp / ("run" + std::to_string(i) + "_" + std::to_string(rep));
            rc[rep] = std::system((cli + " " + runs[i] + " --out " + file.string() + " 2>/dev/null").c_str());
            out[rep] = slurp(file);
        }
        t.expect(rc[0] == rc[1], "exit codes differ for: " + runs[i]);
        t.expect(!out[0].empty() && out[0] == out[1], "bytes differ for: " + runs[i]);
    }
    std::filesystem::remove_all(tmp);
    return t.outcome(std::to_string(runs.size()) + " invocations");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 orthant as an L1 Bishop-Phelps cone", criterion_1},
        {"2 one-dimensional base counterexample", criterion_2},
        {"3 Gerstewitz dual-path agreement", criterion_3},
        {"4 constraint and Gerstewitz solutions agree", criterion_4},
        {"5 argmin inclusions", criterion_5},
        {"6 efficiency characterizations", criterion_6},
        {"7 augmented dual vs monotonicity", criterion_7},
        {"8 generator-vertex exactness", criterion_8},
        {"9 separation soundness", criterion_9},
        {"10 theorem pipelines", criterion_10},
        {"11 CLI determinism", criterion_11},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
