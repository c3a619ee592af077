#include <catch_amalgamated.hpp>

#include <bpscal/pipeline.hpp>

#include "catalog.hpp"

using namespace bpscal;
using testing_support::labels_for;

namespace {

VOProblem fixture(std::vector<Point> images, Seminorm psi) {
    const std::size_t n = images.front().size();
    auto labels = labels_for(images.size());
    return VOProblem(std::move(labels), std::move(images), ConeRep::orthant(n), std::move(psi));
}

std::string dump(const PipelineReport& r) {
    std::string s = std::string(to_string(r.theorem)) + " " + to_string(r.status) + " failed=" + r.failed_step;
    for (const auto& st : r.steps) s += "\n  " + st.name + ": " + to_string(st.verdict) + " " + st.detail;
    return s;
}

} // namespace

TEST_CASE("proper efficiency pipeline on the standard fixture") {
    auto p = fixture({Point{1, 3}, Point{2, 2}, Point{3, 1}, Point{3, 3}}, Seminorm::l1());
    auto r = run_theorem_pipeline(p, Theorem::PEffTh, 1);
    INFO(dump(r));
    REQUIRE(r.passed());
    REQUIRE(r.pair);
    CHECK(r.step("closures_disjoint")->verdict != Verdict::Fails);
    CHECK(r.step("xbar_eff_under_C")->verdict == Verdict::Holds);
    CHECK(r.step("argmin_identity")->verdict == Verdict::Holds);
    CHECK(r.step("gerstewitz_solution_set")->verdict == Verdict::Holds);
    CHECK(r.step("covering_certificate")->verdict == Verdict::Holds);
    CHECK(r.step("eff_C_subset_eff_K")->verdict == Verdict::Holds);
    CHECK(eff_set(p.with_cone(r.pair->cone())).contains(1));

    auto d = run_theorem_pipeline(p, Theorem::PEffTh, 3);
    INFO(dump(d));
    CHECK(d.status == PipelineStatus::HypothesisFailed);
    CHECK(d.failed_step == "closures_disjoint");
    REQUIRE(d.steps.back().witness);
    // (2,2) - (3,3) = (-1,-1) enters -K, so the witness has both coordinates <= 0.
    CHECK((*d.steps.back().witness)[0] <= 1e-9);
    CHECK((*d.steps.back().witness)[1] <= 1e-9);
}

TEST_CASE("single point problems pass vacuously") {
    auto p = fixture({Point{4, -1}}, Seminorm::l2());
    auto r = run_theorem_pipeline(p, Theorem::PEffTh, 0);
    INFO(dump(r));
    CHECK(r.passed());
    REQUIRE(r.step("A_is_zero_cone"));
    CHECK(r.step("A_is_zero_cone")->verdict == Verdict::Holds);
}

TEST_CASE("weak efficiency pipeline") {
    auto p = fixture({Point{1, 3}, Point{2, 2}, Point{3, 1}, Point{3, 3}, Point{1, 4}}, Seminorm::l2());
    for (std::size_t x : {0u, 1u, 2u, 4u}) {
        auto r = run_theorem_pipeline(p, Theorem::WEffTh, x);
        INFO(x << "\n" << dump(r));
        CHECK(r.passed());
        if (r.passed()) {
            CHECK(weff_set(p.with_cone(r.pair->cone())).contains(x));
            CHECK(r.step("pair_in_a_circ")->verdict != Verdict::Fails);
        }
    }
    auto bad = run_theorem_pipeline(p, Theorem::WEffTh, 3);
    INFO(dump(bad));
    CHECK(bad.status == PipelineStatus::HypothesisFailed);
    CHECK(bad.failed_step == "S0_A_misses_int_S_minus_K");

    // With L1 the base of -K spans only a segment.
    auto l1 = fixture({Point{1, 3}, Point{2, 2}}, Seminorm::l1());
    auto f = run_theorem_pipeline(l1, Theorem::WEffTh, 1);
    CHECK(f.status == PipelineStatus::HypothesisFailed);
    CHECK(f.failed_step == "S_minus_K_solid");
}

TEST_CASE("Henig pipelines with a supplied dilating cone") {
    auto p = fixture({Point{1, 3}, Point{2, 2}, Point{3, 1}, Point{3, 3}}, Seminorm::l2());
    PipelineOptions opt;
    opt.dilating_cone = ConeRep::generated({Point{2, -1}, Point{-1, 2}});
    for (Theorem t : {Theorem::HenigTh1, Theorem::HenigTh2}) {
        auto r = run_theorem_pipeline(p, t, 1, opt);
        INFO(dump(r));
        REQUIRE(r.passed());
        CHECK(r.step("dilating_inclusion")->verdict == Verdict::HoldsOnSamples);
        CHECK(r.step("pair_in_a_sharp")->verdict != Verdict::Fails);
    }
    // A wider D whose boundary ray (-1,1) equals (1,3) - (2,2): (1,3) is not efficient for D.
    PipelineOptions wide;
    wide.dilating_cone = ConeRep::generated({Point{-1, 1}, Point{1, -0.5}});
    auto r = run_theorem_pipeline(p, Theorem::HenigTh1, 0, wide);
    CHECK(r.status == PipelineStatus::HypothesisFailed);
    CHECK(r.failed_step == "xbar_eff_under_D");

    // A cone that does not contain K \ {0} in its interior.
    PipelineOptions narrow;
    narrow.dilating_cone = ConeRep::generated({Point{1, 0}, Point{1, 1}});
    auto n = run_theorem_pipeline(p, Theorem::HenigTh1, 1, narrow);
    CHECK(n.status == PipelineStatus::HypothesisFailed);
    CHECK(n.failed_step == "D_dilates_K");
}

TEST_CASE("Henig pipelines with the default dilating cone") {
    auto p = fixture({Point{1, 3}, Point{2, 2}, Point{3, 1}, Point{3, 3}}, Seminorm::l1());
    for (std::size_t x : {0u, 1u, 2u}) {
        for (Theorem t : {Theorem::HenigTh1, Theorem::HenigTh2}) {
            auto r = run_theorem_pipeline(p, t, x);
            INFO(x << "\n" << dump(r));
            CHECK(r.passed());
        }
    }
    auto d = run_theorem_pipeline(p, Theorem::HenigTh1, 3);
    CHECK(d.status == PipelineStatus::HypothesisFailed);
}

TEST_CASE("proper efficiency pipeline on random instances") {
    Rng rng(29);
    int passed = 0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        auto cat = testing_support::seminorm_catalog(n);
        const Seminorm& psi = cat[static_cast<std::size_t>(i) % 3];
        ConeRep K = testing_support::random_cone(rng, n, static_cast<std::size_t>(i));
        auto imgs = testing_support::random_images(rng, n, 5 + static_cast<std::size_t>(rng.integer(0, 15)));
        VOProblem p(labels_for(imgs.size()), imgs, K, psi);
        for (std::size_t x : peff_A_set(p, AMapVariant::RaysOfDifferences).members) {
            auto r = run_theorem_pipeline(p, Theorem::PEffTh, x);
            INFO(dump(r));
            if (r.status == PipelineStatus::HypothesisFailed) {
                CHECK(r.steps.back().witness.has_value());
                continue;
            }
            CHECK(r.passed());
            passed += r.passed();
        }
    }
    CHECK(passed > 5);
}
