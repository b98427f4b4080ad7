#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinengine/cycle.hpp"

using namespace spinengine;

namespace {

const CycleSpec kReference{4.0, 2.0, Reservoir{0.5}, Reservoir{1.0}, 3};

CycleSpec random_spec(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double beta_h = 0.2 + 1.3 * u(rng);
    const double beta_c = beta_h * (1.3 + 2.7 * u(rng));
    const double gap_b = 0.5 + 2.0 * u(rng);
    const double gap_a = gap_b * (1.4 + 2.6 * u(rng));
    return CycleSpec{gap_a, gap_b, Reservoir{beta_h}, Reservoir{beta_c}, 3};
}

}  // namespace

TEST_CASE("spec validation names the failing constraint") {
    CHECK_THROWS_AS(validate_spec(CycleSpec{2.0, 4.0, {0.5}, {1.0}, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(validate_spec(CycleSpec{4.0, -1.0, {0.5}, {1.0}, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(validate_spec(CycleSpec{4.0, 2.0, {1.0}, {0.5}, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(validate_spec(CycleSpec{4.0, 2.0, {-0.5}, {1.0}, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(validate_spec(CycleSpec{4.0, 2.0, {0.5}, {1.0}, 0}),
                    std::domain_error);
    CHECK_NOTHROW(validate_spec(kReference));
}

TEST_CASE("derive_corners pins the cold gaps to the adiabatic constraints") {
    SUBCASE("equal temperatures collapse the cycle") {
        const CycleCorners c =
            derive_corners(CycleSpec{4.0, 2.0, {1.0}, {1.0}, 3});
        CHECK(c.c.gap == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(c.d.gap == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(c.eta_carnot() == 0.0);
    }
    SUBCASE("gap_c follows the inverse-temperature ratio") {
        const CycleCorners c =
            derive_corners(CycleSpec{5.0, 3.0, {1.0}, {2.0}, 3});
        CHECK(c.c.gap == doctest::Approx(1.5).epsilon(1e-15));
    }
    SUBCASE("corner populations equal the cold-isotherm equilibrium") {
        const CycleCorners c = derive_corners(kReference);
        CHECK(c.a.pop_excited
              == doctest::Approx(1.0 / (1.0 + std::exp(2.0))).epsilon(1e-14));
        CHECK(c.d.gap == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(gibbs_population(Reservoir{1.0}, c.d.gap)
              == doctest::Approx(c.a.pop_excited).epsilon(1e-15));
    }
}

TEST_CASE("adiabatic endpoint consistency across randomized specs") {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        const CycleSpec spec = random_spec(rng);
        const CycleCorners c = derive_corners(spec);
        CHECK(std::abs(gibbs_population(spec.cold, c.c.gap)
                       - gibbs_population(spec.hot, c.b.gap)) <= 1e-14);
        CHECK(std::abs(gibbs_population(spec.cold, c.d.gap)
                       - gibbs_population(spec.hot, c.a.gap)) <= 1e-14);
    }
}

TEST_CASE("isothermal stroke ledger structure") {
    const StrokeLedger ledger =
        simulate_isothermal_stroke(Reservoir{0.5}, 4.0, 2.0, 3);
    REQUIRE(ledger.steps.size() == 6);
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        const StepRecord& step = ledger.steps[i];
        if (i % 2 == 0) {
            CHECK(step.kind == StepKind::AdiabaticChange);
            CHECK(step.heat == 0.0);
            CHECK(step.before.pop_excited == step.after.pop_excited);
        } else {
            CHECK(step.kind == StepKind::Equilibration);
            CHECK(step.work == 0.0);
            CHECK(step.before.gap == step.after.gap);
        }
    }
    // strokes land exactly on the target gap
    CHECK(ledger.steps.back().after.gap == 2.0);

    CHECK_THROWS_AS(simulate_isothermal_stroke(Reservoir{0.5}, 4.0, 2.0, 0),
                    std::domain_error);
    CHECK_THROWS_AS(simulate_isothermal_stroke(Reservoir{0.5}, -4.0, 2.0, 3),
                    std::domain_error);
}

TEST_CASE("stroke with equal gaps is an all-zero ledger") {
    const StrokeLedger ledger =
        simulate_isothermal_stroke(Reservoir{1.0}, 3.0, 3.0, 4);
    CHECK(ledger.steps.size() == 8);
    for (const StepRecord& step : ledger.steps) {
        CHECK(step.work == 0.0);
        CHECK(step.heat == 0.0);
    }
    CHECK(ledger.total_work == 0.0);
    CHECK(ledger.total_heat == 0.0);
}

TEST_CASE("single-subdivision stroke matches the hand computation") {
    const StrokeLedger ledger =
        simulate_isothermal_stroke(Reservoir{1.0}, 2.0, 1.0, 1);
    const double p_start = gibbs_population(Reservoir{1.0}, 2.0);
    const double p_end = gibbs_population(Reservoir{1.0}, 1.0);
    CHECK(ledger.total_work == doctest::Approx(-p_start).epsilon(1e-15));
    CHECK(ledger.total_heat
          == doctest::Approx(1.0 * (p_end - p_start)).epsilon(1e-15));
}

TEST_CASE("three-subdivision hot stroke reproduces the telescoped heat") {
    // beta_h = 1, gap 3 -> 1.5: heat = gap_b*P_B - gap_a*P_A + delta*(P_A+P_2+P_4)
    const Reservoir hot{1.0};
    const StrokeLedger ledger = simulate_isothermal_stroke(hot, 3.0, 1.5, 3);
    const double delta = 0.5;
    const double p_a = gibbs_population(hot, 3.0);
    const double p_2 = gibbs_population(hot, 2.5);
    const double p_4 = gibbs_population(hot, 2.0);
    const double p_b = gibbs_population(hot, 1.5);
    const double expected = 1.5 * p_b - 3.0 * p_a + delta * (p_a + p_2 + p_4);
    CHECK(ledger.total_heat == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(ledger.total_work)
          == doctest::Approx(delta * (p_a + p_2 + p_4)).epsilon(1e-14));
    CHECK(ledger.total_work < 0.0);  // the system does work as the gap shrinks
}

TEST_CASE("every simulated step satisfies dU = work + heat") {
    std::mt19937 rng(36);
    for (int trial = 0; trial < 5; ++trial) {
        const CycleSpec spec = random_spec(rng);
        for (const StrokeLedger& ledger :
             {simulate_isothermal_stroke(spec.hot, spec.gap_a, spec.gap_b, 4),
              simulate_isothermal_stroke(spec.cold, spec.gap_b, spec.gap_a, 4)}) {
            for (const StepRecord& step : ledger.steps) {
                const double delta_u =
                    internal_energy(step.after) - internal_energy(step.before);
                CHECK(std::abs(delta_u - (step.work + step.heat)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("telescoping identity holds for any subdivision count") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const CycleSpec spec = random_spec(rng);
        for (int n : {1, 2, 3, 7}) {
            const StrokeLedger ledger =
                simulate_isothermal_stroke(spec.hot, spec.gap_a, spec.gap_b, n);
            const double delta = (spec.gap_a - spec.gap_b) / n;
            double pop_sum = 0.0;
            for (int k = 0; k < n; ++k)
                pop_sum += gibbs_population(spec.hot, spec.gap_a - delta * k);
            const double expected =
                spec.gap_b * gibbs_population(spec.hot, spec.gap_b)
                - spec.gap_a * gibbs_population(spec.hot, spec.gap_a)
                + delta * pop_sum;
            CHECK(ledger.total_heat == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("adiabatic stroke anchors") {
    const EnginePoint b{2.0, 0.26894142136999512};
    CHECK(simulate_adiabatic_stroke(b, 2.0).work == 0.0);

    const StepRecord to_cold = simulate_adiabatic_stroke(b, 1.0);
    CHECK(to_cold.heat == 0.0);
    CHECK(to_cold.after.pop_excited == b.pop_excited);
    CHECK(to_cold.work == doctest::Approx(b.pop_excited * (1.0 - 2.0)).epsilon(1e-15));

    CHECK(simulate_adiabatic_stroke(EnginePoint{1.0, 0.2}, 2.5).work
          == doctest::Approx(0.3).epsilon(1e-14));

    CHECK_THROWS_AS(simulate_adiabatic_stroke(EnginePoint{1.0, 0.0}, 2.0),
                    std::domain_error);
    CHECK_THROWS_AS(simulate_adiabatic_stroke(b, -1.0), std::domain_error);
}

TEST_CASE("reference cycle regression anchors") {
    // frozen from an independent extended-precision ledger evaluation
    const CycleResult result = simulate_cycle(kReference);
    CHECK(result.q_hot == doctest::Approx(0.38552485747090512).epsilon(1e-13));
    CHECK(result.q_cold == doctest::Approx(-0.24267526185141175).epsilon(1e-13));
    CHECK(result.w_net == doctest::Approx(-0.14284959561949337).epsilon(1e-13));
    CHECK(result.efficiency == doctest::Approx(0.37053277590608792).epsilon(1e-13));
    CHECK(result.is_engine);
    CHECK(result.delta_step == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(result.delta_prime_step == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    REQUIRE(result.hot_intermediate_pops.size() == 2);
    REQUIRE(result.cold_intermediate_pops.size() == 2);
    // interior populations mirror across the strokes on derived corners
    CHECK(result.hot_intermediate_pops[0]
          == doctest::Approx(result.cold_intermediate_pops[1]).epsilon(1e-14));
    CHECK(result.hot_intermediate_pops[1]
          == doctest::Approx(result.cold_intermediate_pops[0]).epsilon(1e-14));
}

TEST_CASE("full-cycle first-law closure") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 8; ++trial) {
        CycleSpec spec = random_spec(rng);
        for (int n : {1, 3, 17}) {
            spec.subdivisions = n;
            const CycleResult result = simulate_cycle(spec);
            // w_net = -(q_hot + q_cold) under the ledger sign convention
            CHECK(std::abs(result.w_net + result.q_hot + result.q_cold) <= 1e-12);
        }
    }
}

TEST_CASE("efficiency stays below Carnot; working engines have positive output") {
    // Coarse discretizations of a valid spec can dissipate more than they
    // extract (w_net > 0, efficiency < 0); the strict engine inequalities
    // apply once the cycle actually outputs work, and every spec reaches
    // that regime as n grows.
    std::mt19937 rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        CycleSpec spec = random_spec(rng);
        spec.subdivisions = 1 + (trial % 6);
        const CycleResult result = simulate_cycle(spec);
        const double eta_c = 1.0 - spec.hot.inv_temp / spec.cold.inv_temp;
        CHECK(result.q_hot > 0.0);
        CHECK(result.q_cold < 0.0);
        CHECK(result.is_engine);
        CHECK(result.efficiency < eta_c);
        if (result.w_net < 0.0) CHECK(result.efficiency > 0.0);

        spec.subdivisions = 300;
        const CycleResult refined = simulate_cycle(spec);
        CHECK(refined.w_net < 0.0);
        CHECK(refined.efficiency > 0.0);
        CHECK(refined.efficiency < eta_c);
    }
}

TEST_CASE("efficiency increases with subdivision count toward Carnot") {
    std::mt19937 rng(35);
    const int grid[] = {1, 2, 3, 5, 8, 13, 21, 50};
    for (int trial = 0; trial < 6; ++trial) {
        CycleSpec spec = random_spec(rng);
        double prev = -std::numeric_limits<double>::infinity();
        for (int n : grid) {
            spec.subdivisions = n;
            const double eta = simulate_cycle(spec).efficiency;
            CHECK(eta > prev);
            prev = eta;
        }
    }
}

TEST_CASE("degenerate equal-temperature cycle dissipates O(1/n) work") {
    // With beta_h = beta_c the two isotherms traverse the same equilibrium
    // curve; the ledger leaves exactly delta * (P_B - P_A) of dissipated work,
    // vanishing in the quasi-static limit.
    const double beta = 0.7, gap_a = 3.0, gap_b = 1.2;
    for (int n : {1, 5, 40}) {
        const CycleSpec spec{gap_a, gap_b, Reservoir{beta}, Reservoir{beta}, n};
        const CycleResult result = simulate_cycle(spec);
        const double p_a = gibbs_population(Reservoir{beta}, gap_a);
        const double p_b = gibbs_population(Reservoir{beta}, gap_b);
        const double expected = (gap_a - gap_b) * (p_b - p_a) / n;
        CHECK(result.w_net == doctest::Approx(expected).epsilon(1e-12));
        CHECK(result.w_net > 0.0);  // work is dissipated, not extracted
        CHECK(std::abs(result.efficiency) <= expected / result.q_hot + 1e-12);
    }
}

TEST_CASE("quasistatic_heat anchors and two-route identity") {
    const Reservoir res{1.0};
    CHECK(quasistatic_heat(res, 2.0, 2.0) == 0.0);
    CHECK(quasistatic_heat(res, 3.0, 1.5)
          == doctest::Approx(-quasistatic_heat(res, 1.5, 3.0)).epsilon(1e-14));

    const double direct =
        (two_level_entropy(gibbs_population(res, 1.5))
         - two_level_entropy(gibbs_population(res, 3.0))) / res.inv_temp;
    CHECK(quasistatic_heat(res, 3.0, 1.5) == doctest::Approx(direct).epsilon(1e-14));

    // independent route: Q = dU - dF with F = -T ln(1 + exp(-beta*gap))
    const auto free_energy = [&](double gap) {
        return -std::log1p(std::exp(-res.inv_temp * gap)) / res.inv_temp;
    };
    const auto energy = [&](double gap) {
        return gap * gibbs_population(res, gap);
    };
    const double via_free_energy =
        (energy(1.5) - energy(3.0)) - (free_energy(1.5) - free_energy(3.0));
    CHECK(quasistatic_heat(res, 3.0, 1.5)
          == doctest::Approx(via_free_energy).epsilon(1e-12));
}

TEST_CASE("stroke heat converges to the quasistatic value at first order") {
    const Reservoir res{0.5};
    const double target = quasistatic_heat(res, 4.0, 2.0);
    double prev_gap = 1e9;
    for (int n : {10, 100, 1000, 10000}) {
        const StrokeLedger ledger = simulate_isothermal_stroke(res, 4.0, 2.0, n);
        const double gap = std::abs(ledger.total_heat - target);
        CHECK(gap < prev_gap);
        CHECK(gap * n < 1.0);  // bounded n*error = first-order convergence
        prev_gap = gap;
    }
}
