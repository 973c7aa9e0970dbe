#include "galspec/hyl.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace galspec;
using namespace galspec::hyl;

namespace {

Params params_for(std::int64_t N, double side, double a_tilde, int dim = 1) {
    return Params(BoxSpec::from_side(side, dim), N, a_tilde);
}

OccupationConfig config_1d(const BoxSpec& box, std::vector<std::pair<std::int64_t, std::int64_t>> mc) {
    std::sort(mc.begin(), mc.end());
    OccupationConfig c;
    for (auto& [coord, count] : mc) {
        c.modes.push_back(LatticeMomentum(coord, box));
        c.counts.push_back(count);
    }
    return c;
}

OccupationConfig random_config(const BoxSpec& box, std::int64_t N, int window, std::mt19937& rng) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * window + 1), 0);
    std::uniform_int_distribution<int> pick(0, 2 * window);
    for (std::int64_t i = 0; i < N; ++i) counts[static_cast<std::size_t>(pick(rng))] += 1;
    OccupationConfig c;
    for (int m = -window; m <= window; ++m) {
        const auto count = counts[static_cast<std::size_t>(m + window)];
        if (count > 0) {
            c.modes.push_back(LatticeMomentum(m, box));
            c.counts.push_back(count);
        }
    }
    return c;
}

} // namespace

TEST_CASE("energy of occupation configurations") {
    auto p = params_for(10, 10.0, 1.0);
    // All N in the zero mode: a N^2 / (2V) = 5.
    auto all0 = config_1d(p.box, {{0, 10}});
    CHECK(energy(all0, p).value(p.units()) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(energy(all0, p) == ground_energy(p));

    // One particle in mode k: k^2/2 + a/(2V).
    auto p1 = params_for(1, 10.0, 1.0);
    auto single = config_1d(p1.box, {{2, 1}});
    auto e = energy(single, p1);
    CHECK(e.kin == Rational(2));         // c^2/2 = 4/2
    CHECK(e.pot == Rational(1, 2));      // (2N^2 - 1)/2 with N = 1
    const double k = LatticeMomentum(std::int64_t(2), p1.box).value();
    CHECK(e.value(p1.units()) ==
          doctest::Approx(k * k / 2.0 + 1.0 / 20.0).epsilon(1e-14));

    // N = 2 split over two modes costs a/V more than together in one.
    auto p2 = params_for(2, 10.0, 1.0);
    auto together = config_1d(p2.box, {{1, 2}});
    auto split = config_1d(p2.box, {{1, 1}, {2, 1}});
    CHECK((energy(split, p2).pot - energy(together, p2).pot) == Rational(1));

    // Occupation sum must equal N.
    CHECK_THROWS_AS(energy(config_1d(p.box, {{0, 9}}), p), std::invalid_argument);
}

TEST_CASE("boosted energy: display form, conventions, minimum") {
    auto p = params_for(6, 6.0, 1.0);
    LatticeMomentum v(std::int64_t(2), p.box);

    // All particles in mode v: the global minimum -N v^2 / 2.
    auto at_v = config_1d(p.box, {{2, 6}});
    auto e = boosted_energy(at_v, p, v);
    CHECK(e.kin == Rational(-6 * 4, 2));
    CHECK(e.pot == Rational(0));

    // Condensate at rest: zero after the ground subtraction.
    auto at_0 = config_1d(p.box, {{0, 6}});
    CHECK(boosted_energy(at_0, p, v).is_zero());

    // Two-mode configurations reproduce the closed form.
    for (std::int64_t n = 0; n <= 6; ++n) {
        auto c = n == 0 ? at_0 : (n == 6 ? at_v : config_1d(p.box, {{0, 6 - n}, {2, n}}));
        CHECK(boosted_energy(c, p, v) == two_mode_energy_exact(n, p, v));
    }

    // Pointwise convention: boosted = excitation - v.P, exactly.
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto c = random_config(p.box, 6, 3, rng);
        ExactEnergy lhs = boosted_energy(c, p, v);
        ExactEnergy rhs = excitation_energy(c, p);
        rhs.kin -= Rational(v.coords[0] * c.momentum_coords()[0]);
        CHECK(lhs == rhs);
    }

    // Over a symmetric window the boosted multiset equals the multiset of
    // excitation + v.P values (parity pairs the two boost signs).
    std::vector<ExactEnergy> minus_vp, plus_vp;
    for_each_config(p, 2, std::nullopt, 1000000, [&](const std::vector<std::int64_t>& counts) {
        OccupationConfig c;
        auto modes = lattice_momenta(p.box, 2);
        for (std::size_t i = 0; i < modes.size(); ++i)
            if (counts[i] > 0) {
                c.modes.push_back(modes[i]);
                c.counts.push_back(counts[i]);
            }
        minus_vp.push_back(boosted_energy(c, p, v));
        ExactEnergy alt = excitation_energy(c, p);
        alt.kin += Rational(v.coords[0] * c.momentum_coords()[0]);
        plus_vp.push_back(alt);
    });
    std::sort(minus_vp.begin(), minus_vp.end());
    std::sort(plus_vp.begin(), plus_vp.end());
    CHECK(minus_vp == plus_vp);

    // v must live on the box lattice.
    BoxSpec other = BoxSpec::from_side(7.0, 1);
    CHECK_THROWS_AS(boosted_energy(at_0, p, LatticeMomentum(std::int64_t(1), other)),
                    std::invalid_argument);
}

TEST_CASE("two-mode curve: values, stationary points, depletion cap") {
    auto p = params_for(100, 100.0, 1.0);
    CHECK(two_mode_energy(0.0, p, 1.0) == 0.0);
    CHECK(two_mode_energy(100.0, p, 1.0) == -50.0); // -N v^2 / 2
    CHECK(two_mode_energy(50.0, p, 1.0) == 0.0);    // -25 + (5000 - 2500)/100
    CHECK_THROWS_AS(two_mode_energy(101.0, p, 1.0), std::invalid_argument);

    auto st = two_mode_stationary(p, 1.0);
    CHECK(st.window_ok);
    CHECK(st.n_top == 25.0);
    CHECK(st.n_zero_lo == 0.0);
    CHECK(st.n_zero_hi == 50.0);
    CHECK(st.n_top_int == 25);
    CHECK(st.n_last_nonnegative == 50);

    auto st0 = two_mode_stationary(p, 0.0);
    CHECK(st0.n_top == 50.0);
    CHECK(st0.n_zero_hi == 100.0);

    // Boundary v^2 = 2 a rho: window collapses.
    auto stb = two_mode_stationary(p, std::sqrt(2.0));
    CHECK_FALSE(stb.window_ok);
    CHECK(stb.n_zero_hi == doctest::Approx(0.0));

    CHECK(depletion_density_cap(p, 0.0).value == 1.0);
    CHECK(depletion_density_cap(p, 1.0).value == 0.5);
    CHECK(depletion_density_cap(p, std::sqrt(2.0)).value == doctest::Approx(0.0));
    CHECK_FALSE(depletion_density_cap(p, 1.5).positive);
}

TEST_CASE("depletion tail: exact quadratic and the two-term form") {
    auto p = params_for(100, 100.0, 1.0);
    CHECK(depletion_tail(0, p, 1.0).exact == 0.0);
    CHECK(depletion_tail(10, p, 1.0).exact == -6.0);

    // Strictly negative and decreasing in k up to N.
    double prev = 0.0;
    for (std::int64_t k = 1; k <= 50; ++k) {
        const double e = depletion_tail(k, p, 1.0).exact;
        CHECK(e < prev);
        prev = e;
    }
    // Successive differences approach -(a rho - v^2/2) + O(1/V).
    const double d1 = depletion_tail(2, p, 1.0).exact - depletion_tail(1, p, 1.0).exact;
    CHECK(std::abs(d1 - (-0.5)) <= 2.0 * 3.0 / 100.0);

    // The two-term form drops the quadratic piece: difference -a (k^2-1)/V.
    for (std::int64_t k : {1, 5, 10}) {
        auto t = depletion_tail(k, p, 1.0);
        CHECK(t.exact - t.two_term_form ==
              doctest::Approx(-static_cast<double>(k * k - 1) / 100.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(depletion_tail(51, p, 1.0), std::invalid_argument);
}

TEST_CASE("brute force: global minimum and two-mode dominance at fixed depletion") {
    auto p = params_for(6, 6.0, 1.0);
    const EnergyUnits units = p.units();

    for (std::int64_t vc = -3; vc <= 3; ++vc) {
        LatticeMomentum v(vc, p.box);
        auto res = brute_force_minimum(p, v, 3);
        CHECK(res.energy == ExactEnergy(Rational(-6 * vc * vc, 2), Rational()));
        REQUIRE(res.argmin.modes.size() == 1);
        CHECK(res.argmin.counts[0] == 6);
        CHECK(res.argmin.modes[0].coords[0] == vc);

        // At every fixed depletion the two-mode configuration is minimal.
        for (std::int64_t n = 0; n <= 6; ++n) {
            auto fixed = brute_force_minimum(p, v, 3, n);
            if (vc != 0) {
                ExactEnergy expected = two_mode_energy_exact(n, p, v);
                CHECK(fixed.energy == expected);
            }
            CHECK(fixed.argmin.modes.size() <= 2); // (n_0, n_k) form
        }
    }

    // v = 0, depletion 2: the minimum parks the depleted pair on the softest
    // mode; colex order resolves the +-1 tie toward -1.
    {
        LatticeMomentum v0(std::int64_t(0), p.box);
        auto fixed = brute_force_minimum(p, v0, 3, 2);
        REQUIRE(fixed.argmin.modes.size() == 2);
        CHECK(fixed.argmin.modes[0].coords[0] == -1);
        CHECK(fixed.argmin.counts[0] == 2);
    }

    // Splitting the depleted population: the interaction excess over the
    // two-mode value is exactly a * n1 n2 / V on top of the kinetic change.
    {
        LatticeMomentum v(std::int64_t(1), p.box);
        const std::int64_t n = 4;
        for (std::int64_t n1 = 1; n1 < n; ++n1) {
            const std::int64_t n2 = n - n1;
            auto split = config_1d(p.box, {{0, 6 - n}, {1, n1}, {2, n2}});
            auto twomode = config_1d(p.box, {{0, 6 - n}, {1, n}});
            ExactEnergy es = boosted_energy(split, p, v);
            ExactEnergy et = boosted_energy(twomode, p, v);
            // Interaction channel: exactly n1*n2 in units of a/V.
            CHECK(es.pot - et.pot == Rational(n1 * n2));
            // And strictly higher overall.
            CHECK(es.value(units) > et.value(units));
        }
    }

    // Budget guard.
    CHECK_THROWS_AS(brute_force_minimum(p, LatticeMomentum(std::int64_t(0), p.box), 3,
                                        std::nullopt, 10),
                    budget_error);

    // Partitioned runs agree with the sequential scan.
    {
        LatticeMomentum v(std::int64_t(2), p.box);
        auto seq = brute_force_minimum(p, v, 3, std::nullopt, 10000000, 1);
        auto par = brute_force_minimum(p, v, 3, std::nullopt, 10000000, 3);
        CHECK(seq.energy == par.energy);
        CHECK(seq.visited == par.visited);
        REQUIRE(seq.argmin.modes.size() == par.argmin.modes.size());
        for (std::size_t i = 0; i < seq.argmin.modes.size(); ++i) {
            CHECK(seq.argmin.modes[i] == par.argmin.modes[i]);
            CHECK(seq.argmin.counts[i] == par.argmin.counts[i]);
        }
    }
}

TEST_CASE("two-mode optimality, exhaustive over small systems") {
    for (std::int64_t N : {4, 6, 8}) {
        auto p = params_for(N, static_cast<double>(N), 1.0);
        const EnergyUnits units = p.units();
        const auto modes = lattice_momenta(p.box, 2); // window of 5 modes
        for (std::int64_t vc = -2; vc <= 2; ++vc) {
            LatticeMomentum v(vc, p.box);
            for (std::int64_t n = 0; n <= N; ++n) {
                auto best = brute_force_minimum(p, v, 2, n);
                // Exhaustively confirm no config at this depletion beats it,
                // and l > 1 splits exceed the two-mode floor strictly.
                for_each_config(p, 2, n, 1000000, [&](const std::vector<std::int64_t>& counts) {
                    OccupationConfig c;
                    std::int64_t depleted_modes = 0;
                    for (std::size_t i = 0; i < modes.size(); ++i)
                        if (counts[i] > 0) {
                            c.modes.push_back(modes[i]);
                            c.counts.push_back(counts[i]);
                            if (modes[i].norm_sq_int() != 0) ++depleted_modes;
                        }
                    const double val = boosted_energy(c, p, v).value(units);
                    CHECK(val >= best.value - 1e-12);
                    if (depleted_modes > 1 && vc != 0)
                        CHECK(val > best.value + 1e-12);
                });
            }
        }
    }
}

TEST_CASE("mean-field spectrum is free and coupling-independent") {
    auto pa = params_for(8, 8.0, 1.0);
    auto pb = params_for(8, 8.0, 5.5);
    std::mt19937 rng(99);
    for (int t = 0; t < 200; ++t) {
        auto c = random_config(pa.box, 8, 3, rng);
        auto ea = mean_field_excitation_energy(c, pa);
        CHECK(ea == mean_field_excitation_energy(c, pb));
        CHECK(ea.pot == Rational(0));
        CHECK(ea.kin == Rational(c.kinetic2(), 2));
    }
    CHECK(mean_field_ground_energy(params_for(10, 10.0, 1.0)) == 10.0);
}

TEST_CASE("fragmentation cost") {
    CHECK(fragmentation_cost(0, 7, 3.0, 10.0) == 0.0);
    CHECK(fragmentation_cost(50, 50, 1.0, 100.0) == 25.0);
    // Extensive: doubling every argument doubles the cost.
    CHECK(fragmentation_cost(100, 100, 1.0, 200.0) == 2.0 * fragmentation_cost(50, 50, 1.0, 100.0));
    CHECK_THROWS_AS(fragmentation_cost(-1, 1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dilute expansion and the coupling map") {
    auto d = dilute_expansion(1.0, 0.01, 2);
    CHECK(d.e1 == doctest::Approx(4.0 * pi * 0.01).epsilon(1e-15));
    CHECK(d.gas_parameter == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(d.dilute);
    CHECK(d.e2 / d.e1 ==
          doctest::Approx(128.0 * 1e-3 / (15.0 * std::sqrt(pi))).epsilon(1e-13));
    CHECK(dilute_expansion(1.0, 0.01, 1).sum() == d.e1);
    CHECK(dilute_expansion(1.0, 0.01, 2).sum() == d.e1 + d.e2);

    // Vanishing interaction: both coefficients go to zero.
    auto tiny = dilute_expansion(1.0, 1e-12, 2);
    CHECK(tiny.e1 < 1e-10);
    CHECK(tiny.e2 < 1e-10);
    CHECK_THROWS_AS(dilute_expansion(1.0, 0.01, 3), std::invalid_argument);

    CHECK(coupling_from_scattering(1.0) == doctest::Approx(8.0 * pi).epsilon(1e-16));
    CHECK(coupling_from_scattering(0.01) == doctest::Approx(0.08 * pi).epsilon(1e-15));
    CHECK_THROWS_AS(coupling_from_scattering(0.0), std::invalid_argument);

    // Round trip: e0 = a_tilde rho^2 / 2 equals 4 pi a rho^2 bit-exactly.
    const double a = 0.01, rho = 1.3;
    const double e0 = (coupling_from_scattering(a) * (rho * rho)) / 2.0;
    CHECK(e0 == dilute_expansion(rho, a, 1).e1);
}

TEST_CASE("first-order effective consistency report") {
    const double a = 1.0 / (8.0 * pi);
    auto p = params_for(12, 12.0, coupling_from_scattering(a));
    auto rep = effective_order_check(p, a, LatticeMomentum(std::int64_t(1), p.box));
    CHECK(rep.e0_matches_e1);
    CHECK(rep.e0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rep.occupation_invariant);
    CHECK(rep.covariance_identity);

    // Dimension three as well.
    auto p3 = Params(BoxSpec(1.0, 2, 3), 20, coupling_from_scattering(0.02));
    auto rep3 = effective_order_check(p3, 0.02, LatticeMomentum({1, 0, 0}, p3.box));
    CHECK(rep3.e0_matches_e1);
    CHECK(rep3.occupation_invariant);
    CHECK(rep3.covariance_identity);
}

TEST_CASE("two-mode cloud carries the formula scan") {
    auto p = params_for(100, 100.0, 1.0);
    auto cloud = two_mode_cloud(p, 1.0);
    REQUIRE(cloud.size() == 101);
    CHECK(cloud[50].energy_value == 0.0);
    CHECK(cloud[100].energy_value == -50.0);
    CHECK_FALSE(cloud[50].has_exact);

    auto scan = two_mode_scan(p, 1.0);
    REQUIRE(scan.size() == 101);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        CHECK(scan[i].n == static_cast<std::int64_t>(i));
        CHECK(scan[i].energy == cloud[i].energy_value);
    }
}
