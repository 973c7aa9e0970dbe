#include "galspec/thermolimit.hpp"

#include "galspec/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace galspec;
using namespace galspec::thermo;

namespace {

// Base length 7*pi makes v = 1 (and every grid value g/7) an exact lattice
// point on each box of the sequence, so tracked trajectories converge with a
// clean 1/L law.
SweepConfig girardeau_config(double v_lim, int n_max = 6) {
    SweepConfig cfg;
    cfg.model = Model::Girardeau;
    cfg.rho = 1.0;
    cfg.v_lim = v_lim;
    cfg.L_base = 7.0 * pi;
    cfg.n_max = n_max;
    cfg.cascade_max = 5;
    cfg.spec.energy_cap = 2.0 * pi * pi;
    cfg.spec.momentum_cap = pi;
    cfg.spec.max_excitations = 2;
    return cfg;
}

const meta::Trajectory* find_trajectory(const SweepReport& r, const std::string& label) {
    for (const auto& tr : r.summary.trajectories)
        if (tr.label == label) return &tr;
    return nullptr;
}

const meta::LimitPoint* find_limit(const SweepReport& r, const std::string& label) {
    for (const auto& lp : r.limits)
        if (lp.label == label) return &lp;
    return nullptr;
}

} // namespace

TEST_CASE("unboosted sweep: non-negative clouds, no witness") {
    auto cfg = girardeau_config(0.0, 3);
    auto report = run_sweep(cfg);
    REQUIRE(report.sizes.size() == 3);
    for (const auto& cloud : report.clouds)
        for (const auto& pt : cloud) CHECK(pt.energy_value >= -1e-12);
    CHECK_FALSE(meta::ness_witness(report.summary.largest_cloud).has_value());
    CHECK_FALSE(landau_window_check(report));

    auto verdict = meta::superfluid_verdict(report.summary, cfg.spec, 0.0);
    CHECK_FALSE(verdict.is_ness);
    CHECK(verdict.is_superfluid); // all limits non-negative, trivially
}

TEST_CASE("boosted sweep: cascade trajectories and ladder limits") {
    auto cfg = girardeau_config(1.0, 6);
    auto report = run_sweep(cfg);

    // v snaps exactly to coordinate 7n on the n-th box.
    for (const auto& s : report.sizes) CHECK(s.v_coords[0] == 7 * s.n_index);

    for (int j = 1; j <= 4; ++j) {
        auto* tr = find_trajectory(report, "cascade:" + std::to_string(j));
        REQUIRE(tr != nullptr);
        CHECK(tr->sides.size() == 6);
        CHECK_FALSE(tr->in_filtered_set); // cascades are NESS content, not subspace content
    }

    limit_points(report, 1e-2, 1e-9, 0.9);
    for (int j = 1; j <= 4; ++j) {
        auto* lp = find_limit(report, "cascade:" + std::to_string(j));
        REQUIRE(lp != nullptr);
        CHECK(lp->converged);
        CHECK(lp->eps == doctest::Approx(-two_pi * j).epsilon(1e-2));
        CHECK(lp->exponent >= 0.9);
        // Momenta converge to -2 pi rho j.
        CHECK(lp->momentum_converged);
        CHECK(lp->momentum == doctest::Approx(-two_pi * j).epsilon(1e-2));
    }

    // The ladder is equally spaced within tolerance.
    auto* l1 = find_limit(report, "cascade:1");
    auto* l2 = find_limit(report, "cascade:2");
    auto* l3 = find_limit(report, "cascade:3");
    CHECK((l2->eps - l1->eps) == doctest::Approx(l3->eps - l2->eps).epsilon(1e-2));

    // Verdict: NESS and superfluid coexist below the threshold velocity.
    auto verdict = meta::superfluid_verdict(report.summary, cfg.spec, cfg.v_lim);
    CHECK(verdict.is_ness);
    CHECK(verdict.is_superfluid);
    CHECK(landau_window_check(report));
}

TEST_CASE("subsequence stability of limit points") {
    auto full_cfg = girardeau_config(1.0, 6);
    auto full = run_sweep(full_cfg);
    limit_points(full, 1e-2, 1e-9, 0.9);

    auto half_cfg = girardeau_config(1.0);
    half_cfg.n_indices = {2, 4, 6};
    auto half = run_sweep(half_cfg);
    limit_points(half, 1e-2, 1e-9, 0.9);

    for (int j = 1; j <= 3; ++j) {
        auto* a = find_limit(full, "cascade:" + std::to_string(j));
        auto* b = find_limit(half, "cascade:" + std::to_string(j));
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        // Agreement within twice the fit tolerance scale.
        CHECK(std::abs(a->eps - b->eps) <= 2.0 * (1e-2 * std::abs(a->eps) + 1e-9));
    }
}

TEST_CASE("occupation-model sweep: two-mode and tail trajectories") {
    SweepConfig cfg;
    cfg.model = Model::Hyl;
    cfg.rho = 1.0;
    cfg.v_lim = 1.0;
    cfg.L_base = 7.0 * pi;
    cfg.n_max = 6;
    cfg.a_tilde = 1.0;
    cfg.two_mode_labels = 8;
    cfg.tail_max = 4;
    cfg.spec.depletion_cap = 0.5; // rho - v^2/(2 a)
    auto report = run_sweep(cfg);

    // Depletion density of the upper zero: n_zero_hi / V -> rho - v^2/(2a).
    std::vector<double> sides, dens;
    for (const auto& s : report.sizes) {
        hyl::Params hp(BoxSpec(cfg.L_base, s.n_index, 1), s.N, 1.0);
        sides.push_back(s.side);
        dens.push_back(hyl::two_mode_stationary(hp, s.v_value).n_zero_hi / hp.volume());
    }
    auto fit = fit_offset_inverse(sides, dens);
    CHECK(fit.eps == doctest::Approx(0.5).epsilon(1e-3));

    limit_points(report, 1e-2, 1e-9, 0.9);

    // Fixed-depletion labels converge to n (a rho - v^2/2) > 0.
    for (int n : {1, 2, 5}) {
        auto* lp = find_limit(report, "two-mode:n=" + std::to_string(n));
        REQUIRE(lp != nullptr);
        CHECK(lp->converged);
        CHECK(lp->eps == doctest::Approx(0.5 * n).epsilon(2e-2));
    }
    // Tail labels converge to -k (a rho - v^2/2) < 0: the NESS ladder.
    for (int k : {1, 2, 3}) {
        auto* lp = find_limit(report, "tail:k=" + std::to_string(k));
        REQUIRE(lp != nullptr);
        CHECK(lp->converged);
        CHECK(lp->eps == doctest::Approx(-0.5 * k).epsilon(2e-2));
    }

    auto verdict = meta::superfluid_verdict(report.summary, cfg.spec, cfg.v_lim);
    CHECK(verdict.is_ness);
    CHECK(verdict.is_superfluid);
    CHECK(landau_window_check(report)); // 1 < 2 a rho
}

TEST_CASE("occupation-model boundary: window edge has no negative limits") {
    // Integer sides give N = rho*V exactly, and v = pi is a lattice value on
    // every box; with a = pi^2/2 the sweep sits exactly on v^2 = 2 a rho.
    // The fixed-n limits n (a rho - v^2/2) collapse to zero: no NESS.
    SweepConfig cfg;
    cfg.model = Model::Hyl;
    cfg.rho = 1.0;
    cfg.v_lim = pi;
    cfg.L_base = 1.0; // sides 2, 4, ..., 12
    cfg.n_max = 6;
    cfg.a_tilde = pi * pi / 2.0;
    cfg.two_mode_labels = 8;
    cfg.spec.depletion_cap = 0.0;
    auto report = run_sweep(cfg);
    for (const auto& s : report.sizes) {
        CHECK(s.N == static_cast<std::int64_t>(s.side)); // exact density
        CHECK(s.v_coords[0] == s.n_index);               // exact velocity
    }
    CHECK_FALSE(landau_window_check(report)); // the stability window is open
    auto verdict = meta::superfluid_verdict(report.summary, cfg.spec, cfg.v_lim);
    CHECK_FALSE(verdict.is_ness);
    CHECK(std::abs(verdict.witness_eps) <= meta::negativity_threshold(report.summary.energy_scale));
}

TEST_CASE("mean-field sweep: constant trajectories, not superfluid") {
    SweepConfig cfg;
    cfg.model = Model::MeanField;
    cfg.rho = 1.0;
    cfg.v_lim = 4.0 / 7.0; // base-lattice value: exact on every box
    cfg.L_base = 7.0 * pi;
    cfg.n_max = 4;
    cfg.spec.energy_cap = 2.0 * pi * pi;
    cfg.spec.momentum_cap = pi;
    auto report = run_sweep(cfg);
    limit_points(report, 1e-3, 1e-9, 0.9);

    // Base-lattice modes have exactly constant trajectories.
    bool some_negative = false;
    for (const auto& lp : report.limits) {
        CHECK(lp.constant);
        CHECK(lp.converged);
        some_negative = some_negative || lp.eps < -1e-9;
    }
    CHECK(some_negative); // a mode opposite to v undercuts zero

    auto verdict = meta::superfluid_verdict(report.summary, cfg.spec, cfg.v_lim);
    CHECK_FALSE(verdict.is_superfluid);
    CHECK(verdict.is_ness);
    CHECK_FALSE(landau_window_check(report));
}

TEST_CASE("non-convergent trajectories are reported, never dropped") {
    // A generic base length leaves snapping jitter in the data; with the
    // default tight tolerance some cascade fits fail the certificate.
    SweepConfig cfg;
    cfg.model = Model::Girardeau;
    cfg.rho = 1.0;
    cfg.v_lim = 1.0;
    cfg.L_base = 1.0;
    cfg.n_max = 5;
    cfg.cascade_max = 3;
    auto report = run_sweep(cfg);
    auto limits = limit_points(report, 1e-6, 1e-12, 0.9);
    CHECK(limits.size() == report.summary.trajectories.size());
    bool some_fail = false;
    for (const auto& lp : limits) some_fail = some_fail || !lp.converged;
    CHECK(some_fail);
}

TEST_CASE("landau window check") {
    auto g = girardeau_config(3.0 * pi, 3); // outside (0, 2 pi rho)
    CHECK_FALSE(landau_window_check(run_sweep(g)));
    auto g2 = girardeau_config(1.0, 3);
    CHECK(landau_window_check(run_sweep(g2)));

    SweepConfig h;
    h.model = Model::Hyl;
    h.rho = 1.0;
    h.a_tilde = 1.0;
    h.v_lim = 1.0;
    h.L_base = 2.0;
    h.n_max = 3;
    CHECK(landau_window_check(run_sweep(h))); // 1 < 2
    h.v_lim = 1.5;
    CHECK_FALSE(landau_window_check(run_sweep(h))); // 2.25 > 2
}

TEST_CASE("velocity scan locates the threshold") {
    auto cfg = girardeau_config(1.0, 4);
    // Grid of exact base-lattice velocities g/7.
    std::vector<double> grid;
    for (int g = 7; g <= 28; g += 7) grid.push_back(static_cast<double>(g) / 7.0);
    auto scan = vc_scan(cfg, grid);
    REQUIRE(scan.entries.size() == 4);
    CHECK(scan.vc_finite >= 3.0);       // pi rho is the positivity edge
    CHECK(scan.vc_finite < 4.0);
    CHECK(scan.vc_extrapolated >= scan.vc_finite);
}

TEST_CASE("sweep budget guard") {
    auto cfg = girardeau_config(1.0, 3);
    cfg.spec.max_excitations = 3;
    cfg.budget = 10; // the label family alone exceeds this
    CHECK_THROWS_AS(run_sweep(cfg), budget_error);
}

TEST_CASE("sweep is independent of the job count") {
    auto cfg = girardeau_config(1.0, 5);
    cfg.jobs = 1;
    auto a = run_sweep(cfg);
    cfg.jobs = 4;
    auto b = run_sweep(cfg);
    REQUIRE(a.summary.trajectories.size() == b.summary.trajectories.size());
    for (std::size_t i = 0; i < a.summary.trajectories.size(); ++i) {
        const auto& ta = a.summary.trajectories[i];
        const auto& tb = b.summary.trajectories[i];
        CHECK(ta.label == tb.label);
        REQUIRE(ta.energies.size() == tb.energies.size());
        for (std::size_t k = 0; k < ta.energies.size(); ++k) {
            CHECK(ta.energies[k] == tb.energies[k]);
            CHECK(ta.momenta[k] == tb.momenta[k]);
        }
    }
}
