#include "galspec/verify.hpp"

#include "galspec/girardeau.hpp"
#include "galspec/hyl.hpp"
#include "galspec/io.hpp"
#include "galspec/metastability.hpp"
#include "galspec/thermolimit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace galspec::verify {

namespace {

void check(std::vector<CheckResult>& out, const std::string& name, bool pass,
           const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

// Boosted oracle multiset equals the rest multiset shifted by v.P, and its
// minimum is exactly -N v^2 / 2.
bool shift_identity(std::int64_t N, double L, std::int64_t v_coord, int window, int jobs,
                    std::string& detail) {
    girardeau::Params p(BoxSpec::from_side(L, 1), N);
    LatticeMomentum v(v_coord, p.box);
    girardeau::OracleOptions opts;
    opts.index_window = window;
    opts.jobs = jobs;
    auto rest = girardeau::enumerate_spectrum_raw(p, LatticeMomentum(std::int64_t(0), p.box), opts);
    auto boosted = girardeau::enumerate_spectrum_raw(p, v, opts);
    if (rest.size() != boosted.size()) {
        detail = "size mismatch";
        return false;
    }
    std::vector<std::int64_t> a, b;
    a.reserve(rest.size());
    b.reserve(boosted.size());
    for (const auto& r : rest) a.push_back(r.rest2 + 2 * v_coord * r.momentum);
    for (const auto& r : boosted) b.push_back(r.energy2);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
        detail = "multiset mismatch";
        return false;
    }
    const std::int64_t min2 = b.front();
    if (min2 != -N * v_coord * v_coord) {
        detail = "minimum differs from -N v^2/2";
        return false;
    }
    return true;
}

} // namespace

std::vector<CheckResult> run_verification(int jobs) {
    std::vector<CheckResult> out;

    // Lattice basics.
    {
        BoxSpec box = BoxSpec::from_side(3.0, 1);
        auto pts = lattice_momenta(box, 2);
        bool ok = pts.size() == 5;
        for (std::size_t i = 0; ok && i < pts.size(); ++i)
            ok = pts[i].coords[0] == static_cast<std::int64_t>(i) - 2;
        check(out, "lattice: enumeration order", ok);

        BoxSpec b2 = BoxSpec::from_side(two_pi, 1);
        ok = snap_velocity(2.4, b2).snapped.coords[0] == 2 &&
             snap_velocity(2.5, b2).snapped.coords[0] == 2 &&
             snap_velocity(0.0, b2).snapped.coords[0] == 0;
        check(out, "lattice: snapping and tie-break", ok);

        ok = true;
        for (const auto& sp : thermo_sequence(1.5, 6, DensitySpec(1.0, Parity::Odd), 1)) {
            const auto vel = snap_velocity(0.83, sp.box);
            ok = ok && vel.max_error() <= pi / sp.box.side() + 1e-12;
            const auto again = snap_velocity(vel.snapped.value(), sp.box);
            ok = ok && again.snapped == vel.snapped;
        }
        check(out, "lattice: snap convergence bound and idempotence", ok);
    }

    // Ground energy formula vs Fermi-sea sum.
    {
        bool ok = true;
        for (std::int64_t N : {3, 5, 7, 101}) {
            girardeau::Params p(BoxSpec::from_side(static_cast<double>(N), 1), N);
            auto sea = girardeau::FermionConfig::fermi_sea(N);
            ok = ok && girardeau::ground_state_energy(p).kin == Rational(sea.kinetic_coeff2(), 2);
        }
        check(out, "girardeau: ground energy equals Fermi-sea sum", ok);
    }

    // Closed forms against the oracle at N=5.
    {
        girardeau::Params p(BoxSpec::from_side(5.0, 1), 5);
        LatticeMomentum v0(std::int64_t(0), p.box);
        girardeau::OracleOptions opts;
        opts.index_window = 8;
        opts.energy_cap = 40.0;
        opts.jobs = jobs;
        auto raw = girardeau::enumerate_spectrum_raw(p, v0, opts);
        girardeau::sort_raw(raw);

        bool ok = true;
        for (std::int64_t n = -4; n <= 4; ++n) {
            if (n == 0) continue;
            auto pt = girardeau::composite_point({LatticeMomentum(n, p.box)}, {}, v0, p);
            if (pt.energy_value <= opts.energy_cap) ok = ok && girardeau::oracle_contains(raw, pt);
        }
        for (std::int64_t pj = 1; pj <= 3; ++pj)
            for (std::int64_t qj = 0; qj <= 4; ++qj) {
                girardeau::UmklappMove mv{pj, qj, girardeau::UmklappSpecies::TowardNegative};
                auto pt = girardeau::composite_point({}, {mv}, v0, p);
                if (pt.energy_value <= opts.energy_cap)
                    ok = ok && girardeau::oracle_contains(raw, pt);
            }
        for (std::int64_t m = 1; m <= 3; ++m) {
            auto pt = girardeau::umklapp_cascade(m, v0, p);
            if (pt.energy_value <= opts.energy_cap) ok = ok && girardeau::oracle_contains(raw, pt);
        }
        check(out, "girardeau: closed forms occur in the oracle", ok);

        // A deliberately corrupted value must be reported as a mismatch.
        auto bad = girardeau::composite_point({}, {girardeau::UmklappMove{1, 0}}, v0, p);
        bad.energy.kin = -bad.energy.kin;
        check(out, "girardeau: corrupted value is flagged", !girardeau::oracle_contains(raw, bad));
    }

    // Spectral shift identity, several boosts, both job counts.
    {
        bool ok = true;
        std::string detail;
        for (std::int64_t vc = -2; vc <= 2; ++vc)
            ok = ok && shift_identity(5, 5.0, vc, 8, 1, detail);
        ok = ok && shift_identity(5, 5.0, 2, 8, std::max(2, jobs), detail);
        check(out, "girardeau: boost shift identity (exact)", ok, detail);
    }

    // Restricted family positivity below the sound threshold.
    {
        girardeau::Params p(BoxSpec::from_side(7.0, 1), 7);
        const double rho = 1.0;
        LatticeMomentum v = snap_velocity(pi * rho - two_pi / 7.0, p.box).snapped;
        auto pts = girardeau::restricted_excitations(p, v, 2.0 * pi * pi, pi, 2);
        bool ok = !pts.empty();
        for (const auto& pt : pts) ok = ok && pt.energy_value >= -1e-12;
        check(out, "girardeau: capped family positive below threshold", ok);
    }

    // Occupation model: brute force agrees with the two-mode analysis.
    {
        BoxSpec box = BoxSpec::from_side(5.0, 1);
        hyl::Params p(box, 5, 1.0);
        bool ok = true;
        for (std::int64_t vc = -2; vc <= 2; ++vc) {
            LatticeMomentum v(vc, box);
            auto res = hyl::brute_force_minimum(p, v, 2);
            ExactEnergy expected(Rational(-p.N * vc * vc, 2), Rational());
            ok = ok && res.energy == expected;
            ok = ok && res.argmin.modes.size() == 1 && res.argmin.counts[0] == p.N &&
                 res.argmin.modes[0].coords[0] == vc;
        }
        check(out, "hyl: boosted minimum is the fully shifted condensate", ok);
    }

    // Two-mode window values at the standard benchmark point.
    {
        hyl::Params p(BoxSpec::from_side(100.0, 1), 100, 1.0);
        auto st = hyl::two_mode_stationary(p, 1.0);
        bool ok = st.n_top == 25.0 && st.n_zero_lo == 0.0 && st.n_zero_hi == 50.0;
        ok = ok && hyl::depletion_tail(10, p, 1.0).exact == -6.0;
        ok = ok && hyl::depletion_density_cap(p, 1.0).value == 0.5;
        check(out, "hyl: two-mode stationary points and tail", ok);
    }

    // Mean-field null result and exact Landau velocity of the free gas.
    {
        bool ok = true;
        std::mt19937 rng(2024);
        BoxSpec box = BoxSpec::from_side(9.0, 1);
        hyl::Params p1(box, 6, 1.0);
        hyl::Params p2(box, 6, 7.25);
        for (int s = 0; s < 100 && ok; ++s) {
            std::vector<std::int64_t> counts(7, 0);
            for (int i = 0; i < 6; ++i) counts[rng() % 7] += 1;
            hyl::OccupationConfig c;
            for (std::int64_t m = -3; m <= 3; ++m)
                if (counts[static_cast<std::size_t>(m + 3)] > 0) {
                    c.modes.push_back(LatticeMomentum(m, box));
                    c.counts.push_back(counts[static_cast<std::size_t>(m + 3)]);
                }
            ok = hyl::mean_field_excitation_energy(c, p1) ==
                 hyl::mean_field_excitation_energy(c, p2);
            ok = ok && hyl::mean_field_excitation_energy(c, p1).kin == Rational(c.kinetic2(), 2);
        }
        check(out, "mean-field: spectrum free and coupling-independent", ok);

        LatticeMomentum v0(std::int64_t(0), box);
        auto cloud = hyl::mean_field_cloud(p1, v0, 4);
        std::vector<EigenPoint> nonzero;
        for (const auto& pt : cloud)
            if (pt.momentum_norm() > 0.0) nonzero.push_back(pt);
        ok = meta::landau_critical_velocity(nonzero) == pi / box.side();
        check(out, "mean-field: Landau velocity equals pi/L exactly", ok);
    }

    // Dilute constants.
    {
        const double a = 0.01, rho = 1.0;
        auto d = hyl::dilute_expansion(rho, a, 2);
        bool ok = d.e1 == ((4.0 * pi) * a) * (rho * rho);
        const double ratio = d.e2 / d.e1;
        const double expect = 128.0 * std::sqrt(rho * a * a * a) / (15.0 * std::sqrt(pi));
        ok = ok && std::abs(ratio - expect) <= 1e-12 * expect;
        hyl::Params p(BoxSpec::from_side(10.0, 3), 1000, hyl::coupling_from_scattering(a));
        auto rep = hyl::effective_order_check(p, a, LatticeMomentum({1, 0, 0}, p.box));
        ok = ok && rep.e0_matches_e1 && rep.occupation_invariant && rep.covariance_identity;
        check(out, "hyl: dilute coefficients and first-order consistency", ok);
    }

    // Determinism across job counts.
    {
        girardeau::Params p(BoxSpec::from_side(7.0, 1), 7);
        LatticeMomentum v(std::int64_t(2), p.box);
        girardeau::OracleOptions o1;
        o1.index_window = 9;
        o1.energy_cap = 35.0;
        o1.jobs = 1;
        girardeau::OracleOptions o4 = o1;
        o4.jobs = 4;
        auto r1 = girardeau::enumerate_spectrum_raw(p, v, o1);
        auto r4 = girardeau::enumerate_spectrum_raw(p, v, o4);
        bool ok = r1.size() == r4.size();
        for (std::size_t i = 0; ok && i < r1.size(); ++i)
            ok = r1[i].energy2 == r4[i].energy2 && r1[i].momentum == r4[i].momentum;
        check(out, "determinism: oracle independent of job count", ok);
    }

    return out;
}

std::string render_table(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        for (std::size_t i = r.name.size(); i < width; ++i) os << ' ';
        if (!r.detail.empty()) os << "  " << r.detail;
        os << '\n';
    }
    return os.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace galspec::verify
