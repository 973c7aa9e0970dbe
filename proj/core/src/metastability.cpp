#include "galspec/metastability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace galspec::meta {

double negativity_threshold(double energy_scale) {
    return std::max(1e-12, 1e-9 * std::abs(energy_scale));
}

double landau_critical_velocity(const std::vector<EigenPoint>& points) {
    if (points.empty()) throw std::invalid_argument("landau_critical_velocity: empty input");
    bool all_exact = true;
    for (const auto& pt : points) {
        if (pt.momentum_norm() == 0.0)
            throw std::invalid_argument("landau_critical_velocity: zero-momentum point");
        if (!pt.has_exact || !pt.energy.pot.is_zero()) all_exact = false;
    }

    if (all_exact && points.front().momentum.dim == 1) {
        // Exact path: minimize kin/|n| as a rational, convert once at the end.
        const double spacing = points.front().momentum.spacing();
        bool have = false;
        Rational best;
        for (const auto& pt : points) {
            Rational ratio = pt.energy.kin / Rational(std::abs(pt.momentum.coords[0]));
            if (!have || ratio < best) {
                best = ratio;
                have = true;
            }
        }
        if (best.sign() < 0) return 0.0;
        return best.to_double() * spacing;
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : points) best = std::min(best, pt.energy_value / pt.momentum_norm());
    return std::max(best, 0.0);
}

std::vector<EigenPoint> filter_energy_momentum(const std::vector<EigenPoint>& points,
                                               const SubspaceSpec& spec) {
    if (!spec.energy_cap || !spec.momentum_cap)
        throw std::invalid_argument("filter_energy_momentum: spec must carry both caps");
    const double c = *spec.energy_cap;
    const double d = *spec.momentum_cap;
    std::vector<EigenPoint> out;
    out.reserve(points.size());
    for (const auto& pt : points)
        if (pt.energy_rest_value <= c && pt.momentum_norm() <= d) out.push_back(pt);
    return out;
}

std::vector<hyl::OccupationConfig> filter_depletion(
    const std::vector<hyl::OccupationConfig>& configs, const SubspaceSpec& spec,
    const BoxSpec& box, std::int64_t N) {
    if (!spec.depletion_cap)
        throw std::invalid_argument("filter_depletion: spec must carry a depletion cap");
    // Guard the exact-integer boundary of rho_max * V against one-ulp rounding.
    const double x = *spec.depletion_cap * box.volume();
    const std::int64_t cap = static_cast<std::int64_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
    std::vector<hyl::OccupationConfig> out;
    out.reserve(configs.size());
    for (const auto& c : configs) {
        const std::int64_t depleted = N - c.count_at({0, 0, 0});
        if (depleted <= cap) out.push_back(c);
    }
    return out;
}

std::optional<EigenPoint> ness_witness(const std::vector<EigenPoint>& points,
                                       double energy_scale) {
    if (points.empty()) return std::nullopt;
    const EigenPoint* best = &points.front();
    for (const auto& pt : points)
        if (pt.energy_value < best->energy_value) best = &pt;

    if (best->has_exact) {
        const int sign = best->energy.definite_sign();
        if (sign == -1) return *best;             // exactly negative
        if (sign == 0 || sign == 1) return std::nullopt;
    }
    if (best->energy_value < -negativity_threshold(energy_scale)) return *best;
    return std::nullopt;
}

Verdict superfluid_verdict(const SweepSummary& sweep, const SubspaceSpec& spec, double v_lim,
                           const std::optional<VcScan>& scan, double tol) {
    if (sweep.sizes < 3)
        throw std::invalid_argument("superfluid_verdict: at least 3 sweep sizes required");

    Verdict v;
    v.model = sweep.model;
    v.v_lim = v_lim;
    v.r_used = spec.max_excitations.value_or(0);
    v.tolerance = tol;

    bool all_nonnegative = true;
    bool nontrivial = false;
    bool any_filtered = false;
    double min_negative_eps = 0.0;
    std::string ness_label;

    for (const auto& tr : sweep.trajectories) {
        if (tr.energies.size() < 3) continue;
        // Limits per fixed label fit as eps + c/L, the correction structure of
        // the tracked families.
        const LinearFit f = fit_offset_inverse(tr.sides, tr.energies);
        if (tr.in_filtered_set) {
            any_filtered = true;
            if (f.eps < -tol) all_nonnegative = false;
            if (f.eps > tol) nontrivial = true;
        }
        if (f.eps < min_negative_eps - 1e-15) {
            min_negative_eps = f.eps;
            ness_label = tr.label;
        }
    }

    v.is_superfluid = any_filtered && all_nonnegative && nontrivial;
    const double threshold = negativity_threshold(sweep.energy_scale);
    v.is_ness = min_negative_eps < -threshold;
    v.witness_label = ness_label;
    v.witness_eps = min_negative_eps;
    if (v.is_ness) v.witness = ness_witness(sweep.largest_cloud, sweep.energy_scale);

    if (scan) {
        v.empirical_vc = scan->vc_finite;
        v.empirical_vc_extrapolated = scan->vc_extrapolated;
    } else {
        v.empirical_vc = v.is_superfluid ? v_lim : 0.0;
        v.empirical_vc_extrapolated = v.empirical_vc;
    }
    return v;
}

} // namespace galspec::meta
