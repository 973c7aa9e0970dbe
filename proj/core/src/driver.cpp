#include "galspec/driver.hpp"

#include "galspec/errors.hpp"

#include <cmath>

namespace galspec::driver {

namespace {

BoxSpec spectrum_box(const io::RunConfig& cfg) {
    const double side = cfg.L_override > 0.0 ? cfg.L_override : 2.0 * cfg.L_base;
    return BoxSpec::from_side(side, cfg.dim);
}

std::int64_t spectrum_count(const io::RunConfig& cfg, const BoxSpec& box, Parity parity) {
    if (cfg.N_override > 0) return cfg.N_override;
    return DensitySpec(cfg.rho, parity).particle_count(box);
}

} // namespace

CommandOutput run_spectrum(const io::RunConfig& cfg) {
    CommandOutput out;
    io::RunConfig resolved = cfg;
    io::resolve(resolved);
    const thermo::Model model = thermo::model_from_name(resolved.model);

    std::vector<EigenPoint> cloud;
    if (model == thermo::Model::Girardeau) {
        const BoxSpec box = spectrum_box(resolved);
        const std::int64_t N = spectrum_count(resolved, box, Parity::Odd);
        girardeau::Params p(box, N);
        const LatticeMomentum v = snap_velocity(resolved.v_lim, box).snapped;
        girardeau::CloudOptions opts;
        opts.energy_cap = resolved.energy_cap;
        opts.window = resolved.window;
        opts.cascade_max = resolved.cascade_max;
        opts.r = resolved.r_cap;
        if (resolved.d_cap > 0.0) opts.momentum_cap = resolved.d_cap;
        cloud = girardeau::spectrum_cloud(p, v, opts);
    } else if (model == thermo::Model::Hyl) {
        const BoxSpec box = spectrum_box(resolved);
        const std::int64_t N = spectrum_count(resolved, box, Parity::None);
        hyl::Params p(box, N, resolved.a_tilde);
        cloud = hyl::two_mode_cloud(p, resolved.v_lim);
    } else {
        const BoxSpec box = spectrum_box(resolved);
        const std::int64_t N = spectrum_count(resolved, box, Parity::None);
        hyl::Params p(box, N, resolved.a_tilde);
        const LatticeMomentum v = snap_velocity(resolved.v_lim, box).snapped;
        cloud = hyl::mean_field_cloud(p, v, resolved.window);
    }

    if (cloud.size() > resolved.cloud_cap)
        throw budget_error("spectrum cloud exceeds the configured cap");

    io::Json doc = io::Json::object();
    doc["meta"] = io::to_json(resolved);
    io::Json pts = io::Json::array();
    for (const auto& pt : cloud) pts.push_back(io::to_json(pt));
    doc["points"] = std::move(pts);

    out.files.emplace_back(".json", doc.dump());
    out.files.emplace_back(".csv", io::points_csv(cloud));
    return out;
}

CommandOutput run_sweep_command(const io::RunConfig& cfg) {
    CommandOutput out;
    io::RunConfig resolved = cfg;
    io::resolve(resolved);

    thermo::SweepConfig sc;
    sc.model = thermo::model_from_name(resolved.model);
    sc.rho = resolved.rho;
    sc.v_lim = resolved.v_lim;
    sc.L_base = resolved.L_base;
    sc.n_max = resolved.n_max;
    sc.dim = resolved.dim;
    sc.a_tilde = resolved.a_tilde;
    sc.cascade_max = resolved.cascade_max;
    sc.mode_window = resolved.window;
    sc.budget = resolved.budget;
    sc.cloud_cap = resolved.cloud_cap;
    sc.jobs = resolved.jobs;
    if (resolved.c_cap > 0.0) sc.spec.energy_cap = resolved.c_cap;
    if (resolved.d_cap > 0.0) sc.spec.momentum_cap = resolved.d_cap;
    sc.spec.max_excitations = resolved.r_cap;
    if (resolved.rho_max >= 0.0) sc.spec.depletion_cap = resolved.rho_max;

    // Model-default caps when none were given: the known stability windows.
    if (sc.model == thermo::Model::Girardeau || sc.model == thermo::Model::MeanField) {
        if (!sc.spec.energy_cap) sc.spec.energy_cap = 2.0 * (pi * sc.rho) * (pi * sc.rho);
        if (!sc.spec.momentum_cap) sc.spec.momentum_cap = pi * sc.rho;
    } else if (!sc.spec.depletion_cap) {
        const double cap = sc.rho - sc.v_lim * sc.v_lim / (2.0 * sc.a_tilde);
        sc.spec.depletion_cap = std::max(cap, 0.0);
    }

    thermo::SweepReport report = thermo::run_sweep(sc);
    thermo::limit_points(report, resolved.tol_rel, resolved.tol_abs, resolved.min_exponent);

    std::optional<meta::VcScan> scan;
    if (resolved.vc_scan) {
        double vmax;
        switch (sc.model) {
            case thermo::Model::Girardeau: vmax = two_pi * sc.rho; break;
            case thermo::Model::Hyl: vmax = 1.2 * std::sqrt(2.0 * sc.a_tilde * sc.rho); break;
            default: vmax = pi * sc.rho; break;
        }
        const double step = resolved.vc_step > 0.0 ? resolved.vc_step : vmax / 12.0;
        std::vector<double> grid;
        for (double v = step; v <= vmax + 1e-12; v += step) grid.push_back(v);
        scan = thermo::vc_scan(sc, grid, resolved.tol_abs);
    }

    meta::Verdict verdict =
        meta::superfluid_verdict(report.summary, sc.spec, sc.v_lim, scan, resolved.tol_abs);

    io::Json vjson = io::to_json(verdict, resolved);
    vjson["landau_window"] = thermo::landau_window_check(report);

    out.files.emplace_back("_report.json", io::to_json(report, resolved).dump());
    out.files.emplace_back("_verdict.json", vjson.dump());
    out.files.emplace_back("_trajectories.csv", io::trajectories_csv(report));

    if (resolved.strict) {
        for (const auto& lp : report.limits) {
            if (!lp.converged) {
                out.exit_code = exit_nonconvergent;
                out.message = "non-convergent trajectory under --strict: " + lp.label;
                break;
            }
        }
    }
    return out;
}

} // namespace galspec::driver
