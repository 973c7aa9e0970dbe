#include "galspec/thermolimit.hpp"

#include "galspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace galspec::thermo {

std::string model_name(Model m) {
    switch (m) {
        case Model::Girardeau: return "girardeau";
        case Model::Hyl: return "hyl";
        case Model::MeanField: return "mean-field";
    }
    return "?";
}

Model model_from_name(const std::string& s) {
    if (s == "girardeau") return Model::Girardeau;
    if (s == "hyl") return Model::Hyl;
    if (s == "mean-field" || s == "meanfield") return Model::MeanField;
    throw config_error("unknown model: " + s);
}

namespace {

std::vector<SequencePoint> sweep_boxes(const SweepConfig& cfg) {
    const Parity parity = cfg.model == Model::Girardeau ? Parity::Odd : Parity::None;
    const DensitySpec density(cfg.rho, parity);
    if (!cfg.n_indices.empty())
        return thermo_sequence_for(cfg.L_base, cfg.n_indices, density, cfg.dim);
    if (cfg.n_max < 3) throw std::invalid_argument("run_sweep: n_max must be >= 3");
    return thermo_sequence(cfg.L_base, cfg.n_max, density, cfg.dim);
}

std::string base_label(const std::vector<std::int64_t>& coords) {
    std::string s = "t1:[";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords[i]);
    }
    return s + "]";
}

// Distinct base-lattice index multisets of size <= r (strictly increasing, no
// zero); the trajectory family realized at every size by coordinate scaling.
std::vector<std::vector<std::int64_t>> type1_labels(std::int64_t window, int r,
                                                    std::size_t budget) {
    std::vector<std::vector<std::int64_t>> labels;
    std::vector<std::int64_t> pool;
    for (std::int64_t n = -window; n <= window; ++n)
        if (n != 0) pool.push_back(n);
    std::vector<std::int64_t> chosen;
    std::function<void(std::size_t)> walk = [&](std::size_t from) {
        if (!chosen.empty()) {
            labels.push_back(chosen);
            if (labels.size() > budget)
                throw budget_error("type-1 trajectory family exceeds the budget");
            if (static_cast<int>(chosen.size()) == r) return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            chosen.push_back(pool[i]);
            walk(i + 1);
            chosen.pop_back();
        }
    };
    walk(0);
    return labels;
}

struct SizeData {
    SizeRecord record;
    std::vector<EigenPoint> cloud;
    bool truncated = false;
    // Per tracked label, in label order: energy, momentum, rest energy,
    // momentum norm and validity.
    std::vector<double> energies;
    std::vector<double> momenta;
    std::vector<double> rests;
    std::vector<double> pnorms;
    std::vector<char> valid;
};

} // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
    SweepReport report;
    report.config = cfg;
    const auto boxes = sweep_boxes(cfg);
    const std::size_t S = boxes.size();

    // ---- tracked label sets (size-independent) ----
    const BoxSpec base_box = boxes.front().box;
    const int scale_div = boxes.front().box.n_index;
    const double spacing1 = base_box.spacing();

    std::vector<std::string> labels;
    std::vector<std::int64_t> label_depletion; // two-mode n; -1 for other labels
    std::vector<std::vector<std::int64_t>> t1_sets; // girardeau / mean-field
    std::int64_t cascade_count = 0;
    std::int64_t two_mode_count = 0;
    std::int64_t tail_count = 0;

    if (cfg.model == Model::Girardeau) {
        cascade_count = cfg.cascade_max;
        for (std::int64_t m = 1; m <= cascade_count; ++m)
            labels.push_back("cascade:" + std::to_string(m));
        std::int64_t window = cfg.type1_window;
        if (window <= 0 && cfg.spec.momentum_cap)
            window = static_cast<std::int64_t>(std::floor(*cfg.spec.momentum_cap / spacing1));
        if (window > 0) {
            t1_sets = type1_labels(window, std::max(1, cfg.spec.max_excitations.value_or(1)),
                                   cfg.budget);
            for (const auto& set : t1_sets) labels.push_back(base_label(set));
        }
    } else if (cfg.model == Model::Hyl) {
        two_mode_count = cfg.two_mode_labels;
        for (std::int64_t n = 0; n <= two_mode_count; ++n) {
            labels.push_back("two-mode:n=" + std::to_string(n));
            label_depletion.push_back(n);
        }
        tail_count = cfg.tail_max;
        for (std::int64_t k = 1; k <= tail_count; ++k) {
            labels.push_back("tail:k=" + std::to_string(k));
            label_depletion.push_back(-1);
        }
    } else {
        std::int64_t window = cfg.type1_window;
        if (window <= 0 && cfg.spec.momentum_cap)
            window = static_cast<std::int64_t>(std::floor(*cfg.spec.momentum_cap / spacing1));
        if (window <= 0) window = cfg.mode_window;
        for (std::int64_t n = -window; n <= window; ++n)
            if (n != 0) t1_sets.push_back({n});
        for (const auto& set : t1_sets) labels.push_back("mode:[" + std::to_string(set[0]) + "]");
    }
    const std::size_t L = labels.size();

    // ---- per-size evaluation ----
    std::vector<SizeData> data(S);
    auto eval_size = [&](std::size_t si) {
        const auto& bp = boxes[si];
        SizeData& d = data[si];
        const LatticeVelocity vel = snap_velocity(cfg.v_lim, bp.box);
        const LatticeMomentum v = vel.snapped;
        d.record = {bp.box.n_index, bp.box.side(), bp.N, v.coords, v.dim == 1 ? v.value() : v.norm()};
        d.energies.assign(L, 0.0);
        d.momenta.assign(L, 0.0);
        d.rests.assign(L, 0.0);
        d.pnorms.assign(L, 0.0);
        d.valid.assign(L, 0);
        const bool nested = bp.box.n_index % scale_div == 0;
        const std::int64_t scale = nested ? bp.box.n_index / scale_div : 0;
        std::size_t li = 0;

        if (cfg.model == Model::Girardeau) {
            girardeau::Params gp(bp.box, bp.N);
            const EnergyUnits units = gp.units();
            for (std::int64_t m = 1; m <= cascade_count; ++m, ++li) {
                if (m > gp.N) continue;
                EigenPoint pt = girardeau::umklapp_cascade(m, v, gp);
                d.energies[li] = pt.energy_value;
                d.momenta[li] = pt.momentum_value;
                d.rests[li] = pt.energy_rest_value;
                d.pnorms[li] = pt.momentum_norm();
                d.valid[li] = 1;
            }
            for (const auto& set : t1_sets) {
                if (!nested) { ++li; continue; }
                ExactEnergy rest;
                std::int64_t pc = 0;
                for (auto bcoord : set) {
                    const std::int64_t c = bcoord * scale;
                    rest = rest + girardeau::particle_hole_energy(LatticeMomentum(c, bp.box), gp);
                    pc += c;
                }
                ExactEnergy boosted = rest;
                boosted.kin += Rational(v.coords[0] * pc);
                d.energies[li] = boosted.value(units);
                d.rests[li] = rest.value(units);
                d.momenta[li] = LatticeMomentum(pc, bp.box).value();
                d.pnorms[li] = std::abs(d.momenta[li]);
                d.valid[li] = 1;
                ++li;
            }
            girardeau::CloudOptions copts;
            copts.cascade_max = static_cast<int>(std::min<std::int64_t>(cascade_count, gp.N));
            copts.window = std::max(2, cfg.mode_window);
            copts.energy_cap = cfg.spec.energy_cap.value_or(
                8.0 * (pi * cfg.rho) * (pi * cfg.rho));
            copts.r = std::max(1, cfg.spec.max_excitations.value_or(1));
            d.cloud = girardeau::spectrum_cloud(gp, v, copts);
        } else if (cfg.model == Model::Hyl) {
            hyl::Params hp(bp.box, bp.N, cfg.a_tilde);
            const double vv = d.record.v_value;
            for (std::int64_t n = 0; n <= two_mode_count; ++n, ++li) {
                if (n > hp.N) continue;
                d.energies[li] = hyl::two_mode_energy(static_cast<double>(n), hp, vv);
                d.momenta[li] = static_cast<double>(n) * vv;
                d.rests[li] = d.energies[li] + static_cast<double>(n) * vv * vv;
                d.pnorms[li] = std::abs(d.momenta[li]);
                d.valid[li] = 1;
            }
            const double n2 = hyl::two_mode_stationary(hp, vv).n_zero_hi;
            for (std::int64_t k = 1; k <= tail_count; ++k, ++li) {
                if (!(n2 > 0.0) || n2 + static_cast<double>(k) > static_cast<double>(hp.N))
                    continue;
                d.energies[li] = hyl::depletion_tail(k, hp, vv).exact;
                d.momenta[li] = (n2 + static_cast<double>(k)) * vv;
                d.rests[li] = d.energies[li] + (n2 + static_cast<double>(k)) * vv * vv;
                d.pnorms[li] = std::abs(d.momenta[li]);
                d.valid[li] = 1;
            }
            // Integer-occupation cloud at the snapped velocity: exact values.
            const EnergyUnits units = hp.units();
            for (std::int64_t n = 0; n <= hp.N; ++n) {
                ExactEnergy e = hyl::two_mode_energy_exact(n, hp, v);
                ExactEnergy rest = e;
                rest.kin += Rational(n * v.norm_sq_int());
                LatticeMomentum pmom(v.coords, bp.box);
                for (int dd = 0; dd < 3; ++dd) pmom.coords[dd] = v.coords[dd] * n;
                d.cloud.push_back(make_point(e, rest, pmom, units,
                                             "two-mode:n=" + std::to_string(n), true));
            }
        } else {
            hyl::Params mp(bp.box, bp.N, cfg.a_tilde);
            const EnergyUnits units{bp.box.spacing() * bp.box.spacing(), 0.0};
            for (const auto& set : t1_sets) {
                if (!nested) { ++li; continue; }
                const std::int64_t c = set[0] * scale;
                LatticeMomentum k(c, bp.box);
                ExactEnergy rest(Rational(c * c, 2));
                ExactEnergy boosted = rest;
                boosted.kin -= Rational(v.coords[0] * c);
                d.energies[li] = boosted.value(units);
                d.rests[li] = rest.value(units);
                d.momenta[li] = k.value();
                d.pnorms[li] = std::abs(d.momenta[li]);
                d.valid[li] = 1;
                ++li;
            }
            d.cloud = hyl::mean_field_cloud(mp, v, cfg.mode_window);
        }

        if (d.cloud.size() > cfg.cloud_cap) {
            d.cloud.resize(cfg.cloud_cap);
            d.truncated = true;
        }
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || S <= 1) {
        for (std::size_t si = 0; si < S; ++si) eval_size(si);
    } else {
        std::vector<std::thread> pool;
        const int nt = static_cast<int>(std::min<std::size_t>(jobs, S));
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t si = static_cast<std::size_t>(t); si < S;
                     si += static_cast<std::size_t>(nt))
                    eval_size(si);
            });
        for (auto& th : pool) th.join();
    }

    // ---- assemble (fixed order) ----
    report.summary.model = model_name(cfg.model);
    report.summary.v_lim = cfg.v_lim;
    report.summary.rho = cfg.rho;
    report.summary.sizes = static_cast<int>(S);
    for (std::size_t si = 0; si < S; ++si) {
        report.sizes.push_back(data[si].record);
        report.clouds.push_back(std::move(data[si].cloud));
        report.cloud_truncated.push_back(data[si].truncated);
    }
    const auto& last = report.sizes.back();
    report.summary.energy_scale =
        static_cast<double>(last.N) * last.v_value * last.v_value / 2.0;
    report.summary.largest_cloud = report.clouds.back();

    report.summary.trajectories.reserve(L);
    for (std::size_t li = 0; li < L; ++li) {
        meta::Trajectory tr;
        tr.label = labels[li];
        bool filtered = true;
        bool has_filter = false;
        for (std::size_t si = 0; si < S; ++si) {
            if (!data[si].valid[li]) continue;
            tr.sides.push_back(report.sizes[si].side);
            tr.Ns.push_back(report.sizes[si].N);
            tr.energies.push_back(data[si].energies[li]);
            tr.momenta.push_back(data[si].momenta[li]);
            if (cfg.model == Model::Hyl) {
                if (cfg.spec.depletion_cap) {
                    has_filter = true;
                    const double x = *cfg.spec.depletion_cap *
                                     BoxSpec(cfg.L_base, report.sizes[si].n_index, cfg.dim).volume();
                    const double cap = std::floor(x + 1e-9 * std::max(1.0, x));
                    // Two-mode label n depletes exactly n particles; the tail
                    // labels sit above the cap by construction.
                    const double depletion = label_depletion[li] >= 0
                                                 ? static_cast<double>(label_depletion[li])
                                                 : static_cast<double>(report.sizes[si].N);
                    if (depletion > cap) filtered = false;
                }
            } else if (cfg.spec.energy_cap && cfg.spec.momentum_cap) {
                has_filter = true;
                if (data[si].rests[li] > *cfg.spec.energy_cap ||
                    data[si].pnorms[li] > *cfg.spec.momentum_cap)
                    filtered = false;
            }
        }
        tr.in_filtered_set = has_filter && filtered && tr.sides.size() == S &&
                             tr.label.rfind("cascade:", 0) != 0;
        report.summary.trajectories.push_back(std::move(tr));
    }
    return report;
}

std::vector<meta::LimitPoint> limit_points(SweepReport& report, double tol_rel, double tol_abs,
                                           double min_exponent) {
    std::vector<meta::LimitPoint> out;
    for (const auto& tr : report.summary.trajectories) {
        if (tr.sides.size() < 3) {
            meta::LimitPoint lp;
            lp.label = tr.label;
            lp.converged = false;
            out.push_back(lp);
            continue;
        }
        const PowerFit fe = fit_offset_power(tr.sides, tr.energies);
        const PowerFit fp = fit_offset_power(tr.sides, tr.momenta);
        meta::LimitPoint lp;
        lp.label = tr.label;
        lp.eps = fe.eps;
        lp.exponent = fe.q;
        lp.rms = fe.rms;
        lp.constant = fe.constant;
        lp.converged = fe.constant ||
                       (fe.q >= min_exponent && fe.rms <= tol_rel * std::abs(fe.eps) + tol_abs);
        lp.momentum = fp.eps;
        lp.momentum_converged =
            fp.constant || (fp.q >= min_exponent &&
                            fp.rms <= tol_rel * std::abs(fp.eps) + tol_abs);
        out.push_back(lp);
    }
    report.limits = out;
    return out;
}

bool landau_window_check(const SweepReport& report) {
    const auto& cfg = report.config;
    if (cfg.v_lim == 0.0) return false;
    switch (cfg.model) {
        case Model::Girardeau:
            return cfg.v_lim > 0.0 && cfg.v_lim < two_pi * cfg.rho;
        case Model::Hyl:
            return cfg.v_lim * cfg.v_lim < 2.0 * cfg.a_tilde * cfg.rho;
        case Model::MeanField:
            return false;
    }
    return false;
}

meta::VcScan vc_scan(const SweepConfig& cfg, const std::vector<double>& grid, double tol) {
    meta::VcScan scan;
    for (double v : grid) {
        SweepConfig c = cfg;
        c.v_lim = v;
        SweepReport rep = run_sweep(c);
        meta::VcScanEntry entry;
        entry.v = v;
        bool finite_ok = true;
        bool extrap_ok = true;
        bool nontrivial = false;
        bool any = false;
        const double thr = meta::negativity_threshold(rep.summary.energy_scale);
        for (const auto& tr : rep.summary.trajectories) {
            if (!tr.in_filtered_set || tr.energies.size() < 3) continue;
            any = true;
            for (double e : tr.energies)
                if (e < -thr) finite_ok = false;
            const LinearFit f = fit_offset_inverse(tr.sides, tr.energies);
            if (f.eps < -tol) extrap_ok = false;
            if (f.eps > tol) nontrivial = true;
        }
        entry.finite_size_positive = any && finite_ok;
        entry.extrapolated_positive = any && extrap_ok;
        entry.nontrivial = nontrivial;
        scan.entries.push_back(entry);
        if (entry.finite_size_positive && entry.nontrivial) scan.vc_finite = std::max(scan.vc_finite, v);
        if (entry.extrapolated_positive && entry.nontrivial)
            scan.vc_extrapolated = std::max(scan.vc_extrapolated, v);
    }
    return scan;
}

} // namespace galspec::thermo
