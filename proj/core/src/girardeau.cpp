#include "galspec/girardeau.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace galspec::girardeau {

FermionConfig FermionConfig::fermi_sea(std::int64_t N) {
    FermionConfig c;
    const std::int64_t M = (N - 1) / 2;
    c.indices.reserve(static_cast<std::size_t>(N));
    for (std::int64_t n = -M; n <= M; ++n) c.indices.push_back(n);
    return c;
}

void FermionConfig::validate(std::int64_t N) const {
    if (static_cast<std::int64_t>(indices.size()) != N)
        throw std::invalid_argument("FermionConfig: occupation count differs from N");
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1])
            throw std::invalid_argument("FermionConfig: indices must be strictly increasing");
}

std::int64_t FermionConfig::momentum_coord() const {
    std::int64_t s = 0;
    for (auto n : indices) s += n;
    return s;
}

std::int64_t FermionConfig::kinetic_coeff2() const {
    std::int64_t s = 0;
    for (auto n : indices) s += n * n;
    return s;
}

ExactEnergy ground_state_energy(const Params& p) {
    // N(N^2-1)/24 in spacing^2 units; identical to the Fermi-sea sum
    // M(M+1)(2M+1)/6 with M = (N-1)/2.
    return ExactEnergy(Rational(p.N, 24) * Rational(p.N * p.N - 1));
}

ExactEnergy particle_hole_energy(const LatticeMomentum& k, const Params& p) {
    if (k.is_zero()) throw std::invalid_argument("particle_hole_energy: k must be nonzero");
    const std::int64_t n = std::abs(k.coords[0]);
    return ExactEnergy(Rational(k.coords[0] * k.coords[0], 2) + p.kf_coord() * Rational(n));
}

void validate_move(const UmklappMove& m, const Params& p) {
    if (m.p_index < 1)
        throw std::invalid_argument("umklapp: p must be at least one lattice spacing");
    if (m.q_index < 0 || m.q_index > p.N - 1)
        throw std::invalid_argument("umklapp: q must lie within the Fermi sea span");
}

ExactEnergy umklapp_energy(const UmklappMove& m, const Params& p) {
    validate_move(m, p);
    // [2 k_F + (p - q)](p + q)/2, exact in spacing^2 units.
    const Rational two_kf = p.kf_coord() * Rational(2);
    return ExactEnergy((two_kf + Rational(m.p_index - m.q_index)) *
                       Rational(m.p_index + m.q_index, 2));
}

LatticeMomentum umklapp_momentum(const UmklappMove& m, const Params& p) {
    validate_move(m, p);
    // Momentum is a physical lattice point; always the finite-size 2k_F.
    const std::int64_t mag = (p.N - 1) + (m.p_index - m.q_index);
    const std::int64_t c = m.species == UmklappSpecies::TowardNegative ? -mag : mag;
    return LatticeMomentum(c, p.box);
}

namespace {

std::string coords_list(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace

EigenPoint composite_point(const std::vector<LatticeMomentum>& type1,
                           const std::vector<UmklappMove>& umklapps, const LatticeMomentum& v,
                           const Params& p) {
    if (type1.empty() && umklapps.empty())
        throw std::invalid_argument("composite_point: at least one excitation required");
    if (static_cast<std::int64_t>(type1.size() + umklapps.size()) > p.N)
        throw std::invalid_argument("composite_point: excitation count exceeds N");

    ExactEnergy rest;
    std::int64_t pc = 0;
    std::vector<std::int64_t> t1_coords;
    for (const auto& k : type1) {
        rest = rest + particle_hole_energy(k, p);
        pc += k.coords[0];
        t1_coords.push_back(k.coords[0]);
    }
    std::string ulabel;
    for (const auto& m : umklapps) {
        rest = rest + umklapp_energy(m, p);
        pc += umklapp_momentum(m, p).coords[0];
        ulabel += (m.species == UmklappSpecies::TowardNegative ? ";u-" : ";u+");
        ulabel += "(" + std::to_string(m.p_index) + "," + std::to_string(m.q_index) + ")";
    }
    const LatticeMomentum momentum(pc, p.box);
    ExactEnergy boosted = rest;
    boosted.kin += Rational(v.coords[0] * pc);

    std::string label;
    if (!t1_coords.empty()) label += "t1:" + coords_list(t1_coords);
    label += ulabel;
    // Pure-umklapp content and a lone particle-hole move are exact
    // eigenvalues; multi or mixed content carries the O(1/N) caveat.
    const bool exact =
        type1.empty() || (type1.size() == 1 && umklapps.empty());
    return make_point(boosted, rest, momentum, p.units(), std::move(label), exact);
}

EigenPoint umklapp_cascade(std::int64_t m, const LatticeMomentum& v, const Params& p) {
    if (m < 0 || m > p.N) throw std::invalid_argument("umklapp_cascade: m must lie in [0, N]");
    // Sum of the minimal-move energies: (2k_F + spacing) * spacing * m^2 / 2.
    const Rational per_unit = p.kf_coord() * Rational(2) + Rational(1);
    ExactEnergy rest(per_unit * Rational(m * m, 2));
    const std::int64_t pc = -m * p.N;
    ExactEnergy boosted = rest;
    boosted.kin += Rational(v.coords[0] * pc);
    return make_point(boosted, rest, LatticeMomentum(pc, p.box), p.units(),
                      "cascade:" + std::to_string(m), true);
}

double cascade_energy_asymptotic(std::int64_t m, double v, const Params& p) {
    const double L = p.side();
    const double kf = p.kf_value();
    const double md = static_cast<double>(m);
    return 2.0 * kf * md * (md + 1.0) * pi / L - 2.0 * kf * pi * md / L +
           2.0 * pi * pi * md * (md - 1.0) / (L * L) - 2.0 * kf * md * v -
           two_pi * md * v / L;
}

ExactEnergy cascade_gap(std::int64_t m, const LatticeMomentum& v, const Params& p) {
    if (m < 1) throw std::invalid_argument("cascade_gap: m must be >= 1");
    if (m + 1 > p.N) throw std::invalid_argument("cascade_gap: m+1 exceeds N");
    return umklapp_cascade(m + 1, v, p).energy - umklapp_cascade(m, v, p).energy;
}

CascadeMinimum cascade_minimizer(const LatticeMomentum& v, const Params& p) {
    CascadeMinimum out;
    const std::int64_t vc = v.coords[0];
    out.window_ok = vc > 0 && vc < p.N; // 0 < v < 2*pi*rho in lattice units
    ExactEnergy best = umklapp_cascade(0, v, p).energy;
    out.m_star = 0;
    for (std::int64_t m = 1; m <= p.N; ++m) {
        ExactEnergy e = umklapp_cascade(m, v, p).energy;
        if (e.kin < best.kin) {
            best = e;
            out.m_star = m;
        }
    }
    out.energy = best;
    return out;
}

// ---- oracle ---------------------------------------------------------------

namespace {

struct OracleContext {
    std::int64_t N;
    std::int64_t W;
    std::int64_t mv;
    std::int64_t ground2;
    double bound2; // prune when sum of h2 exceeds this
    std::vector<std::int64_t> h2;                       // per window index
    std::vector<std::vector<std::int64_t>> min_prefix;  // sorted-suffix prefix sums
};

OracleContext make_context(const Params& p, const LatticeMomentum& v, const OracleOptions& o) {
    OracleContext cx;
    cx.N = p.N;
    cx.W = o.index_window;
    cx.mv = v.coords[0];
    if (cx.W < p.sea_edge())
        throw std::invalid_argument("enumerate_spectrum: window smaller than the Fermi sea");
    const std::int64_t K = 2 * cx.W + 1;
    if (K < p.N) throw std::invalid_argument("enumerate_spectrum: window holds fewer than N modes");
    cx.h2.resize(static_cast<std::size_t>(K));
    for (std::int64_t i = 0; i < K; ++i) {
        const std::int64_t n = i - cx.W;
        cx.h2[static_cast<std::size_t>(i)] = n * n + 2 * cx.mv * n;
    }
    const std::int64_t M = p.sea_edge();
    cx.ground2 = M * (M + 1) * (2 * M + 1) / 3;
    const double s = p.box.spacing();
    cx.bound2 = 2.0 * o.energy_cap / (s * s) + static_cast<double>(cx.ground2);

    cx.min_prefix.resize(static_cast<std::size_t>(K + 1));
    for (std::int64_t i = K; i >= 0; --i) {
        std::vector<std::int64_t> tail(cx.h2.begin() + i, cx.h2.end());
        std::sort(tail.begin(), tail.end());
        std::vector<std::int64_t> pref(tail.size() + 1, 0);
        for (std::size_t j = 0; j < tail.size(); ++j) pref[j + 1] = pref[j] + tail[j];
        cx.min_prefix[static_cast<std::size_t>(i)] = std::move(pref);
    }
    return cx;
}

template <typename Sink>
void dfs(const OracleContext& cx, std::vector<std::int64_t>& chosen, std::int64_t pos,
         std::int64_t s2b, std::int64_t s2r, std::int64_t ps, Sink&& sink) {
    const std::int64_t K = 2 * cx.W + 1;
    const std::int64_t need = cx.N - static_cast<std::int64_t>(chosen.size());
    if (need == 0) {
        sink(s2b - cx.ground2, s2r - cx.ground2, ps, chosen);
        return;
    }
    for (std::int64_t i = pos; i + need <= K; ++i) {
        const std::int64_t h = cx.h2[static_cast<std::size_t>(i)];
        const auto& pref = cx.min_prefix[static_cast<std::size_t>(i + 1)];
        const std::int64_t rest_min = pref[static_cast<std::size_t>(need - 1)];
        if (static_cast<double>(s2b + h + rest_min) > cx.bound2) continue;
        const std::int64_t n = i - cx.W;
        chosen.push_back(n);
        dfs(cx, chosen, i + 1, s2b + h, s2r + n * n, ps + n, sink);
        chosen.pop_back();
    }
}

// Enumerate with the leading occupied index pinned; used for partitioning.
template <typename Sink>
void enumerate_partition(const OracleContext& cx, std::int64_t lead_i, Sink&& sink) {
    const std::int64_t K = 2 * cx.W + 1;
    const std::int64_t need = cx.N - 1;
    if (lead_i + need >= K) return;
    const std::int64_t h = cx.h2[static_cast<std::size_t>(lead_i)];
    const auto& pref = cx.min_prefix[static_cast<std::size_t>(lead_i + 1)];
    if (static_cast<double>(h + pref[static_cast<std::size_t>(need)]) > cx.bound2) return;
    const std::int64_t n = lead_i - cx.W;
    std::vector<std::int64_t> chosen{n};
    dfs(cx, chosen, lead_i + 1, h, n * n, n, sink);
}

} // namespace

std::vector<RawPoint> enumerate_spectrum_raw(const Params& p, const LatticeMomentum& v,
                                             const OracleOptions& opts) {
    const OracleContext cx = make_context(p, v, opts);
    const std::int64_t K = 2 * cx.W + 1;
    const std::int64_t leads = K - (cx.N - 1);

    std::vector<std::vector<RawPoint>> buckets(static_cast<std::size_t>(leads));
    auto run = [&](std::int64_t lead) {
        auto& bucket = buckets[static_cast<std::size_t>(lead)];
        enumerate_partition(cx, lead,
                            [&](std::int64_t e2, std::int64_t r2, std::int64_t ps,
                                const std::vector<std::int64_t>&) {
                                bucket.push_back({e2, r2, ps});
                            });
    };

    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || leads <= 1) {
        for (std::int64_t lead = 0; lead < leads; ++lead) run(lead);
    } else {
        std::vector<std::thread> pool;
        const int nt = static_cast<int>(std::min<std::int64_t>(jobs, leads));
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::int64_t lead = t; lead < leads; lead += nt) run(lead);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<RawPoint> out;
    std::size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    out.reserve(total);
    for (const auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<EigenPoint> enumerate_spectrum(const Params& p, const LatticeMomentum& v,
                                           const OracleOptions& opts) {
    const OracleContext cx = make_context(p, v, opts);
    const std::int64_t K = 2 * cx.W + 1;
    const std::int64_t leads = K - (cx.N - 1);
    const EnergyUnits units = p.units();

    std::vector<EigenPoint> out;
    for (std::int64_t lead = 0; lead < leads; ++lead) {
        enumerate_partition(cx, lead,
                            [&](std::int64_t e2, std::int64_t r2, std::int64_t ps,
                                const std::vector<std::int64_t>& chosen) {
                                std::string lbl = "occ:" + coords_list(chosen);
                                out.push_back(make_point(ExactEnergy(Rational(e2, 2)),
                                                         ExactEnergy(Rational(r2, 2)),
                                                         LatticeMomentum(ps, p.box), units,
                                                         std::move(lbl), true));
                            });
    }
    return out;
}

void sort_raw(std::vector<RawPoint>& raw) {
    std::sort(raw.begin(), raw.end(), [](const RawPoint& a, const RawPoint& b) {
        if (a.energy2 != b.energy2) return a.energy2 < b.energy2;
        if (a.momentum != b.momentum) return a.momentum < b.momentum;
        return a.rest2 < b.rest2;
    });
}

bool oracle_contains(const std::vector<RawPoint>& sorted_raw, const EigenPoint& pt) {
    // Exact points have half-integer coefficients in spacing^2 units.
    const Rational e2 = pt.energy.kin * Rational(2);
    if (!e2.is_integer() || !pt.energy.pot.is_zero()) return false;
    RawPoint probe{e2.num(), 0, pt.momentum.coords[0]};
    auto lo = std::lower_bound(sorted_raw.begin(), sorted_raw.end(), probe,
                               [](const RawPoint& a, const RawPoint& b) {
                                   if (a.energy2 != b.energy2) return a.energy2 < b.energy2;
                                   return a.momentum < b.momentum;
                               });
    return lo != sorted_raw.end() && lo->energy2 == probe.energy2 &&
           lo->momentum == probe.momentum;
}

// ---- capped particle-hole family -----------------------------------------

std::vector<EigenPoint> restricted_excitations(const Params& p, const LatticeMomentum& v, double c,
                                               double d, int r, std::int64_t index_cap) {
    if (r < 1) throw std::invalid_argument("restricted_excitations: r must be >= 1");
    if (!(c > 0.0) || !(d > 0.0))
        throw std::invalid_argument("restricted_excitations: caps must be positive");

    const EnergyUnits units = p.units();
    // Largest index whose single-excitation energy fits under c.
    std::int64_t n_cap = 0;
    while (n_cap < 1'000'000) {
        LatticeMomentum k(n_cap + 1, p.box);
        if (particle_hole_energy(k, p).value(units) > c) break;
        ++n_cap;
    }
    if (index_cap > 0) n_cap = std::min(n_cap, index_cap);

    std::vector<std::int64_t> pool; // candidate indices, ascending
    for (std::int64_t n = -n_cap; n <= n_cap; ++n)
        if (n != 0) pool.push_back(n);

    std::vector<EigenPoint> out;
    std::vector<std::int64_t> chosen;
    const std::int64_t vc = v.coords[0];
    const double spacing = p.box.spacing();

    std::function<void(std::size_t, ExactEnergy, std::int64_t)> walk =
        [&](std::size_t from, ExactEnergy rest, std::int64_t psum) {
            if (!chosen.empty()) {
                if (std::abs(static_cast<double>(psum)) * spacing <= d) {
                    ExactEnergy boosted = rest;
                    boosted.kin += Rational(vc * psum);
                    out.push_back(make_point(boosted, rest, LatticeMomentum(psum, p.box), units,
                                             "t1:" + coords_list(chosen), chosen.size() == 1));
                }
                if (static_cast<int>(chosen.size()) == r) return;
            }
            for (std::size_t i = from; i < pool.size(); ++i) {
                ExactEnergy next =
                    rest + particle_hole_energy(LatticeMomentum(pool[i], p.box), p);
                if (next.value(units) > c) continue; // energies are not monotone in i
                chosen.push_back(pool[i]);
                walk(i + 1, next, psum + pool[i]);
                chosen.pop_back();
            }
        };
    walk(0, ExactEnergy(), 0);
    return out;
}

std::vector<EigenPoint> spectrum_cloud(const Params& p, const LatticeMomentum& v,
                                       const CloudOptions& opts) {
    const EnergyUnits units = p.units();
    std::vector<EigenPoint> cloud;
    cloud.push_back(make_point(ExactEnergy(), ExactEnergy(), LatticeMomentum(std::int64_t(0), p.box),
                               units, "ground", true));

    for (auto& pt : restricted_excitations(p, v, opts.energy_cap, opts.momentum_cap,
                                           std::max(1, opts.r), opts.window))
        cloud.push_back(std::move(pt));

    for (auto species : {UmklappSpecies::TowardNegative, UmklappSpecies::TowardPositive}) {
        for (std::int64_t pj = 1; pj <= opts.window; ++pj) {
            for (std::int64_t qj = 0; qj <= p.N - 1; ++qj) {
                UmklappMove m{pj, qj, species};
                if (umklapp_energy(m, p).value(units) > opts.energy_cap) continue;
                cloud.push_back(composite_point({}, {m}, v, p));
            }
        }
    }

    const std::int64_t mmax = std::min<std::int64_t>(opts.cascade_max, p.N);
    for (std::int64_t m = 1; m <= mmax; ++m) cloud.push_back(umklapp_cascade(m, v, p));
    return cloud;
}

} // namespace galspec::girardeau
