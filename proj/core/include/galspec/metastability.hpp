#pragma once

#include "galspec/fit.hpp"
#include "galspec/hyl.hpp"
#include "galspec/point.hpp"

#include <optional>
#include <string>
#include <vector>

namespace galspec::meta {

// Caps defining the restricted subspaces; all are size-independent and are
// stored once per sweep.
struct SubspaceSpec {
    std::optional<double> energy_cap;      // c
    std::optional<double> momentum_cap;    // d
    std::optional<int> max_excitations;    // r
    std::optional<double> depletion_cap;   // rho_max
};

// Arithmetic-noise floor separating true negative eigenvalues from rounding:
// max(1e-12, 1e-9 * |E_scale|) with E_scale typically N v^2 / 2.
double negativity_threshold(double energy_scale);

// Landau critical velocity: min over points of E / |P|, clamped below at 0.
// Uses exact kinetic-channel arithmetic when every point carries it.
double landau_critical_velocity(const std::vector<EigenPoint>& points);

// Keep points with rest energy <= c and |momentum| <= d (order preserved).
std::vector<EigenPoint> filter_energy_momentum(const std::vector<EigenPoint>& points,
                                               const SubspaceSpec& spec);

// Keep configurations with depletion N - n_0 <= floor(rho_max * V).
std::vector<hyl::OccupationConfig> filter_depletion(
    const std::vector<hyl::OccupationConfig>& configs, const SubspaceSpec& spec,
    const BoxSpec& box, std::int64_t N);

// Minimal-energy point when it lies below the negativity threshold.
std::optional<EigenPoint> ness_witness(const std::vector<EigenPoint>& points,
                                       double energy_scale = 0.0);

// One tracked excitation across the sweep: per-size energies keyed by an
// (N, L)-independent label.
struct Trajectory {
    std::string label;
    std::vector<double> sides;
    std::vector<std::int64_t> Ns;
    std::vector<double> energies;
    std::vector<double> momenta;
    bool in_filtered_set = false; // passes the subspace caps at every size
};

struct LimitPoint {
    std::string label;
    double eps = 0.0;
    double momentum = 0.0;
    double exponent = 0.0;
    double rms = 0.0;
    bool converged = false;
    bool momentum_converged = false;
    bool constant = false;
};

// Data handed to the verdict: trajectories of one model across one sweep.
struct SweepSummary {
    std::string model;
    double v_lim = 0.0;
    double rho = 0.0;
    double energy_scale = 0.0; // N v^2 / 2 at the largest size
    int sizes = 0;
    std::vector<Trajectory> trajectories;
    std::vector<EigenPoint> largest_cloud; // unfiltered cloud at the largest size
};

struct VcScanEntry {
    double v = 0.0;
    bool finite_size_positive = false; // filtered cloud >= -threshold at every size
    bool extrapolated_positive = false;
    bool nontrivial = false;
};

struct VcScan {
    std::vector<VcScanEntry> entries;
    double vc_finite = 0.0;        // largest tested v with finite-size positivity
    double vc_extrapolated = 0.0;  // largest tested v with extrapolated positivity
};

struct Verdict {
    std::string model;
    double v_lim = 0.0;
    bool is_ness = false;
    bool is_superfluid = false;
    double empirical_vc = 0.0;              // finite-size variant (reported value)
    double empirical_vc_extrapolated = 0.0; // limit variant, reported alongside
    std::optional<EigenPoint> witness;
    std::string witness_label;
    double witness_eps = 0.0;
    int r_used = 0;
    double tolerance = 0.0;
};

// Definition-4 style assessment over a sweep: extrapolate every filtered
// trajectory (offset + c/L), demand limits >= -tol with a nontrivial positive
// member; NESS from negative limit points of the unfiltered family.
Verdict superfluid_verdict(const SweepSummary& sweep, const SubspaceSpec& spec, double v_lim,
                           const std::optional<VcScan>& scan = std::nullopt, double tol = 1e-9);

} // namespace galspec::meta
