#pragma once

#include "galspec/girardeau.hpp"
#include "galspec/hyl.hpp"
#include "galspec/metastability.hpp"

#include <string>
#include <vector>

namespace galspec::thermo {

enum class Model { Girardeau, Hyl, MeanField };

std::string model_name(Model m);
Model model_from_name(const std::string& s);

struct SweepConfig {
    Model model = Model::Girardeau;
    double rho = 1.0;
    double v_lim = 0.0;
    double L_base = 1.0;
    int n_max = 3;
    std::vector<int> n_indices; // explicit subsequence; empty means 1..n_max
    int dim = 1;
    double a_tilde = 1.0;
    meta::SubspaceSpec spec;
    int cascade_max = 5;      // cascade labels m = 1..cascade_max
    int type1_window = 0;     // base-lattice index cap; 0 derives it from the caps
    int mode_window = 6;      // per-size mode window (occupation models)
    int tail_max = 6;         // depletion-tail labels k = 1..tail_max
    int two_mode_labels = 12; // fixed-depletion labels n = 0..two_mode_labels
    std::size_t cloud_cap = 100000;
    std::size_t budget = 10000000;
    int jobs = 1;
};

struct SizeRecord {
    int n_index = 0;
    double side = 0.0;
    std::int64_t N = 0;
    std::array<std::int64_t, 3> v_coords{0, 0, 0};
    double v_value = 0.0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SizeRecord> sizes;
    std::vector<std::vector<EigenPoint>> clouds; // per size, capped
    std::vector<bool> cloud_truncated;
    meta::SweepSummary summary;
    std::vector<meta::LimitPoint> limits; // filled by limit_points
};

// Runs the thermodynamic sweep: per box snap v, evaluate the model's tracked
// excitation families and point cloud, record trajectories keyed by
// size-independent labels (base-lattice scaling realizes a fixed physical
// momentum on every nested box). Sizes are independent and may run on
// several workers; assembly order is fixed by n_index.
SweepReport run_sweep(const SweepConfig& cfg);

// Fit eps + c * L^(-q) per trajectory; convergence certificate requires
// q >= min_exponent and rms residual <= tol_rel*|eps| + tol_abs. Nothing is
// dropped: non-convergent trajectories are reported with the flag cleared.
std::vector<meta::LimitPoint> limit_points(SweepReport& report, double tol_rel = 1e-3,
                                           double tol_abs = 1e-9, double min_exponent = 0.9);

// True when the swept v_lim lies inside the model's NESS window:
// (0, 2 pi rho) for the hard-core gas, v^2 < 2 a rho for the occupation model.
bool landau_window_check(const SweepReport& report);

// Scan a velocity grid, recording finite-size and extrapolated positivity of
// the filtered family; vc_* hold the largest passing grid values.
meta::VcScan vc_scan(const SweepConfig& cfg, const std::vector<double>& grid, double tol = 1e-9);

} // namespace galspec::thermo
