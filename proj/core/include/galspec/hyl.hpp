#pragma once

#include "galspec/energy.hpp"
#include "galspec/errors.hpp"
#include "galspec/lattice.hpp"
#include "galspec/point.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace galspec::hyl {

struct Params {
    BoxSpec box;
    std::int64_t N = 1;
    double a_tilde = 1.0;

    Params() = default;
    Params(const BoxSpec& b, std::int64_t n, double at) : box(b), N(n), a_tilde(at) {
        if (n < 1) throw std::invalid_argument("hyl: N must be positive");
        if (!(at > 0.0)) throw std::invalid_argument("hyl: coupling must be positive");
    }

    double volume() const { return box.volume(); }
    double rho() const { return static_cast<double>(N) / volume(); }
    EnergyUnits units() const {
        double s = box.spacing();
        return {s * s, a_tilde / volume()};
    }
};

// Occupation-number configuration: distinct lattice modes with positive
// counts summing to N. Modes are kept sorted lexicographically.
struct OccupationConfig {
    std::vector<LatticeMomentum> modes;
    std::vector<std::int64_t> counts;

    static OccupationConfig single_mode(const LatticeMomentum& k, std::int64_t n);
    static OccupationConfig two_mode(const BoxSpec& box, std::int64_t n0,
                                     const LatticeMomentum& k, std::int64_t nk);

    void validate(std::int64_t N) const;
    std::int64_t total() const;
    std::int64_t sum_sq() const;
    std::int64_t kinetic2() const; // sum |coords|^2 * n_k
    std::array<std::int64_t, 3> momentum_coords() const;
    LatticeMomentum momentum(const BoxSpec& box) const;
    std::int64_t count_at(const std::array<std::int64_t, 3>& coords) const;

    // All mode indices shifted by v; occupation multiset unchanged.
    OccupationConfig shifted(const LatticeMomentum& v) const;

    std::string str() const;
};

// Full Hamiltonian eigenvalue: sum k^2 n_k / 2 + a*(2N^2 - sum n_k^2)/(2V).
ExactEnergy energy(const OccupationConfig& c, const Params& p);
// Ground value a*N^2/(2V), attained by n_0 = N.
ExactEnergy ground_energy(const Params& p);
// energy - ground_energy.
ExactEnergy excitation_energy(const OccupationConfig& c, const Params& p);

// Boosted eigenvalue sum (k-v)^2 n_k / 2 - N v^2/2 + a*(N^2 - sum n_k^2)/(2V),
// whose minimum -N v^2/2 sits at n_v = N. Identically equal to
// excitation_energy(c) - v.P(c); the opposite boost sign is the parity mirror.
ExactEnergy boosted_energy(const OccupationConfig& c, const Params& p, const LatticeMomentum& v);

// Two-mode family (n_0 = N - n, n_v = n): -n v^2/2 + a (N n - n^2)/V.
// The real-argument overload evaluates the same quadratic off the integers.
double two_mode_energy(double n, const Params& p, double v);
ExactEnergy two_mode_energy_exact(std::int64_t n, const Params& p, const LatticeMomentum& v);

struct TwoModePoint {
    std::int64_t n = 0; // population moved from the zero mode to the v mode
    double energy = 0.0;
};
std::vector<TwoModePoint> two_mode_scan(const Params& p, double v);

struct TwoModeStationary {
    double n_top = 0.0;    // interior maximum of the two-mode curve
    double n_zero_lo = 0.0; // zero at n = 0
    double n_zero_hi = 0.0; // second zero N - v^2 V / (2 a)
    bool window_ok = true;  // v^2 < 2 a rho
    std::int64_t n_top_int = 0;          // integer argmax (floor/ceil refined)
    std::int64_t n_last_nonnegative = 0; // largest integer n with energy >= 0
};
TwoModeStationary two_mode_stationary(const Params& p, double v);

struct DepletionCap {
    double value = 0.0; // rho - v^2/(2 a)
    bool positive = true;
};
DepletionCap depletion_density_cap(const Params& p, double v);

// Two-mode energy at occupation n_zero_hi + k. `exact` evaluates the full
// quadratic; `two_term_form` is the often-quoted linearized value that drops
// the k^2 piece (they differ by a*(k^2-1)/V).
struct DepletionTail {
    double exact = 0.0;
    double two_term_form = 0.0;
};
DepletionTail depletion_tail(std::int64_t k, const Params& p, double v);

// ---- exhaustive enumeration ------------------------------------------------

// Weak compositions of N over the modes of the window, colexicographic order.
// fixed_depletion restricts to sum_{k != 0} n_k = given value. Throws
// budget_error when the count exceeds `budget`.
void for_each_config(const Params& p, int index_window, std::optional<std::int64_t> fixed_depletion,
                     std::size_t budget,
                     const std::function<void(const std::vector<std::int64_t>&)>& visit);

struct BruteForceResult {
    OccupationConfig argmin;
    ExactEnergy energy;
    double value = 0.0;
    std::size_t visited = 0;
};
BruteForceResult brute_force_minimum(const Params& p, const LatticeMomentum& v, int index_window,
                                     std::optional<std::int64_t> fixed_depletion = std::nullopt,
                                     std::size_t budget = 10'000'000, int jobs = 1);

// ---- mean-field comparator -------------------------------------------------

// (H_mf - E_mf0) eigenvalue: the free kinetic sum, independent of the coupling.
ExactEnergy mean_field_excitation_energy(const OccupationConfig& c, const Params& p);

// Mean-field ground value a N^2 / V.
double mean_field_ground_energy(const Params& p);

// Single-particle excitation cloud of the mean-field (free) dispersion.
std::vector<EigenPoint> mean_field_cloud(const Params& p, const LatticeMomentum& v,
                                         int index_window);

// Two-mode scan cloud at formula level (v need not be a lattice value).
std::vector<EigenPoint> two_mode_cloud(const Params& p, double v);

// ---- dilute-gas constants ---------------------------------------------------

double fragmentation_cost(double N1, double N2, double U, double V);

struct DiluteCoefficients {
    double a = 0.0;
    double rho = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double gas_parameter = 0.0;
    bool dilute = false; // gas_parameter below 1e-2
    int order = 1;
    double sum() const { return order == 1 ? e1 : e1 + e2; }
};
DiluteCoefficients dilute_expansion(double rho, double a, int order);

double coupling_from_scattering(double a); // a_tilde = 8 pi a

struct EffectiveOrderReport {
    double e0 = 0.0;
    double e1 = 0.0;
    bool e0_matches_e1 = false;       // bitwise under a_tilde = 8 pi a
    bool occupation_invariant = false; // sum n_k^2 unchanged by mode shifts
    bool covariance_identity = false;  // energy(shifted) - energy = v.P + N v^2/2
};
EffectiveOrderReport effective_order_check(const Params& p, double a, const LatticeMomentum& v,
                                           unsigned seed = 12345, int samples = 32);

} // namespace galspec::hyl
