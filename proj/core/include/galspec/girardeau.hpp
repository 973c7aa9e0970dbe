#pragma once

#include "galspec/energy.hpp"
#include "galspec/lattice.hpp"
#include "galspec/point.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace galspec::girardeau {

// Fermi-momentum convention used when evaluating the closed-form excitation
// energies: the finite-size value pi*(N-1)/L reproduces the enumeration
// oracle exactly; the thermodynamic value pi*rho is the limiting form.
enum class FermiConvention { FiniteSize, Thermodynamic };

struct Params {
    BoxSpec box;
    std::int64_t N = 1;
    FermiConvention kf = FermiConvention::FiniteSize;

    Params() = default;
    Params(const BoxSpec& b, std::int64_t n, FermiConvention c = FermiConvention::FiniteSize)
        : box(b), N(n), kf(c) {
        if (b.dim != 1) throw std::invalid_argument("girardeau: model is one-dimensional");
        if (n < 1 || n % 2 == 0) throw std::invalid_argument("girardeau: N must be odd positive");
    }

    double side() const { return box.side(); }
    double rho() const { return static_cast<double>(N) / box.side(); }
    // Fermi momentum in lattice units of spacing = 2*pi/L.
    Rational kf_coord() const {
        return kf == FermiConvention::FiniteSize ? Rational(N - 1, 2) : Rational(N, 2);
    }
    double kf_value() const { return kf_coord().to_double() * box.spacing(); }
    EnergyUnits units() const {
        double s = box.spacing();
        return {s * s, 0.0};
    }
    std::int64_t sea_edge() const { return (N - 1) / 2; }
};

// Occupied momentum indices of N mapped fermions, strictly increasing.
struct FermionConfig {
    std::vector<std::int64_t> indices;

    static FermionConfig fermi_sea(std::int64_t N);
    void validate(std::int64_t N) const;

    std::int64_t momentum_coord() const;
    // Twice the kinetic coefficient in spacing^2 units, i.e. sum of squares.
    std::int64_t kinetic_coeff2() const;
};

// Ground energy (N - 1/N)(pi*rho)^2 / 6 as an exact spacing^2 multiple;
// equals the Fermi-sea kinetic sum identically.
ExactEnergy ground_state_energy(const Params& p);

// Energy of a single particle-hole excitation of momentum k != 0:
// k^2/2 + k_F |k|.
ExactEnergy particle_hole_energy(const LatticeMomentum& k, const Params& p);

// Umklapp excitation: a particle carried across the Fermi sea. The
// TowardNegative species moves (k_F - q) -> (-k_F - p) and carries momentum
// -2 k_F - (p - q); TowardPositive is its mirror.
enum class UmklappSpecies { TowardNegative, TowardPositive };

struct UmklappMove {
    std::int64_t p_index = 1; // p = spacing * p_index, p_index >= 1
    std::int64_t q_index = 0; // q = spacing * q_index, 0 <= q_index <= N-1
    UmklappSpecies species = UmklappSpecies::TowardNegative;
};

void validate_move(const UmklappMove& m, const Params& p);
ExactEnergy umklapp_energy(const UmklappMove& m, const Params& p);
LatticeMomentum umklapp_momentum(const UmklappMove& m, const Params& p);

// Composite excitation: energies add, momenta add exactly; the boost
// contributes v.P. Pure-umklapp composites are exact eigenvalues; any
// particle-hole content carries the O(1/N) caveat (exact flag cleared).
EigenPoint composite_point(const std::vector<LatticeMomentum>& type1,
                           const std::vector<UmklappMove>& umklapps, const LatticeMomentum& v,
                           const Params& p);

// Cascade of m minimal umklapp moves p_j = spacing*j, q_j = spacing*(j-1);
// an exact eigenvalue with momentum coordinate -m*N.
EigenPoint umklapp_cascade(std::int64_t m, const LatticeMomentum& v, const Params& p);

// Expanded large-box form of the cascade eigenvalue (the two-line display it
// is usually quoted as); differs from the exact sum by spacing^2 * m / 2.
double cascade_energy_asymptotic(std::int64_t m, double v, const Params& p);

// E(m+1) - E(m) for cascades; tends to -2 k_F v with an O(1/L) remainder.
ExactEnergy cascade_gap(std::int64_t m, const LatticeMomentum& v, const Params& p);

struct CascadeMinimum {
    std::int64_t m_star = 0;
    ExactEnergy energy;
    bool window_ok = true; // false when v lies outside (0, 2*pi*rho)
};
CascadeMinimum cascade_minimizer(const LatticeMomentum& v, const Params& p);

// ---- free-fermion enumeration oracle ------------------------------------

// Twice-integer energies keep the oracle allocation-free: energy2 is
// 2*(E_kinetic - E_ground + v.P)/spacing^2, rest2 the unboosted value.
struct RawPoint {
    std::int64_t energy2 = 0;
    std::int64_t rest2 = 0;
    std::int64_t momentum = 0;
};

struct OracleOptions {
    int index_window = 8;
    double energy_cap = 1e300;
    int jobs = 1;
};

// Exhaustive N-subsets of indices in [-W, W], branch-and-bound pruned on the
// boosted-energy cap, in lexicographic order of the occupied-index vectors.
// Partitioning by leading index keeps the order identical for any job count.
std::vector<RawPoint> enumerate_spectrum_raw(const Params& p, const LatticeMomentum& v,
                                             const OracleOptions& opts);

std::vector<EigenPoint> enumerate_spectrum(const Params& p, const LatticeMomentum& v,
                                           const OracleOptions& opts);

// True when (energy, momentum) of `pt` occurs in the raw oracle output
// (exact half-integer comparison; `raw` must be sorted by sort_raw).
void sort_raw(std::vector<RawPoint>& raw);
bool oracle_contains(const std::vector<RawPoint>& sorted_raw, const EigenPoint& pt);

// ---- capped particle-hole family -----------------------------------------

// All composites of r' <= r distinct particle-hole excitations with
// sum eps <= c and |sum k| <= d; umklapp content never enters. A positive
// index_cap additionally limits each |k| to index_cap lattice spacings.
std::vector<EigenPoint> restricted_excitations(const Params& p, const LatticeMomentum& v, double c,
                                               double d, int r, std::int64_t index_cap = 0);

struct CloudOptions {
    double energy_cap = 30.0;
    int window = 8;        // particle-hole / umklapp index range
    int cascade_max = 3;   // cascades m = 1..cascade_max
    int r = 1;             // particle-hole composite depth
    double momentum_cap = 1e300;
};

// Closed-form point cloud: ground, particle-hole composites, single
// umklapps of both species, cascades.
std::vector<EigenPoint> spectrum_cloud(const Params& p, const LatticeMomentum& v,
                                       const CloudOptions& opts);

} // namespace galspec::girardeau
