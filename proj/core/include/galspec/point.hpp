#pragma once

#include "galspec/energy.hpp"
#include "galspec/lattice.hpp"

#include <string>
#include <vector>

namespace galspec {

// One energy-momentum point of a boosted spectrum. `energy` is the eigenvalue
// of the boosted generator (relative to the ground energy), `energy_rest` the
// same excitation without the boost term; both are kept exactly alongside the
// evaluated doubles. `exact` is cleared for values that carry an O(1/N)
// caveat; `has_exact` is cleared for formula-level points whose rational
// representation is not available (e.g. real-valued occupation scans).
struct EigenPoint {
    ExactEnergy energy;
    ExactEnergy energy_rest;
    double energy_value = 0.0;
    double energy_rest_value = 0.0;
    LatticeMomentum momentum;
    double momentum_value = 0.0;
    std::string label;
    bool exact = true;
    bool has_exact = true;

    double momentum_norm() const { return has_exact ? momentum.norm() : std::abs(momentum_value); }
};

inline EigenPoint make_point(const ExactEnergy& boosted, const ExactEnergy& rest,
                             const LatticeMomentum& p, const EnergyUnits& units,
                             std::string label, bool exact) {
    EigenPoint pt;
    pt.energy = boosted;
    pt.energy_rest = rest;
    pt.energy_value = boosted.value(units);
    pt.energy_rest_value = rest.value(units);
    pt.momentum = p;
    pt.momentum_value = p.dim == 1 ? p.value() : p.norm();
    pt.label = std::move(label);
    pt.exact = exact;
    pt.has_exact = true;
    return pt;
}

} // namespace galspec
