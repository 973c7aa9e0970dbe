#pragma once

#include "galspec/rational.hpp"

#include <string>

namespace galspec {

// Physical units of the two exact-energy channels:
//   kin carries multiples of spacing^2 = (2*pi/L)^2 (kinetic and boost terms),
//   pot carries multiples of a_tilde / volume (occupation-model interaction).
struct EnergyUnits {
    double kin_unit = 0.0;
    double pot_unit = 0.0;
};

// Exact eigenvalue: value = kin * kin_unit + pot * pot_unit. The two channels
// are incommensurable, so exact equality is component-wise.
struct ExactEnergy {
    Rational kin;
    Rational pot;

    ExactEnergy() = default;
    ExactEnergy(Rational k, Rational p = Rational()) : kin(k), pot(p) {}

    double value(const EnergyUnits& u) const {
        return kin.to_double() * u.kin_unit + pot.to_double() * u.pot_unit;
    }

    bool is_zero() const { return kin.is_zero() && pot.is_zero(); }

    friend ExactEnergy operator+(const ExactEnergy& a, const ExactEnergy& b) {
        return {a.kin + b.kin, a.pot + b.pot};
    }
    friend ExactEnergy operator-(const ExactEnergy& a, const ExactEnergy& b) {
        return {a.kin - b.kin, a.pot - b.pot};
    }
    friend ExactEnergy operator-(const ExactEnergy& a) { return {-a.kin, -a.pot}; }

    friend bool operator==(const ExactEnergy& a, const ExactEnergy& b) {
        return a.kin == b.kin && a.pot == b.pot;
    }
    friend bool operator!=(const ExactEnergy& a, const ExactEnergy& b) { return !(a == b); }

    // Component-order, used only for deterministic sorting of exact multisets.
    friend bool operator<(const ExactEnergy& a, const ExactEnergy& b) {
        if (a.kin != b.kin) return a.kin < b.kin;
        return a.pot < b.pot;
    }

    // Definite sign ignoring units: -1/0/+1 when both channels agree, +2 when mixed.
    int definite_sign() const {
        int sk = kin.sign(), sp = pot.sign();
        if (sk == 0 && sp == 0) return 0;
        if (sk >= 0 && sp >= 0) return 1;
        if (sk <= 0 && sp <= 0) return -1;
        return 2;
    }

    std::string str() const { return kin.str() + ";" + pot.str(); }
};

} // namespace galspec
