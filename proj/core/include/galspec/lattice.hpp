#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace galspec {

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

// Periodic box of the thermodynamic sequence: side = 2 * n_index * base_length.
// Dimensions 1 and 3 are supported (1-d hard-core model, 3-d occupation model).
struct BoxSpec {
    double base_length = 1.0;
    int n_index = 1;
    int dim = 1;

    BoxSpec() = default;
    BoxSpec(double L_base, int n, int d) : base_length(L_base), n_index(n), dim(d) {
        if (!(L_base > 0.0)) throw std::invalid_argument("BoxSpec: base length must be positive");
        if (n < 1) throw std::invalid_argument("BoxSpec: n_index must be >= 1");
        if (d != 1 && d != 3) throw std::invalid_argument("BoxSpec: dimension must be 1 or 3");
    }

    static BoxSpec from_side(double side, int d) {
        if (!(side > 0.0)) throw std::invalid_argument("BoxSpec: side must be positive");
        return BoxSpec(side / 2.0, 1, d);
    }

    double side() const { return 2.0 * n_index * base_length; }
    double spacing() const { return two_pi / side(); }
    double volume() const {
        double s = side();
        return dim == 1 ? s : s * s * s;
    }

    friend bool operator==(const BoxSpec& a, const BoxSpec& b) {
        return a.side() == b.side() && a.dim == b.dim;
    }
};

// A dual-lattice point 2*pi*coords/side, kept as exact integer coordinates so
// sums, comparisons and multiset identities never touch floating point.
struct LatticeMomentum {
    std::array<std::int64_t, 3> coords{0, 0, 0};
    int dim = 1;
    double box_side = 0.0;

    LatticeMomentum() = default;
    LatticeMomentum(std::int64_t c, const BoxSpec& box) : dim(box.dim), box_side(box.side()) {
        if (box.dim != 1) throw std::invalid_argument("LatticeMomentum: scalar constructor is 1-d");
        coords[0] = c;
    }
    LatticeMomentum(const std::array<std::int64_t, 3>& c, const BoxSpec& box)
        : coords(c), dim(box.dim), box_side(box.side()) {}

    double spacing() const { return two_pi / box_side; }
    double value(int i) const { return spacing() * static_cast<double>(coords[i]); }
    // 1-d convenience accessor.
    double value() const { return value(0); }

    std::int64_t norm_sq_int() const {
        std::int64_t s = 0;
        for (int i = 0; i < dim; ++i) s += coords[i] * coords[i];
        return s;
    }
    double norm() const {
        if (dim == 1) return std::abs(value(0));
        return spacing() * std::sqrt(static_cast<double>(norm_sq_int()));
    }
    bool is_zero() const { return norm_sq_int() == 0; }

    friend bool operator==(const LatticeMomentum& a, const LatticeMomentum& b) {
        return a.dim == b.dim && a.box_side == b.box_side && a.coords == b.coords;
    }
    friend bool operator!=(const LatticeMomentum& a, const LatticeMomentum& b) { return !(a == b); }

    // Lexicographic order on coordinates; total within one box.
    friend bool lex_less(const LatticeMomentum& a, const LatticeMomentum& b) {
        return a.coords < b.coords;
    }

    friend LatticeMomentum operator+(const LatticeMomentum& a, const LatticeMomentum& b) {
        if (a.dim != b.dim || a.box_side != b.box_side)
            throw std::invalid_argument("LatticeMomentum: sum requires a common box");
        LatticeMomentum r = a;
        for (int i = 0; i < a.dim; ++i) r.coords[i] += b.coords[i];
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < dim; ++i) {
            if (i) s += ",";
            s += std::to_string(coords[i]);
        }
        return s + "]";
    }
};

// Velocity snapped to the dual lattice together with its requested value.
struct LatticeVelocity {
    std::array<double, 3> target{0.0, 0.0, 0.0};
    LatticeMomentum snapped;

    double max_error() const {
        double e = 0.0;
        for (int i = 0; i < snapped.dim; ++i)
            e = std::max(e, std::abs(snapped.value(i) - target[i]));
        return e;
    }
};

// All lattice points with |coords_i| <= max_index, lexicographic on coords.
std::vector<LatticeMomentum> lattice_momenta(const BoxSpec& box, int max_index);

// Nearest lattice point to v_lim; equidistant candidates resolve to the
// lexicographically smallest coordinates.
LatticeVelocity snap_velocity(const std::array<double, 3>& v_lim, const BoxSpec& box);
LatticeVelocity snap_velocity(double v_lim, const BoxSpec& box);

enum class Parity { None, Odd };

// Particle number prescription N(box) = nearest integer to rho * side^dim,
// with odd parity (when requested) restored by choosing the nearest odd
// integer, ties toward the smaller one.
struct DensitySpec {
    double rho = 1.0;
    Parity parity = Parity::None;

    DensitySpec() = default;
    DensitySpec(double r, Parity p = Parity::None) : rho(r), parity(p) {
        if (!(r > 0.0)) throw std::invalid_argument("DensitySpec: rho must be positive");
    }

    std::int64_t particle_count(const BoxSpec& box) const;
};

struct SequencePoint {
    BoxSpec box;
    std::int64_t N = 0;
};

// Boxes of sides 2*n*L_base for n = 1..n_max with N per the density spec.
std::vector<SequencePoint> thermo_sequence(double L_base, int n_max, const DensitySpec& density,
                                           int dim);
// Same, along an explicit subset of indices (the sequence may be thinned).
std::vector<SequencePoint> thermo_sequence_for(double L_base, const std::vector<int>& indices,
                                               const DensitySpec& density, int dim);

} // namespace galspec
