#include "galspec/lattice.hpp"

#include <algorithm>

namespace galspec {

std::vector<LatticeMomentum> lattice_momenta(const BoxSpec& box, int max_index) {
    if (max_index < 0) throw std::invalid_argument("lattice_momenta: max_index must be >= 0");
    std::vector<LatticeMomentum> out;
    const std::int64_t w = max_index;
    if (box.dim == 1) {
        out.reserve(static_cast<std::size_t>(2 * w + 1));
        for (std::int64_t c = -w; c <= w; ++c)
            out.emplace_back(std::array<std::int64_t, 3>{c, 0, 0}, box);
    } else {
        out.reserve(static_cast<std::size_t>((2 * w + 1) * (2 * w + 1) * (2 * w + 1)));
        for (std::int64_t a = -w; a <= w; ++a)
            for (std::int64_t b = -w; b <= w; ++b)
                for (std::int64_t c = -w; c <= w; ++c)
                    out.emplace_back(std::array<std::int64_t, 3>{a, b, c}, box);
    }
    return out;
}

namespace {

// Nearest integer with half-way ties resolved toward the smaller value, so the
// snapped point has lexicographically smallest coordinates among minimizers.
std::int64_t nearest_tie_down(double r) {
    double lo = std::floor(r);
    double hi = lo + 1.0;
    return (r - lo <= hi - r) ? static_cast<std::int64_t>(lo) : static_cast<std::int64_t>(hi);
}

} // namespace

LatticeVelocity snap_velocity(const std::array<double, 3>& v_lim, const BoxSpec& box) {
    for (int i = 0; i < box.dim; ++i)
        if (!std::isfinite(v_lim[i]))
            throw std::invalid_argument("snap_velocity: target velocity must be finite");
    LatticeVelocity v;
    v.target = v_lim;
    std::array<std::int64_t, 3> c{0, 0, 0};
    const double spacing = box.spacing();
    for (int i = 0; i < box.dim; ++i) c[i] = nearest_tie_down(v_lim[i] / spacing);
    v.snapped = LatticeMomentum(c, box);
    return v;
}

LatticeVelocity snap_velocity(double v_lim, const BoxSpec& box) {
    return snap_velocity(std::array<double, 3>{v_lim, 0.0, 0.0}, box);
}

std::int64_t DensitySpec::particle_count(const BoxSpec& box) const {
    const double x = rho * box.volume();
    if (x < 0.5) throw std::domain_error("DensitySpec: rho * side^d below one particle");
    std::int64_t N = 0;
    if (parity == Parity::None) {
        N = nearest_tie_down(x);
        if (N < 1) N = 1;
    } else {
        // Nearest odd integer, ties toward the smaller candidate.
        std::int64_t lo = static_cast<std::int64_t>(std::floor(x));
        if ((lo % 2) == 0) lo -= 1; // largest odd <= floor(x), may equal floor(x)-1
        std::int64_t hi = lo + 2;
        N = (x - static_cast<double>(lo) <= static_cast<double>(hi) - x) ? lo : hi;
        if (N < 1) N = 1;
    }
    return N;
}

std::vector<SequencePoint> thermo_sequence(double L_base, int n_max, const DensitySpec& density,
                                           int dim) {
    if (n_max < 1) throw std::invalid_argument("thermo_sequence: n_max must be >= 1");
    std::vector<int> idx(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) idx[static_cast<std::size_t>(n - 1)] = n;
    return thermo_sequence_for(L_base, idx, density, dim);
}

std::vector<SequencePoint> thermo_sequence_for(double L_base, const std::vector<int>& indices,
                                               const DensitySpec& density, int dim) {
    if (indices.empty()) throw std::invalid_argument("thermo_sequence: empty index set");
    std::vector<SequencePoint> seq;
    seq.reserve(indices.size());
    int prev = 0;
    for (int n : indices) {
        if (n <= prev) throw std::invalid_argument("thermo_sequence: indices must increase");
        prev = n;
        BoxSpec box(L_base, n, dim);
        if (density.rho * box.volume() < 1.0)
            throw std::domain_error("thermo_sequence: smallest box holds less than one particle");
        seq.push_back({box, density.particle_count(box)});
    }
    return seq;
}

} // namespace galspec
