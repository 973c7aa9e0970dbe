#include "galspec/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace galspec {

namespace {

struct Lsq {
    double eps = 0.0;
    double c = 0.0;
    double ss = 0.0;
};

// Ordinary least squares on the basis (1, b_i).
Lsq lsq_on_basis(const std::vector<double>& b, const std::vector<double>& y) {
    const std::size_t n = b.size();
    double sb = 0, sbb = 0, sy = 0, sby = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sb += b[i];
        sbb += b[i] * b[i];
        sy += y[i];
        sby += b[i] * y[i];
    }
    const double nd = static_cast<double>(n);
    const double det = nd * sbb - sb * sb;
    Lsq r;
    if (det == 0.0) {
        r.eps = sy / nd;
        r.c = 0.0;
    } else {
        r.c = (nd * sby - sb * sy) / det;
        r.eps = (sy - r.c * sb) / nd;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - r.eps - r.c * b[i];
        r.ss += d * d;
    }
    return r;
}

} // namespace

LinearFit fit_offset_inverse(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_offset_inverse: need >= 2 samples");
    std::vector<double> b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) b[i] = 1.0 / x[i];
    Lsq r = lsq_on_basis(b, y);
    return {r.eps, r.c, std::sqrt(r.ss / static_cast<double>(x.size()))};
}

PowerFit fit_offset_power(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_offset_power: need >= 3 samples");

    PowerFit out;
    double ymin = y[0], ymax = y[0], yabs = 0.0;
    for (double v : y) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
        yabs = std::max(yabs, std::abs(v));
    }
    if (ymax - ymin <= 1e-13 * std::max(1.0, yabs)) {
        double mean = 0.0;
        for (double v : y) mean += v;
        out.eps = mean / static_cast<double>(y.size());
        out.constant = true;
        out.q = 0.0;
        out.c = 0.0;
        out.rms = 0.0;
        return out;
    }

    auto ss_at = [&](double q) {
        std::vector<double> b(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) b[i] = std::pow(x[i], -q);
        return lsq_on_basis(b, y);
    };

    // Coarse scan then fixed-iteration ternary refinement.
    double best_q = 0.2;
    double best_ss = std::numeric_limits<double>::infinity();
    for (double q = 0.2; q <= 3.0 + 1e-12; q += 0.05) {
        const double ss = ss_at(q).ss;
        if (ss < best_ss) {
            best_ss = ss;
            best_q = q;
        }
    }
    double lo = std::max(0.05, best_q - 0.05);
    double hi = std::min(3.5, best_q + 0.05);
    for (int it = 0; it < 80; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (ss_at(m1).ss <= ss_at(m2).ss)
            hi = m2;
        else
            lo = m1;
    }
    const double q = (lo + hi) / 2.0;
    Lsq r = ss_at(q);
    out.eps = r.eps;
    out.c = r.c;
    out.q = q;
    out.rms = std::sqrt(r.ss / static_cast<double>(x.size()));
    return out;
}

} // namespace galspec
