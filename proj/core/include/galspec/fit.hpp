#pragma once

#include <vector>

namespace galspec {

// Least-squares fit of y = eps + c / x.
struct LinearFit {
    double eps = 0.0;
    double c = 0.0;
    double rms = 0.0;
};
LinearFit fit_offset_inverse(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares fit of y = eps + c * x^(-q); q scanned then refined by a
// fixed ternary-search schedule so results are run-to-run identical.
struct PowerFit {
    double eps = 0.0;
    double c = 0.0;
    double q = 0.0;
    double rms = 0.0;
    bool constant = false; // data flat to machine precision; q unconstrained
};
PowerFit fit_offset_power(const std::vector<double>& x, const std::vector<double>& y);

} // namespace galspec
