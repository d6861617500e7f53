#ifndef CORONA_BESSEL_HPP
#define CORONA_BESSEL_HPP

namespace corona {

/// One evaluation of the cylinder pair (J_l, Y_l) at x, with derivatives.
/// Derivatives come from the two-term recurrence f_l' = (f_{l-1} - f_{l+1})/2,
/// never from finite differences. Negative orders reduce to positive ones via
/// f_{-l}(x) = (-1)^l f_l(x).
struct BesselEval {
    int order;
    double x;
    double j;    // J_l(x)
    double y;    // Y_l(x)
    double jp;   // J_l'(x)
    double yp;   // Y_l'(x)
};

inline constexpr int    kBesselMaxOrder    = 200;
inline constexpr double kBesselMaxArgument = 1e6;

/// Evaluate J_l, Y_l and their derivatives at x > 0, |l| <= 200, x <= 1e6.
/// Relative accuracy ~1e-10 or better over the supported domain; the pair
/// satisfies the Wronskian J_l Y_l' - J_l' Y_l = 2/(pi x) to 1e-9 relative.
BesselEval bessel_pair(int l, double x);

/// Convenience accessors (same contract as bessel_pair).
double bessel_j(int l, double x);
double bessel_y(int l, double x);

} // namespace corona

#endif
