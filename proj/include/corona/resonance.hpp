#ifndef CORONA_RESONANCE_HPP
#define CORONA_RESONANCE_HPP

#include "corona/greens.hpp"

#include <vector>

namespace corona {

struct ResonanceScanConfig {
    int l = 0;
    double kmin = 0.0;
    double kmax = 0.0;
    int samples = 0;
    double refine_tol = 1e-12;   // absolute tolerance in k
};

/// A located zero k* of the pole discriminant Delta_l(k) = Y_l(ka) T - J_l(ka) F,
/// with the diagnostics tying the three equivalent resonance statements together.
struct ResonanceRoot {
    int l;
    double k_star;
    double e_star;      // hbar^2 k*^2 / (2M)
    double residual;    // |Delta(k*)| / (|Y(ka)T| + |J(ka)F|)
    double beta_gap;    // |beta(k*) - Y_l(k*a)/J_l(k*a)|, relative
    double g_at_root;   // gamma = delta residual of the beta-parametrized forms, relative
};

/// Delta_l(k). Requires k > sqrt(2 M V0)/hbar so the whole cascade stays in
/// the diffusion regime.
double pole_discriminant(int l, double k, const PotentialProfile& profile,
                         double m = 0.5, double hbar = 1.0);

/// Uniform sampling of Delta_l on [kmin, kmax], each sign change refined by
/// bisection to |interval| <= refine_tol. Brackets where |Delta| grows toward
/// the candidate (a pole of Delta, not a zero) are discarded. Deterministic:
/// identical config gives identical output.
std::vector<ResonanceRoot> resonance_scan(const ResonanceScanConfig& config,
                                          const PotentialProfile& profile,
                                          double m = 0.5, double hbar = 1.0);

} // namespace corona

#endif
