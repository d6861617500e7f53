#ifndef CORONA_GREENS_HPP
#define CORONA_GREENS_HPP

#include "corona/bessel.hpp"

namespace corona {

/// Annular barrier: V = v0 on b <= r <= a, zero elsewhere.
struct PotentialProfile {
    double b;    // inner radius
    double a;    // outer radius
    double v0;   // barrier height
};

/// Throws InvalidInput unless 0 < b < a and v0 > 0.
void validate_profile(const PotentialProfile& p);

/// Energy plus the two wavenumbers: k^2 = 2ME/hbar^2 outside the barrier,
/// mu^2 = 2M(E - V0)/hbar^2 inside. Only the diffusion regime E > V0 is
/// supported. Defaults follow reduced units 2M = hbar = 1.
struct EnergyContext {
    double e;
    double m;
    double hbar;
    double k;
    double mu;
};

EnergyContext wavenumbers(double e, const PotentialProfile& profile,
                          double m = 0.5, double hbar = 1.0);

enum class RegionLabel { Inner, Mid, Outer };

/// Inner: r < b, Mid: b <= r <= a (boundaries owned by Mid), Outer: r > a.
RegionLabel classify_region(double r, const PotentialProfile& profile);

const char* region_name(RegionLabel region);

/// The full coefficient cascade for one (l, k, mu, a, b), in dependency order
/// F1,F2,T1,T2 -> F,T -> beta -> U,V -> gamma -> delta -> g -> psi -> alpha.
struct CoefficientSet {
    int l;
    double alpha, beta, gamma, delta, g;
    double u, v, f, t;
    double f1, f2, t1, t2;
    double psi;
};

/// Throws NearPole (with the degenerated quantity's name) when a cascade
/// denominator falls below the relative degeneracy threshold, and
/// InternalConsistency if the two independent routes to delta disagree.
CoefficientSet coefficient_set(int l, const EnergyContext& ctx,
                               const PotentialProfile& profile);

struct RadialGreenValue {
    int l;
    double r, rp;
    RegionLabel region;
    double value;
};

/// Radial Green function G(l; r, r') for same-region (r, r') pairs.
/// Cross-region pairs raise CrossRegionUnsupported.
RadialGreenValue green_radial(int l, double r, double rp,
                              const EnergyContext& ctx,
                              const PotentialProfile& profile);

/// Which side of the source radius r' an observation point sits on.
/// Needed to evaluate the two-branch block displays exactly at r = r'.
enum class Branch { Lower, Upper };

/// Value of one regional block as a function of r with the source at rp,
/// using the requested branch. r and rp must both lie in `block`.
double green_block_value(const CoefficientSet& cs, const EnergyContext& ctx,
                         RegionLabel block, double r, double rp, Branch branch);

/// d/dr of the same branch.
double green_block_deriv(const CoefficientSet& cs, const EnergyContext& ctx,
                         RegionLabel block, double r, double rp, Branch branch);

/// Angular partial-wave sum G(0) + 2 sum_{l>=1} G(l) cos(l (theta - theta')).
/// lmax < 0 selects auto truncation: stop once three consecutive terms are
/// each <= 1e-10 * |partial sum|; NoConvergence past l = 200.
double green_polar_sum(double r, double theta, double rp, double thetap,
                       const EnergyContext& ctx, const PotentialProfile& profile,
                       int lmax = -1);

/// lmax actually used by the last green_polar_sum-style evaluation is often
/// wanted by callers; this variant reports it.
double green_polar_sum(double r, double theta, double rp, double thetap,
                       const EnergyContext& ctx, const PotentialProfile& profile,
                       int lmax, int* lmax_used);

namespace detail {

/// The barrier cross-products (F1, F2, T1, T2) and the beta = F/T pair,
/// shared with the resonance scan (which must not pay for the full cascade).
struct FtParts {
    double f1, f2, t1, t2;
    double f, t;
    double t_scale;   // sum of |terms| of t, for degeneracy detection
};

FtParts ft_parts(int l, double k, double mu, double a, double b);

} // namespace detail

} // namespace corona

#endif
