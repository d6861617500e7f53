#include "corona/resonance.hpp"
#include "corona/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace corona {

namespace {

double barrier_k(const PotentialProfile& profile, double m, double hbar)
{
    return std::sqrt(2.0 * m * profile.v0) / hbar;
}

double mu_of_k(double k, const PotentialProfile& profile, double m, double hbar)
{
    const double kv = barrier_k(profile, m, hbar);
    return std::sqrt(k * k - kv * kv);
}

struct DeltaEval {
    double value;
    double scale;   // |Y(ka)T| + |J(ka)F|
};

DeltaEval delta_at(int l, double k, const PotentialProfile& profile,
                   double m, double hbar)
{
    const double mu = mu_of_k(k, profile, m, hbar);
    const detail::FtParts p = detail::ft_parts(l, k, mu, profile.a, profile.b);
    const BesselEval ka = bessel_pair(l, k * profile.a);
    DeltaEval d;
    d.value = ka.y * p.t - ka.j * p.f;
    d.scale = std::fabs(ka.y * p.t) + std::fabs(ka.j * p.f);
    return d;
}

// Residual of the beta-parametrized gamma = delta statement of the resonance
// condition, evaluated at beta = F/T. Both parametrized coefficients collapse
// to Y_l(mu a)/J_l(mu a) when beta = Y_l(ka)/J_l(ka), so this vanishes at a
// genuine root regardless of how the full cascade behaves there.
double gamma_delta_residual(int l, double k, const PotentialProfile& profile,
                            double m, double hbar)
{
    const double mu = mu_of_k(k, profile, m, hbar);
    const double a = profile.a;
    const detail::FtParts p = detail::ft_parts(l, k, mu, a, profile.b);
    const double beta = p.f / p.t;
    const BesselEval ka = bessel_pair(l, k * a);
    const BesselEval ma = bessel_pair(l, mu * a);

    const double yb  = ka.y  - beta * ka.j;
    const double ybp = ka.yp - beta * ka.jp;
    const double ub = k * ma.j * ybp - mu * ma.jp * yb;
    const double vb = k * ma.y * ybp - mu * ma.yp * yb;
    const double gam = vb / ub;
    const double del = (2.0 * ma.y + M_PI * a * ka.j * vb)
                     / (2.0 * ma.j + M_PI * a * ka.j * ub);
    const double scale = std::fabs(gam) + std::fabs(del);
    if (!(scale > 0.0)) return 0.0;
    return std::fabs(gam - del) / scale;
}

} // namespace

double pole_discriminant(int l, double k, const PotentialProfile& profile,
                         double m, double hbar)
{
    validate_profile(profile);
    if (!(k > barrier_k(profile, m, hbar))) {
        std::ostringstream os;
        os << "k = " << k << " must exceed sqrt(2MV0)/hbar = "
           << barrier_k(profile, m, hbar);
        throw NotDiffusionRegime(os.str());
    }
    return delta_at(l, k, profile, m, hbar).value;
}

std::vector<ResonanceRoot> resonance_scan(const ResonanceScanConfig& config,
                                          const PotentialProfile& profile,
                                          double m, double hbar)
{
    validate_profile(profile);
    if (config.samples < 2)
        throw InvalidInput("resonance_scan: samples must be >= 2");
    if (!(config.refine_tol > 0.0))
        throw InvalidInput("resonance_scan: refine_tol must be positive");
    if (!(config.kmax > config.kmin))
        throw DegenerateRange("resonance_scan: kmax must exceed kmin");
    const double kv = barrier_k(profile, m, hbar);
    if (!(config.kmin > kv)) {
        std::ostringstream os;
        os << "resonance_scan: kmin = " << config.kmin
           << " must exceed sqrt(2MV0)/hbar = " << kv;
        throw NotDiffusionRegime(os.str());
    }

    const int l = config.l;
    const int n = config.samples;
    const double h = (config.kmax - config.kmin) / (n - 1);

    std::vector<ResonanceRoot> roots;
    double k_prev = config.kmin;
    double d_prev = delta_at(l, k_prev, profile, m, hbar).value;

    for (int i = 1; i < n; ++i) {
        const double k_cur = config.kmin + i * h;
        const double d_cur = delta_at(l, k_cur, profile, m, hbar).value;
        if (std::isfinite(d_prev) && std::isfinite(d_cur) &&
            d_prev != 0.0 && std::signbit(d_prev) != std::signbit(d_cur)) {
            // Bisect the bracket.
            double lo = k_prev, hi = k_cur, dlo = d_prev;
            while (hi - lo > config.refine_tol) {
                const double mid = 0.5 * (lo + hi);
                if (!(mid > lo && mid < hi)) break;   // hit double resolution
                const double dm = delta_at(l, mid, profile, m, hbar).value;
                if (dm == 0.0) { lo = hi = mid; break; }
                if (std::signbit(dm) == std::signbit(dlo)) { lo = mid; dlo = dm; }
                else hi = mid;
            }
            const double ks = 0.5 * (lo + hi);
            const DeltaEval ds = delta_at(l, ks, profile, m, hbar);

            // A sign flip across a pole of Delta leaves |Delta| large at the
            // refined point; a zero drives it far below the bracket endpoints.
            const double end_scale = std::min(std::fabs(d_prev), std::fabs(d_cur));
            const bool is_zero = std::fabs(ds.value) <= 1e-3 * end_scale ||
                                 std::fabs(ds.value) <= 1e-9 * ds.scale;
            if (is_zero) {
                ResonanceRoot root;
                root.l = l;
                root.k_star = ks;
                root.e_star = hbar * hbar * ks * ks / (2.0 * m);
                root.residual = ds.scale > 0.0 ? std::fabs(ds.value) / ds.scale
                                               : std::fabs(ds.value);

                const double mu = mu_of_k(ks, profile, m, hbar);
                const detail::FtParts p = detail::ft_parts(l, ks, mu, profile.a, profile.b);
                const BesselEval ka = bessel_pair(l, ks * profile.a);
                const double beta = p.f / p.t;
                const double ratio = ka.y / ka.j;
                const double bscale = std::max(std::fabs(beta), std::fabs(ratio));
                root.beta_gap = bscale > 0.0 ? std::fabs(beta - ratio) / bscale : 0.0;
                root.g_at_root = gamma_delta_residual(l, ks, profile, m, hbar);
                roots.push_back(root);
            }
        }
        k_prev = k_cur;
        d_prev = d_cur;
    }
    return roots;   // ascending by construction of the sweep
}

} // namespace corona
