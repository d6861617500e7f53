#include "corona/greens.hpp"
#include "corona/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace corona {

namespace {

constexpr double kDegeneracyRel = 1e-12;   // |q| < eps * (sum of |terms|) => near-pole
constexpr int    kAutoLmaxCap   = 200;

void require_degenerate_ok(double q, double scale, const char* name)
{
    if (std::fabs(q) < kDegeneracyRel * scale) {
        std::ostringstream os;
        os << "degenerate denominator " << name << " = " << q
           << " (scale " << scale << ")";
        throw NearPole(name, os.str());
    }
}

} // namespace

void validate_profile(const PotentialProfile& p)
{
    if (!(p.b > 0.0 && p.a > p.b))
        throw InvalidInput("potential profile requires 0 < b < a");
    if (!(p.v0 > 0.0))
        throw InvalidInput("potential profile requires v0 > 0");
}

EnergyContext wavenumbers(double e, const PotentialProfile& profile,
                          double m, double hbar)
{
    validate_profile(profile);
    if (!(m > 0.0) || !(hbar > 0.0))
        throw InvalidInput("mass and hbar must be positive");
    if (!(e > profile.v0)) {
        std::ostringstream os;
        os << "E = " << e << " <= V0 = " << profile.v0
           << ": only the diffusion regime E > V0 is supported";
        throw NotDiffusionRegime(os.str());
    }
    EnergyContext ctx;
    ctx.e = e;
    ctx.m = m;
    ctx.hbar = hbar;
    ctx.k = std::sqrt(2.0 * m * e) / hbar;
    ctx.mu = std::sqrt(2.0 * m * (e - profile.v0)) / hbar;
    return ctx;
}

RegionLabel classify_region(double r, const PotentialProfile& profile)
{
    validate_profile(profile);
    if (!(r > 0.0))
        throw NonPositiveRadius("radius must be positive, got r=" + std::to_string(r));
    if (r < profile.b) return RegionLabel::Inner;
    if (r <= profile.a) return RegionLabel::Mid;
    return RegionLabel::Outer;
}

const char* region_name(RegionLabel region)
{
    switch (region) {
        case RegionLabel::Inner: return "inner";
        case RegionLabel::Mid:   return "mid";
        case RegionLabel::Outer: return "outer";
    }
    return "?";
}

namespace detail {

FtParts ft_parts(int l, double k, double mu, double a, double b)
{
    const BesselEval ma = bessel_pair(l, mu * a);
    const BesselEval mb = bessel_pair(l, mu * b);
    const BesselEval kb = bessel_pair(l, k * b);
    const BesselEval ka = bessel_pair(l, k * a);

    FtParts p;
    p.f1 = ma.j * mb.yp - ma.y * mb.jp;
    p.f2 = mb.j * ma.yp - mb.y * ma.jp;
    p.t1 = ma.j * mb.y - ma.y * mb.j;
    p.t2 = mb.jp * ma.yp - mb.yp * ma.jp;

    const double fa =  mu * kb.j  * (k * ka.yp * p.f1 + mu * ka.y * p.t2);
    const double fb = -k  * kb.jp * (k * ka.yp * p.t1 + mu * ka.y * p.f2);
    p.f = fa + fb;

    const double ta =  mu * kb.j  * (k * ka.jp * p.f1 + mu * ka.j * p.t2);
    const double tb = -k  * kb.jp * (k * ka.jp * p.t1 + mu * ka.j * p.f2);
    p.t = ta + tb;
    p.t_scale = std::fabs(ta) + std::fabs(tb);
    return p;
}

} // namespace detail

CoefficientSet coefficient_set(int l, const EnergyContext& ctx,
                               const PotentialProfile& profile)
{
    validate_profile(profile);
    if (l > kBesselMaxOrder || l < -kBesselMaxOrder)
        throw OrderOutOfRange("coefficient_set: |l| must be <= 200, got l=" + std::to_string(l));
    {
        // The context must actually belong to this profile.
        const double k2 = 2.0 * ctx.m * ctx.e / (ctx.hbar * ctx.hbar);
        const double m2 = 2.0 * ctx.m * (ctx.e - profile.v0) / (ctx.hbar * ctx.hbar);
        if (!(ctx.k > 0.0) || !(ctx.mu > 0.0) ||
            std::fabs(ctx.k * ctx.k - k2) > 1e-12 * k2 ||
            std::fabs(ctx.mu * ctx.mu - m2) > 1e-12 * k2)
            throw InvalidInput("EnergyContext is inconsistent with the potential profile");
    }

    const double k  = ctx.k;
    const double mu = ctx.mu;
    const double a  = profile.a;
    const double b  = profile.b;

    const BesselEval ka = bessel_pair(l, k * a);
    const BesselEval kb = bessel_pair(l, k * b);
    const BesselEval ma = bessel_pair(l, mu * a);
    const BesselEval mb = bessel_pair(l, mu * b);

    CoefficientSet cs;
    cs.l = l;

    const detail::FtParts p = detail::ft_parts(l, k, mu, a, b);
    cs.f1 = p.f1; cs.f2 = p.f2; cs.t1 = p.t1; cs.t2 = p.t2;
    cs.f = p.f;
    cs.t = p.t;
    require_degenerate_ok(cs.t, p.t_scale, "T");
    cs.beta = cs.f / cs.t;

    cs.u = k * ma.j * ka.jp - mu * ma.jp * ka.j;
    cs.v = k * ma.y * ka.jp - mu * ma.yp * ka.j;
    require_degenerate_ok(cs.u, std::fabs(k * ma.j * ka.jp) + std::fabs(mu * ma.jp * ka.j), "U");
    cs.gamma = cs.v / cs.u;

    // delta, primary route: match of the regular solution across r = b.
    const double dn1 = mu * kb.j * mb.jp;
    const double dn2 = k * kb.jp * mb.j;
    const double dnum = mu * kb.j * mb.yp - k * kb.jp * mb.y;
    const double dden = dn1 - dn2;
    require_degenerate_ok(dden, std::fabs(dn1) + std::fabs(dn2), "delta-denominator");
    cs.delta = dnum / dden;

    // delta, second route: the beta-bearing U,V pair continued across r = a,
    // with the (Y - beta J)(ka) brackets reduced through the Bessel Wronskian
    // (the raw brackets cancel catastrophically at large l). The two routes
    // are algebraically equal; a mismatch means the cascade itself is broken,
    // not the input, so it is compared in cross-product form.
    {
        const double w1 = -k * (mu * kb.j * p.f1 - k * kb.jp * p.t1);
        const double w2 = mu * (mu * kb.j * p.t2 - k * kb.jp * p.f2);
        const double ub = k * ma.j * w2 - mu * ma.jp * w1;
        const double vb = k * ma.y * w2 - mu * ma.yp * w1;
        const double p1 = dnum * ub;
        const double p2 = vb * dden;
        // Rounding floor: ub/vb can cancel deeply when delta is huge, so the
        // 1e-9 agreement contract only applies above the noise these
        // subtractions inject into the cross products.
        const double noise = 64.0 * 2.2e-16 *
            (std::fabs(dnum) * (std::fabs(k * ma.j * w2) + std::fabs(mu * ma.jp * w1)) +
             std::fabs(dden) * (std::fabs(k * ma.y * w2) + std::fabs(mu * ma.yp * w1)));
        if (std::fabs(p1 - p2) > 1e-9 * (std::fabs(p1) + std::fabs(p2) + 1e-300) + noise) {
            std::ostringstream os;
            os << "the two delta routes disagree: " << cs.delta << " vs "
               << vb / ub << " (l=" << l << ", k=" << k << ")";
            throw InternalConsistency(os.str());
        }
    }

    cs.g = cs.gamma - cs.delta;
    require_degenerate_ok(cs.g, std::fabs(cs.gamma) + std::fabs(cs.delta), "g");

    // Scale by |x J'|: near a zero x0 of J_l, J ~ (x - x0) J', so this flags
    // relative proximity to the zero without tripping on the (benign) uniform
    // smallness of J_l at large order.
    require_degenerate_ok(kb.j, std::fabs(k * b * kb.jp), "J_l(kb)");
    require_degenerate_ok(ka.j, std::fabs(k * a * ka.jp), "J_l(ka)");

    cs.psi = -(mb.y - cs.gamma * mb.j) * (mb.y - cs.delta * mb.j)
             / (cs.g * kb.j * kb.j);
    cs.alpha = kb.y / kb.j + cs.psi;
    return cs;
}

double green_block_value(const CoefficientSet& cs, const EnergyContext& ctx,
                         RegionLabel block, double r, double rp, Branch branch)
{
    const int l = cs.l;
    const double k = ctx.k, mu = ctx.mu;
    const double s = branch == Branch::Lower ? r : rp;   // smaller-radius slot
    const double t = branch == Branch::Lower ? rp : r;   // larger-radius slot
    switch (block) {
        case RegionLabel::Inner: {
            const BesselEval lo = bessel_pair(l, k * s);
            const BesselEval hi = bessel_pair(l, k * t);
            return (hi.y - cs.alpha * hi.j) * lo.j;
        }
        case RegionLabel::Mid: {
            const BesselEval lo = bessel_pair(l, mu * s);
            const BesselEval hi = bessel_pair(l, mu * t);
            return (hi.y - cs.gamma * hi.j) * (lo.y - cs.delta * lo.j) / cs.g;
        }
        case RegionLabel::Outer: {
            const BesselEval lo = bessel_pair(l, k * s);
            const BesselEval hi = bessel_pair(l, k * t);
            return -(lo.y - cs.beta * lo.j) * hi.j;
        }
    }
    return 0.0;
}

double green_block_deriv(const CoefficientSet& cs, const EnergyContext& ctx,
                         RegionLabel block, double r, double rp, Branch branch)
{
    const int l = cs.l;
    const double k = ctx.k, mu = ctx.mu;
    switch (block) {
        case RegionLabel::Inner: {
            const BesselEval er = bessel_pair(l, k * r);
            const BesselEval ep = bessel_pair(l, k * rp);
            if (branch == Branch::Lower)
                return k * er.jp * (ep.y - cs.alpha * ep.j);
            return k * (er.yp - cs.alpha * er.jp) * ep.j;
        }
        case RegionLabel::Mid: {
            const BesselEval er = bessel_pair(l, mu * r);
            const BesselEval ep = bessel_pair(l, mu * rp);
            if (branch == Branch::Lower)
                return mu * (er.yp - cs.delta * er.jp) * (ep.y - cs.gamma * ep.j) / cs.g;
            return mu * (er.yp - cs.gamma * er.jp) * (ep.y - cs.delta * ep.j) / cs.g;
        }
        case RegionLabel::Outer: {
            const BesselEval er = bessel_pair(l, k * r);
            const BesselEval ep = bessel_pair(l, k * rp);
            if (branch == Branch::Lower)
                return -k * (er.yp - cs.beta * er.jp) * ep.j;
            return -k * er.jp * (ep.y - cs.beta * ep.j);
        }
    }
    return 0.0;
}

RadialGreenValue green_radial(int l, double r, double rp,
                              const EnergyContext& ctx,
                              const PotentialProfile& profile)
{
    const RegionLabel reg_r = classify_region(r, profile);
    const RegionLabel reg_p = classify_region(rp, profile);
    if (reg_r != reg_p) {
        std::ostringstream os;
        os << "cross-region pair (r=" << r << " in " << region_name(reg_r)
           << ", r'=" << rp << " in " << region_name(reg_p)
           << "): only same-region blocks are defined";
        throw CrossRegionUnsupported(os.str());
    }
    const CoefficientSet cs = coefficient_set(l, ctx, profile);

    RadialGreenValue out;
    out.l = l;
    out.r = r;
    out.rp = rp;
    out.region = reg_r;
    out.value = green_block_value(cs, ctx, reg_r, std::min(r, rp),
                                  std::max(r, rp), Branch::Lower);
    return out;
}

double green_polar_sum(double r, double theta, double rp, double thetap,
                       const EnergyContext& ctx, const PotentialProfile& profile,
                       int lmax, int* lmax_used)
{
    const double dth = theta - thetap;
    double sum = green_radial(0, r, rp, ctx, profile).value;

    if (lmax >= 0) {
        for (int l = 1; l <= lmax; ++l)
            sum += 2.0 * green_radial(l, r, rp, ctx, profile).value * std::cos(l * dth);
        if (lmax_used) *lmax_used = lmax;
        return sum;
    }

    int small_run = 0;
    for (int l = 1; l <= kAutoLmaxCap; ++l) {
        const double term = 2.0 * green_radial(l, r, rp, ctx, profile).value
                            * std::cos(l * dth);
        sum += term;
        if (std::fabs(term) <= 1e-10 * std::fabs(sum)) ++small_run;
        else small_run = 0;
        if (small_run >= 3) {
            if (lmax_used) *lmax_used = l;
            return sum;
        }
    }
    throw NoConvergence("partial-wave sum did not converge by l=200");
}

double green_polar_sum(double r, double theta, double rp, double thetap,
                       const EnergyContext& ctx, const PotentialProfile& profile,
                       int lmax)
{
    return green_polar_sum(r, theta, rp, thetap, ctx, profile, lmax, nullptr);
}

} // namespace corona
