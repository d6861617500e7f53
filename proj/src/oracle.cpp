#include "corona/oracle.hpp"
#include "corona/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace corona {

namespace {

// ---------------------------------------------------------------------------
// Embedded Dormand-Prince 5(4) step over one smooth span (kappa^2 constant).
// State y = (u, u'); the equation is u'' = -u'/r - (kap2 - l^2/r^2) u.
// ---------------------------------------------------------------------------

struct Rhs {
    double l2;      // l^2
    double kap2;    // kappa^2 on this span
    void operator()(double r, const double y[2], double dy[2]) const {
        dy[0] = y[1];
        dy[1] = -y[1] / r - (kap2 - l2 / (r * r)) * y[0];
    }
};

void dp5_span(const Rhs& rhs, double r0, double r1, double y[2], double rtol)
{
    if (r1 == r0) return;
    const double dir = r1 > r0 ? 1.0 : -1.0;
    double r = r0;
    double h = dir * std::max(1e-6 * std::fabs(r1 - r0), 1e-12);
    h = dir * std::min(std::fabs(h), std::fabs(r1 - r0));

    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600,
                        e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640,
                        e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100,
                        e7 = -1.0 / 40;

    long steps = 0;
    while (dir * (r1 - r) > 0.0) {
        if (++steps > 2000000)
            throw StepFailure("radial integrator exceeded the step budget");
        if (dir * (r + h) > dir * r1) h = r1 - r;

        double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], y5[2];
        rhs(r, y, k1);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
        rhs(r + h / 5, yt, k2);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(r + 3 * h / 10, yt, k3);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(r + 4 * h / 5, yt, k4);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(r + 8 * h / 9, yt, k5);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(r + h, yt, k6);
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(r + h, y5, k7);

        double err = 0.0;
        const double ynorm = std::max(std::fabs(y[0]), std::fabs(y[1]));
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = rtol * (std::max(std::fabs(y[i]), std::fabs(y5[i])) + ynorm + 1e-300);
            err = std::max(err, std::fabs(e) / sc);
        }

        if (err <= 1.0) {
            r += h;
            y[0] = y5[0];
            y[1] = y5[1];
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        if (std::fabs(h) < 1e-15 * (std::fabs(r) + 1e-15))
            throw StepFailure("radial integrator step size underflow");
    }
}

double kappa2_between(double lo, double hi, const EnergyContext& ctx,
                      const PotentialProfile& profile)
{
    const double mid = 0.5 * (lo + hi);
    const bool inside = mid >= profile.b && mid <= profile.a;
    const double kap = inside ? ctx.mu : ctx.k;
    return kap * kap;
}

} // namespace

RadialSolution integrate_radial(int l, const EnergyContext& ctx,
                                const PotentialProfile& profile,
                                Provenance provenance,
                                double r_start, double r_end,
                                const std::vector<double>& record,
                                double rtol)
{
    validate_profile(profile);
    if (!(r_start > 0.0) || !(r_end > 0.0) || r_start == r_end)
        throw InvalidInput("integrate_radial: need a positive, non-empty span");

    const double lo = std::min(r_start, r_end);
    const double hi = std::max(r_start, r_end);
    const double dir = r_end > r_start ? 1.0 : -1.0;

    // Break the span at the interfaces and at every record point so each
    // integration piece sees a constant kappa and lands exactly on the
    // requested radii.
    std::vector<double> stops;
    stops.push_back(r_start);
    for (double c : {profile.b, profile.a})
        if (c > lo && c < hi) stops.push_back(c);
    for (double rr : record) {
        if (rr < lo || rr > hi)
            throw InvalidInput("integrate_radial: record point outside the span");
        stops.push_back(rr);
    }
    stops.push_back(r_end);
    std::sort(stops.begin(), stops.end());
    if (dir < 0) std::reverse(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    // Bessel-valued initial data (exact: V = 0 at both ends of the domain).
    const BesselEval e0 = bessel_pair(l, ctx.k * r_start);
    double y[2] = { e0.j, ctx.k * e0.jp };

    RadialSolution sol;
    sol.l = l;
    sol.provenance = provenance;

    auto maybe_record = [&](double r) {
        for (double rr : record) {
            if (rr == r) {
                sol.r.push_back(r);
                sol.u.push_back(y[0]);
                sol.up.push_back(y[1]);
                return;
            }
        }
    };

    maybe_record(stops.front());
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
        Rhs rhs;
        rhs.l2 = static_cast<double>(l) * l;
        rhs.kap2 = kappa2_between(std::min(stops[i], stops[i + 1]),
                                  std::max(stops[i], stops[i + 1]), ctx, profile);
        dp5_span(rhs, stops[i], stops[i + 1], y, rtol);
        maybe_record(stops[i + 1]);
    }
    return sol;
}

GreenOracle::GreenOracle(int l, const EnergyContext& ctx,
                         const PotentialProfile& profile,
                         std::vector<double> radii, double rtol)
    : l_(l)
{
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    if (radii.empty() || radii.front() <= 0.0)
        throw InvalidInput("GreenOracle: need positive radii");
    radii_ = std::move(radii);

    const double r0 = 1e-6 * profile.b;
    const double rfar = std::max({50.0 / ctx.k, 5.0 * profile.a,
                                  1.05 * radii_.back()});

    const RadialSolution reg = integrate_radial(l, ctx, profile,
                                                Provenance::RegularAtOrigin,
                                                std::min(r0, 0.5 * radii_.front()),
                                                radii_.back(), radii_, rtol);
    const RadialSolution out = integrate_radial(l, ctx, profile,
                                                Provenance::OuterStandingWave,
                                                rfar, radii_.front(), radii_, rtol);
    ureg_ = reg.u;
    upreg_ = reg.up;
    // out was recorded in descending order; realign to ascending.
    uout_.assign(out.u.rbegin(), out.u.rend());
    upout_.assign(out.up.rbegin(), out.up.rend());
}

std::size_t GreenOracle::index_of(double r) const
{
    auto it = std::lower_bound(radii_.begin(), radii_.end(), r - 1e-12 * r);
    if (it == radii_.end() || std::fabs(*it - r) > 1e-12 * r)
        throw InvalidInput("GreenOracle: radius was not in the precomputed set");
    return static_cast<std::size_t>(it - radii_.begin());
}

double GreenOracle::rw(std::size_t i) const
{
    return radii_[i] * (ureg_[i] * upout_[i] - upreg_[i] * uout_[i]);
}

double GreenOracle::green(double r, double rp) const
{
    const std::size_t ilo = index_of(std::min(r, rp));
    const std::size_t ihi = index_of(std::max(r, rp));
    const double w = ureg_[ihi] * upout_[ihi] - upreg_[ihi] * uout_[ihi];
    const double rhw = radii_[ihi] * w;
    const double scale = radii_[ihi] * (std::fabs(ureg_[ihi] * upout_[ihi]) +
                                        std::fabs(upreg_[ihi] * uout_[ihi]));
    if (std::fabs(rhw) < 1e-10 * scale) {
        std::ostringstream os;
        os << "oracle Wronskian degenerate at r=" << radii_[ihi]
           << " (l=" << l_ << "): resonance proximity";
        throw WronskianDegenerate(os.str());
    }
    return (2.0 / M_PI) * ureg_[ilo] * uout_[ihi] / rhw;
}

double oracle_green(int l, double r, double rp, const EnergyContext& ctx,
                    const PotentialProfile& profile, double rtol)
{
    if (!(r > 0.0) || !(rp > 0.0))
        throw NonPositiveRadius("oracle_green: radii must be positive");
    GreenOracle oracle(l, ctx, profile, {r, rp}, rtol);
    return oracle.green(r, rp);
}

// ---------------------------------------------------------------------------
// Property validation sweep
// ---------------------------------------------------------------------------

namespace {

std::string fmt_point(int l, double r, double rp)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "l=%d r=%.6g rp=%.6g", l, r, rp);
    return buf;
}

void take_max(ValidationEntry& e, double v, const std::string& where)
{
    if (v > e.value) {
        e.value = v;
        e.where = where;
    }
}

std::vector<double> region_radii(RegionLabel reg, const PotentialProfile& p,
                                 const ValidationGridSpec& grid)
{
    std::vector<double> out;
    const int n = std::max(2, grid.points_per_region);
    for (int i = 0; i < n; ++i) {
        const double f = 0.15 + 0.7 * i / (n - 1);
        switch (reg) {
            case RegionLabel::Inner: out.push_back(f * p.b); break;
            case RegionLabel::Mid:   out.push_back(p.b + f * (p.a - p.b)); break;
            case RegionLabel::Outer:
                out.push_back(p.a * (1.0 + f * (grid.outer_extent - 1.0)));
                break;
        }
    }
    return out;
}

} // namespace

ValidationReport validate(int l, const EnergyContext& ctx,
                          const PotentialProfile& profile,
                          const ValidationGridSpec& grid)
{
    ValidationReport rep;
    rep.l = l;

    CoefficientSet cs;
    try {
        cs = coefficient_set(l, ctx, profile);
    } catch (const NearPole&) {
        rep.flagged_near_pole = 1;
        rep.symmetry.where = rep.parity.where = rep.jump.where =
            rep.ode_residual.where = rep.oracle_deviation.where =
            rep.interface_continuity_a.where = rep.interface_continuity_b.where =
            rep.derivative_continuity_a.where = rep.derivative_continuity_b.where =
            "skipped: near-pole";
        return rep;
    }

    const std::vector<RegionLabel> regions = {RegionLabel::Inner, RegionLabel::Mid,
                                              RegionLabel::Outer};
    std::vector<double> all_radii;
    for (RegionLabel reg : regions) {
        auto rs = region_radii(reg, profile, grid);
        all_radii.insert(all_radii.end(), rs.begin(), rs.end());
    }

    // Symmetry / parity / oracle deviation over same-region pairs.
    GreenOracle oracle(l, ctx, profile, all_radii);
    for (RegionLabel reg : regions) {
        const auto rs = region_radii(reg, profile, grid);
        for (double r : rs) {
            for (double rp : rs) {
                double gv, gsw, gneg;
                try {
                    gv = green_radial(l, r, rp, ctx, profile).value;
                    gsw = green_radial(l, rp, r, ctx, profile).value;
                    gneg = green_radial(-l, r, rp, ctx, profile).value;
                } catch (const NearPole&) {
                    ++rep.flagged_near_pole;
                    continue;
                }
                take_max(rep.symmetry,
                         std::fabs(gv - gsw) / std::max(1.0, std::fabs(gv)),
                         fmt_point(l, r, rp));
                take_max(rep.parity,
                         std::fabs(gv - gneg) / std::max(1.0, std::fabs(gv)),
                         fmt_point(l, r, rp));
                try {
                    const double go = oracle.green(r, rp);
                    const double dev = std::fabs(gv - go) /
                                       std::max({std::fabs(gv), std::fabs(go), 1e-12});
                    take_max(rep.oracle_deviation, dev, fmt_point(l, r, rp));
                } catch (const WronskianDegenerate&) {
                    ++rep.flagged_near_pole;
                }
            }
        }
    }

    // Interface matching with the source pinned at the interface. Branches are
    // compared like with like; mixing branches across the source would differ
    // by the jump 2/(pi r').
    struct IfaceCheck {
        double r;
        RegionLabel left, right;
        ValidationEntry* cont;
        ValidationEntry* deriv;
    };
    const IfaceCheck checks[2] = {
        {profile.b, RegionLabel::Inner, RegionLabel::Mid,
         &rep.interface_continuity_b, &rep.derivative_continuity_b},
        {profile.a, RegionLabel::Mid, RegionLabel::Outer,
         &rep.interface_continuity_a, &rep.derivative_continuity_a},
    };
    for (const IfaceCheck& c : checks) {
        const double vl = green_block_value(cs, ctx, c.left, c.r, c.r, Branch::Lower);
        const double vr = green_block_value(cs, ctx, c.right, c.r, c.r, Branch::Lower);
        take_max(*c.cont, std::fabs(vl - vr) / std::max(1.0, std::fabs(vl)),
                 fmt_point(l, c.r, c.r));
        for (Branch br : {Branch::Lower, Branch::Upper}) {
            const double dl = green_block_deriv(cs, ctx, c.left, c.r, c.r, br);
            const double dr = green_block_deriv(cs, ctx, c.right, c.r, c.r, br);
            take_max(*c.deriv, std::fabs(dl - dr) / std::max(1.0, std::fabs(dl)),
                     fmt_point(l, c.r, c.r));
        }
    }

    // Derivative jump across r = r', one interior source per region, measured
    // by second-order one-sided finite differences of the closed form.
    for (RegionLabel reg : regions) {
        const auto rs = region_radii(reg, profile, grid);
        const double rp = rs[rs.size() / 2];
        const double h = 1e-4 * rp;
        auto G = [&](double r) { return green_radial(l, r, rp, ctx, profile).value; };
        const double dplus = (-3.0 * G(rp) + 4.0 * G(rp + h) - G(rp + 2 * h)) / (2 * h);
        const double dminus = (3.0 * G(rp) - 4.0 * G(rp - h) + G(rp - 2 * h)) / (2 * h);
        const double jump = dplus - dminus;
        const double target = 2.0 / (M_PI * rp);
        take_max(rep.jump, std::fabs(jump - target) / target, fmt_point(l, rp, rp));
    }

    // Radial ODE residual r G'' + G' + (kappa^2 r - l^2/r) G on a 5-point
    // stencil, away from r' and the interfaces.
    for (RegionLabel reg : regions) {
        const auto rs = region_radii(reg, profile, grid);
        const double rp = rs.front();
        const double r = rs.back();
        const double kap = reg == RegionLabel::Mid ? ctx.mu : ctx.k;
        double room = std::fabs(r - rp);
        switch (reg) {
            case RegionLabel::Inner: room = std::min(room, profile.b - r); break;
            case RegionLabel::Mid:   room = std::min(room, profile.a - r); break;
            case RegionLabel::Outer: room = std::min(room, 0.5 * r); break;
        }
        const double h = std::min(1e-3 * r, 0.2 * room);
        const Branch br = r > rp ? Branch::Upper : Branch::Lower;
        double gv[5];
        for (int i = -2; i <= 2; ++i)
            gv[i + 2] = green_block_value(cs, ctx, reg, r + i * h, rp, br);
        const double g1 = (gv[0] - 8 * gv[1] + 8 * gv[3] - gv[4]) / (12 * h);
        const double g2 = (-gv[0] + 16 * gv[1] - 30 * gv[2] + 16 * gv[3] - gv[4])
                        / (12 * h * h);
        const double lhs = r * g2 + g1 + (kap * kap * r - static_cast<double>(l) * l / r) * gv[2];
        const double scale = std::fabs(r * g2) + std::fabs(g1) +
                             std::fabs(kap * kap * r * gv[2]) +
                             std::fabs(static_cast<double>(l) * l / r * gv[2]) + 1e-12;
        take_max(rep.ode_residual, std::fabs(lhs) / scale, fmt_point(l, r, rp));
    }

    return rep;
}

std::string ValidationReport::to_text() const
{
    std::ostringstream os;
    os.precision(17);
    auto put = [&](const char* key, const ValidationEntry& e) {
        os << key << " = " << e.value << "\n";
        os << key << "_at = " << (e.where.empty() ? "-" : e.where) << "\n";
    };
    os << "l = " << l << "\n";
    put("interface_continuity_a", interface_continuity_a);
    put("interface_continuity_b", interface_continuity_b);
    put("derivative_continuity_a", derivative_continuity_a);
    put("derivative_continuity_b", derivative_continuity_b);
    put("jump", jump);
    put("ode_residual", ode_residual);
    put("symmetry", symmetry);
    put("parity", parity);
    put("oracle_deviation", oracle_deviation);
    os << "flagged_near_pole = " << flagged_near_pole << "\n";
    return os.str();
}

} // namespace corona
