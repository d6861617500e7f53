#include "corona/bessel.hpp"
#include "corona/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace corona {
namespace {

// Hankel asymptotic expansion,
//   J_l(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
//   Y_l(x) = sqrt(2/(pi x)) [P sin(chi) + Q cos(chi)],  chi = x - (2l+1) pi/4.
// cos/sin of (2l+1)pi/4 are exact table constants, so the phase is formed from
// sin(x), cos(x) alone and keeps near-machine accuracy at x ~ 1e6, where the
// library routines lose a few digits.
void hankel_asymptotic(int l, double x, double* jv, double* yv)
{
    const double mu = 4.0 * static_cast<double>(l) * l;
    double p = 1.0, q = 0.0, term = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (k % 2 == 1) q += (k % 4 == 1) ? term : -term;
        else            p += (k % 4 == 2) ? -term : term;
        if (std::fabs(term) < 1e-18) break;
    }
    static constexpr double c2 = 0.70710678118654752440;
    static constexpr double ctab[8] = {1, c2, 0, -c2, -1, -c2, 0, c2};
    static constexpr double stab[8] = {0, c2, 1, c2, 0, -c2, -1, -c2};
    const int m = (2 * l + 1) & 7;
    const double sx = std::sin(x), cx = std::cos(x);
    const double cchi = cx * ctab[m] + sx * stab[m];
    const double schi = sx * ctab[m] - cx * stab[m];
    const double amp = std::sqrt(2.0 / (M_PI * x));
    *jv = amp * (p * cchi - q * schi);
    *yv = amp * (p * schi + q * cchi);
}

bool use_asymptotic(int l, double x)
{
    return x >= 5e4 && x >= 10.0 * static_cast<double>(l) * l;
}

double j_nonneg(int l, double x)
{
    if (use_asymptotic(l, x)) {
        double jv, yv;
        hankel_asymptotic(l, x, &jv, &yv);
        return jv;
    }
    return std::cyl_bessel_j(static_cast<double>(l), x);
}

double y_nonneg(int l, double x)
{
    if (use_asymptotic(l, x)) {
        double jv, yv;
        hankel_asymptotic(l, x, &jv, &yv);
        return yv;
    }
    const double y = std::cyl_neumann(static_cast<double>(l), x);
    // libstdc++ reports the large-order/small-argument overflow of Y_l as NaN;
    // the limit is -infinity for every l >= 0.
    if (std::isnan(y)) return -std::numeric_limits<double>::infinity();
    return y;
}

} // namespace

BesselEval bessel_pair(int l, double x)
{
    if (!(x > 0.0))
        throw NonPositiveArgument("bessel_pair: argument must be positive, got x=" + std::to_string(x));
    if (l > kBesselMaxOrder || l < -kBesselMaxOrder)
        throw OrderOutOfRange("bessel_pair: |l| must be <= 200, got l=" + std::to_string(l));
    if (x > kBesselMaxArgument)
        throw ArgumentOverflow("bessel_pair: argument must be <= 1e6, got x=" + std::to_string(x));

    const int al = l < 0 ? -l : l;

    // Orders al-1, al, al+1; for al = 0 use f_{-1} = -f_1.
    const double jm = (al == 0) ? -j_nonneg(1, x) : j_nonneg(al - 1, x);
    const double j0 = j_nonneg(al, x);
    const double jq = j_nonneg(al + 1, x);
    const double ym = (al == 0) ? -y_nonneg(1, x) : y_nonneg(al - 1, x);
    const double y0 = y_nonneg(al, x);
    const double yq = y_nonneg(al + 1, x);

    BesselEval out;
    out.order = l;
    out.x = x;
    out.j = j0;
    out.y = y0;
    out.jp = 0.5 * (jm - jq);
    out.yp = 0.5 * (ym - yq);

    if (l < 0 && (al & 1)) {
        out.j = -out.j;
        out.y = -out.y;
        out.jp = -out.jp;
        out.yp = -out.yp;
    }
    return out;
}

double bessel_j(int l, double x) { return bessel_pair(l, x).j; }
double bessel_y(int l, double x) { return bessel_pair(l, x).y; }

} // namespace corona
