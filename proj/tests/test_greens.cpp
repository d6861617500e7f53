#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corona/errors.hpp"
#include "corona/greens.hpp"

#include <cmath>

using namespace corona;

namespace {

const PotentialProfile kRef{1.0, 2.0, 1.0};   // b=1, a=2, V0=1

EnergyContext ref_ctx(double e = 2.0)
{
    return wavenumbers(e, kRef);
}

double rel(double got, double want)
{
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

} // namespace

TEST_CASE("wavenumbers in reduced units")
{
    const EnergyContext ctx = ref_ctx();
    CHECK(ctx.k == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(ctx.mu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ctx.k > ctx.mu);

    // Barrier-free limit: mu -> k.
    const PotentialProfile tiny{1.0, 2.0, 1e-300};
    const EnergyContext free_ctx = wavenumbers(5.0, tiny);
    CHECK(free_ctx.mu == doctest::Approx(free_ctx.k).epsilon(1e-12));
    CHECK(free_ctx.k == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

    CHECK_THROWS_AS(wavenumbers(1.0, kRef), NotDiffusionRegime);
    CHECK_THROWS_AS(wavenumbers(0.5, kRef), NotDiffusionRegime);
    CHECK_THROWS_AS(wavenumbers(2.0, PotentialProfile{2.0, 1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(wavenumbers(2.0, PotentialProfile{1.0, 2.0, -1.0}), InvalidInput);
}

TEST_CASE("region classification with boundaries owned by Mid")
{
    CHECK(classify_region(0.5, kRef) == RegionLabel::Inner);
    CHECK(classify_region(1.0, kRef) == RegionLabel::Mid);
    CHECK(classify_region(1.7, kRef) == RegionLabel::Mid);
    CHECK(classify_region(2.0, kRef) == RegionLabel::Mid);
    CHECK(classify_region(3.0, kRef) == RegionLabel::Outer);
    CHECK_THROWS_AS(classify_region(0.0, kRef), NonPositiveRadius);
    CHECK_THROWS_AS(classify_region(-1.0, kRef), NonPositiveRadius);
}

TEST_CASE("coefficient cascade fixtures, l = 0 reference case")
{
    // Frozen from a 50-digit transcription of the cascade.
    const CoefficientSet cs = coefficient_set(0, ref_ctx(), kRef);
    CHECK(cs.f1 == doctest::Approx(0.39949746093552933).epsilon(1e-12));
    CHECK(cs.f2 == doctest::Approx(0.13280094972229089).epsilon(1e-12));
    CHECK(cs.t1 == doctest::Approx(-0.37077836350416294).epsilon(1e-12));
    CHECK(cs.t2 == doctest::Approx(0.40344512998831963).epsilon(1e-12));
    CHECK(cs.f == doctest::Approx(0.1644019596660636).epsilon(1e-12));
    CHECK(cs.t == doctest::Approx(-0.029276925074072401).epsilon(1e-12));
    CHECK(cs.beta == doctest::Approx(-5.6154107458388011).epsilon(1e-12));
    CHECK(cs.u == doctest::Approx(-0.24006738194796302).epsilon(1e-12));
    CHECK(cs.v == doctest::Approx(-0.2678151817496078).epsilon(1e-12));
    CHECK(cs.gamma == doctest::Approx(1.1155833815343535).epsilon(1e-12));
    CHECK(cs.delta == doctest::Approx(1.4709814331791596).epsilon(1e-12));
    CHECK(cs.g == doctest::Approx(-0.35539805164480615).epsilon(1e-12));
    CHECK(cs.psi == doctest::Approx(7.1458133873490618).epsilon(1e-12));
    CHECK(cs.alpha == doctest::Approx(7.7621895016316901).epsilon(1e-12));
}

TEST_CASE("coefficient cascade fixtures, l = 2 reference case")
{
    const CoefficientSet cs = coefficient_set(2, ref_ctx(), kRef);
    CHECK(cs.f1 == doctest::Approx(1.0190016336112785).epsilon(1e-12));
    CHECK(cs.f2 == doctest::Approx(0.42821655836689573).epsilon(1e-12));
    CHECK(cs.t1 == doctest::Approx(-0.51147465133203442).epsilon(1e-12));
    CHECK(cs.t2 == doctest::Approx(-0.45693565579826212).epsilon(1e-12));
    CHECK(cs.f == doctest::Approx(0.3019416971725195).epsilon(1e-12));
    CHECK(cs.t == doctest::Approx(-0.083750016442088656).epsilon(1e-12));
    CHECK(cs.beta == doctest::Approx(-3.605273288290107).epsilon(1e-12));
    CHECK(cs.u == doctest::Approx(-0.076865803415239597).epsilon(1e-12));
    CHECK(cs.v == doctest::Approx(-0.29810321782285487).epsilon(1e-12));
    CHECK(cs.gamma == doctest::Approx(3.8782293891141743).epsilon(1e-12));
    CHECK(cs.delta == doctest::Approx(256.58231488353135).epsilon(1e-11));
    CHECK(cs.g == doctest::Approx(-252.70408549441718).epsilon(1e-11));
    CHECK(cs.psi == doctest::Approx(5.8090362767754067).epsilon(1e-11));
    CHECK(cs.alpha == doctest::Approx(1.025516322476112).epsilon(1e-11));
}

TEST_CASE("cascade identities across a spread of cases")
{
    for (int l : {0, 1, 2, 5, 9}) {
        for (double e : {1.5, 2.0, 4.0}) {
            const CoefficientSet cs = coefficient_set(l, ref_ctx(e), kRef);
            CHECK(std::fabs(cs.g - (cs.gamma - cs.delta)) <= 1e-12 *
                  std::max(1.0, std::fabs(cs.g)));
            CHECK(std::fabs(cs.beta * cs.t - cs.f) <= 1e-10 * std::fabs(cs.f));
            CHECK(std::fabs(cs.gamma * cs.u - cs.v) <= 1e-10 * std::fabs(cs.v));
        }
    }
}

TEST_CASE("Green block fixtures in all three regions")
{
    const EnergyContext ctx = ref_ctx();
    CHECK(green_radial(0, 0.5, 0.7, ctx, kRef).value ==
          doctest::Approx(-5.1794730591514467).epsilon(1e-12));
    CHECK(green_radial(1, 1.2, 1.8, ctx, kRef).value ==
          doctest::Approx(-0.38159095689949188).epsilon(1e-12));
    CHECK(green_radial(0, 2.5, 3.5, ctx, kRef).value ==
          doctest::Approx(-0.38512322126245201).epsilon(1e-12));
    CHECK(green_radial(0, 0.5, 0.7, ctx, kRef).region == RegionLabel::Inner);
    CHECK(green_radial(1, 1.2, 1.8, ctx, kRef).region == RegionLabel::Mid);
    CHECK(green_radial(0, 2.5, 3.5, ctx, kRef).region == RegionLabel::Outer);
}

TEST_CASE("symmetry and parity of the radial blocks")
{
    const EnergyContext ctx = ref_ctx();
    const double pairs[][2] = {{0.4, 0.8}, {1.1, 1.9}, {2.3, 4.0}};
    for (int l : {0, 1, 3}) {
        for (const auto& p : pairs) {
            const double g = green_radial(l, p[0], p[1], ctx, kRef).value;
            const double gs = green_radial(l, p[1], p[0], ctx, kRef).value;
            const double gn = green_radial(-l, p[0], p[1], ctx, kRef).value;
            CHECK(rel(gs, g) <= 1e-12);
            CHECK(rel(gn, g) <= 1e-12);
        }
    }
}

TEST_CASE("derivative jump across the source is 2/(pi r')")
{
    const EnergyContext ctx = ref_ctx();
    const CoefficientSet cs0 = coefficient_set(0, ctx, kRef);
    const CoefficientSet cs3 = coefficient_set(3, ctx, kRef);
    struct Probe { RegionLabel reg; double rp; };
    for (const Probe& pr : {Probe{RegionLabel::Inner, 0.6},
                            Probe{RegionLabel::Mid, 1.4},
                            Probe{RegionLabel::Outer, 3.1}}) {
        for (const CoefficientSet* cs : {&cs0, &cs3}) {
            const double up = green_block_deriv(*cs, ctx, pr.reg, pr.rp, pr.rp, Branch::Upper);
            const double lo = green_block_deriv(*cs, ctx, pr.reg, pr.rp, pr.rp, Branch::Lower);
            const double target = 2.0 / (M_PI * pr.rp);
            CHECK(std::fabs((up - lo) - target) <= 1e-9 * target);
        }
    }
}

TEST_CASE("regularity at the origin: G11 / J_l(kr) tends to a constant")
{
    const EnergyContext ctx = ref_ctx();
    for (int l : {0, 2}) {
        const double rp = 0.7;
        double prev = 0.0;
        bool first = true;
        for (double f : {1e-3, 1e-4}) {
            const double r = f * kRef.b;
            const double ratio = green_radial(l, r, rp, ctx, kRef).value /
                                 bessel_j(l, ctx.k * r);
            CHECK(std::isfinite(ratio));
            if (!first) CHECK(ratio == doctest::Approx(prev).epsilon(1e-6));
            prev = ratio;
            first = false;
        }
    }
}

TEST_CASE("cross-region pairs and bad radii are rejected")
{
    const EnergyContext ctx = ref_ctx();
    CHECK_THROWS_AS(green_radial(0, 0.5, 3.0, ctx, kRef), CrossRegionUnsupported);
    CHECK_THROWS_AS(green_radial(0, 1.5, 0.5, ctx, kRef), CrossRegionUnsupported);
    CHECK_THROWS_AS(green_radial(0, 0.5, 0.0, ctx, kRef), NonPositiveRadius);
    CHECK_THROWS_AS(green_radial(0, -0.5, 0.7, ctx, kRef), NonPositiveRadius);
}

TEST_CASE("partial-wave sum")
{
    const EnergyContext ctx = ref_ctx();

    // lmax = 0 is exactly the l = 0 radial value.
    CHECK(green_polar_sum(0.5, 0.3, 0.7, 0.1, ctx, kRef, 0) ==
          doctest::Approx(green_radial(0, 0.5, 0.7, ctx, kRef).value).epsilon(1e-15));

    // Truncation error at lmax = 9 vs a long reference sum.
    const double ref64 = green_polar_sum(0.5, 0.0, 0.7, 0.0, ctx, kRef, 64);
    const double s8 = green_polar_sum(0.5, 0.0, 0.7, 0.0, ctx, kRef, 8);
    const double s9 = green_polar_sum(0.5, 0.0, 0.7, 0.0, ctx, kRef, 9);
    CHECK(std::fabs(s9 - ref64) <= std::fabs(s8 - ref64) + 1e-10 * std::fabs(ref64));

    // Auto truncation agrees with the long reference sum and reports lmax.
    int used = -1;
    const double sauto = green_polar_sum(0.5, 0.0, 0.7, 0.0, ctx, kRef, -1, &used);
    CHECK(used > 0);
    CHECK(used <= 200);
    CHECK(sauto == doctest::Approx(ref64).epsilon(1e-8));
}

TEST_CASE("true cascade is regular at a discriminant root")
{
    // k* is the first l=0 zero of Delta_0 for V0=1, a=2, b=1. The paper's
    // pole chain predicts g = 0 there, but the oracle-true cascade stays
    // regular: only beta locks onto Y_0(k a)/J_0(k a).
    const double ks = 1.3311488575326572;
    const double e = ks * ks;   // reduced units
    const EnergyContext ctx = wavenumbers(e, kRef);
    const CoefficientSet cs = coefficient_set(0, ctx, kRef);
    CHECK(std::isfinite(cs.g));
    CHECK(std::fabs(cs.g) > 1e-3 * (std::fabs(cs.gamma) + std::fabs(cs.delta)));
    const double ratio = bessel_y(0, ks * kRef.a) / bessel_j(0, ks * kRef.a);
    CHECK(cs.beta == doctest::Approx(ratio).epsilon(1e-9));
}
