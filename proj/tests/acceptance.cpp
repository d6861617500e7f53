// Acceptance suite: one pass/fail line per criterion. Exit 0 when everything
// passes, 4 when the dual-route delta consistency check fails, 1 otherwise.
// Usage: acceptance <path-to-cli-binary>
#include "corona/bessel.hpp"
#include "corona/errors.hpp"
#include "corona/greens.hpp"
#include "corona/oracle.hpp"
#include "corona/resonance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace corona;

namespace {

struct Case {
    int l;
    double e;
    PotentialProfile profile;
};

std::vector<Case> case_matrix()
{
    // {l} x {E} x {(a,b,V0)}, diffusion-regime combinations only
    // (E = 1.5 with V0 = 2 is below the barrier and out of contract).
    std::vector<Case> cases;
    const PotentialProfile profiles[] = {{1.0, 2.0, 1.0}, {1.0, 3.0, 2.0},
                                         {0.5, 1.5, 1.0}};
    for (int l : {0, 1, 2, 5})
        for (double e : {1.5, 2.0, 4.0})
            for (const PotentialProfile& p : profiles)
                if (e > p.v0) cases.push_back({l, e, p});
    return cases;
}

double now_s()
{
    using namespace std::chrono;
    return duration_cast<duration<double>>(steady_clock::now().time_since_epoch()).count();
}

int g_failures = 0;
bool g_delta_inconsistency = false;

void report(int idx, const char* name, bool ok, const std::string& detail,
            double seconds)
{
    std::printf("criterion %d (%s): %s  [%0.2fs]%s%s\n", idx, name,
                ok ? "PASS" : "FAIL", seconds,
                detail.empty() ? "" : "  ", detail.c_str());
    if (!ok) ++g_failures;
}

// --------------------------------------------------------------------------

bool criterion_bessel(std::string& detail)
{
    const double two_over_pi = 2.0 / M_PI;
    double worst = 0.0;
    for (int l = -20; l <= 20; ++l) {
        for (int i = 0; i < 60; ++i) {
            const double x = 1e-3 * std::pow(5e5, i / 59.0);
            const BesselEval e = bessel_pair(l, x);
            const double resid = std::fabs(x * (e.j * e.yp - e.jp * e.y) - two_over_pi);
            worst = std::max(worst, resid);
        }
    }
    std::ostringstream os;
    os << "max |xW - 2/pi| = " << worst;
    detail = os.str();
    return worst <= 1e-9 * two_over_pi;
}

std::vector<ValidationReport> g_reports;   // shared by criteria 2 and 3

void build_reports()
{
    ValidationGridSpec grid;
    grid.points_per_region = 9;   // 81 same-region pairs per region, 243 per case
    for (const Case& c : case_matrix()) {
        const EnergyContext ctx = wavenumbers(c.e, c.profile);
        g_reports.push_back(validate(c.l, ctx, c.profile, grid));
    }
}

bool criterion_properties(std::string& detail)
{
    double sym = 0, par = 0, iface = 0, jump = 0, ode = 0;
    for (const ValidationReport& r : g_reports) {
        sym = std::max(sym, r.symmetry.value);
        par = std::max(par, r.parity.value);
        iface = std::max({iface, r.interface_continuity_a.value,
                          r.interface_continuity_b.value,
                          r.derivative_continuity_a.value,
                          r.derivative_continuity_b.value});
        jump = std::max(jump, r.jump.value);
        ode = std::max(ode, r.ode_residual.value);
    }
    std::ostringstream os;
    os << "sym " << sym << ", parity " << par << ", iface " << iface
       << ", jump " << jump << ", ode " << ode;
    detail = os.str();
    return sym <= 1e-12 && par <= 1e-12 && iface <= 1e-9 && jump <= 1e-5 &&
           ode <= 1e-6;
}

bool criterion_oracle(std::string& detail)
{
    double worst = 0.0;
    int worst_l = 0;
    for (const ValidationReport& r : g_reports) {
        if (r.oracle_deviation.value > worst) {
            worst = r.oracle_deviation.value;
            worst_l = r.l;
        }
    }
    std::ostringstream os;
    os << "max oracle deviation " << worst << " (l=" << worst_l << ")";
    detail = os.str();
    return worst <= 1e-6;
}

bool criterion_resonance(std::string& detail)
{
    const PotentialProfile profile{1.0, 2.0, 1.0};
    double worst_res = 0, worst_beta = 0, worst_g = 0;
    int total = 0;
    for (int l : {0, 1, 2}) {
        ResonanceScanConfig cfg;
        cfg.l = l;
        cfg.kmin = 1.05;
        cfg.kmax = 8.0;
        cfg.samples = 4000;
        cfg.refine_tol = 1e-12;
        const auto roots = resonance_scan(cfg, profile);
        if (roots.empty()) {
            detail = "no roots found";
            return false;
        }
        total += static_cast<int>(roots.size());
        for (const auto& r : roots) {
            worst_res = std::max(worst_res, r.residual);
            worst_beta = std::max(worst_beta, r.beta_gap);
            worst_g = std::max(worst_g, r.g_at_root);
        }
        // Determinism and stability under tolerance halving.
        const auto again = resonance_scan(cfg, profile);
        if (again.size() != roots.size()) { detail = "nondeterministic"; return false; }
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (again[i].k_star != roots[i].k_star) { detail = "nondeterministic"; return false; }
        cfg.refine_tol = 5e-13;
        const auto finer = resonance_scan(cfg, profile);
        if (finer.size() != roots.size()) { detail = "roots lost on refinement"; return false; }
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (std::fabs(finer[i].k_star - roots[i].k_star) > 1e-11) {
                detail = "roots moved on refinement";
                return false;
            }
    }
    std::ostringstream os;
    os << total << " roots; max residual " << worst_res << ", beta gap "
       << worst_beta << ", gamma-delta gap " << worst_g;
    detail = os.str();
    return worst_res <= 1e-9 && worst_beta <= 1e-6 && worst_g <= 1e-6;
}

bool criterion_curve(const std::string& cli, std::string& detail)
{
    const std::string csv = "/tmp/acceptance_curve.csv";
    const std::string cmd = cli + " curve --l 0,1,2 --kmin 1.05 --kmax 8 "
                            "--samples 2000 --V0 1 --a 2 --b 1 --out " + csv;
    if (std::system(cmd.c_str()) != 0) {
        detail = "curve subcommand failed";
        return false;
    }
    std::ifstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "k,delta_l0,delta_l1,delta_l2") {
        detail = "unexpected CSV header: " + line;
        return false;
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() == 4) rows.push_back(row);
    }
    std::remove(csv.c_str());
    if (rows.size() != 2000) {
        detail = "expected 2000 rows";
        return false;
    }

    const PotentialProfile profile{1.0, 2.0, 1.0};
    for (int col = 1; col <= 3; ++col) {
        const int l = col - 1;
        // Zero crossings in the emitted data...
        std::vector<std::pair<double, double>> brackets;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (std::signbit(rows[i - 1][col]) != std::signbit(rows[i][col]))
                brackets.emplace_back(rows[i - 1][0], rows[i][0]);
        // ...must correspond one-to-one with the scan's roots.
        ResonanceScanConfig cfg;
        cfg.l = l;
        cfg.kmin = 1.05;
        cfg.kmax = 8.0;
        cfg.samples = 4000;
        cfg.refine_tol = 1e-12;
        const auto roots = resonance_scan(cfg, profile);
        if (roots.size() != brackets.size()) {
            std::ostringstream os;
            os << "l=" << l << ": " << brackets.size() << " crossings vs "
               << roots.size() << " roots";
            detail = os.str();
            return false;
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].k_star < brackets[i].first ||
                roots[i].k_star > brackets[i].second) {
                std::ostringstream os;
                os << "l=" << l << ": root " << roots[i].k_star
                   << " outside crossing bracket [" << brackets[i].first << ", "
                   << brackets[i].second << "]";
                detail = os.str();
                return false;
            }
        }
    }
    detail = "crossings match the scan roots for l=0,1,2";
    return true;
}

bool criterion_delta_consistency(std::string& detail)
{
    // coefficient_set cross-checks the two delta routes internally and raises
    // InternalConsistency (CLI exit 4) past 1e-9 relative disagreement.
    for (const Case& c : case_matrix()) {
        try {
            coefficient_set(c.l, wavenumbers(c.e, c.profile), c.profile);
        } catch (const InternalConsistency& e) {
            detail = e.what();
            g_delta_inconsistency = true;
            return false;
        } catch (const NearPole&) {
            // An accidental degeneracy is not a consistency failure.
        }
    }
    detail = "both delta routes agree to 1e-9 across the case matrix";
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 1;
    }
    const std::string cli = argv[1];
    std::string detail;
    double t0;

    t0 = now_s();
    bool ok = criterion_bessel(detail);
    report(1, "Bessel Wronskian suite", ok, detail, now_s() - t0);

    t0 = now_s();
    build_reports();
    const double t_reports = now_s() - t0;

    t0 = now_s();
    ok = criterion_properties(detail);
    report(2, "Green-function defining properties", ok, detail,
           t_reports + (now_s() - t0));

    t0 = now_s();
    ok = criterion_oracle(detail);
    report(3, "oracle equivalence", ok, detail, t_reports + (now_s() - t0));

    t0 = now_s();
    ok = criterion_resonance(detail);
    report(4, "resonance consistency", ok, detail, now_s() - t0);

    t0 = now_s();
    ok = criterion_curve(cli, detail);
    report(5, "Fig.-2 curve reproduction", ok, detail, now_s() - t0);

    t0 = now_s();
    ok = criterion_delta_consistency(detail);
    report(6, "dual-route delta consistency", ok, detail, now_s() - t0);

    if (g_delta_inconsistency) return 4;
    return g_failures == 0 ? 0 : 1;
}
