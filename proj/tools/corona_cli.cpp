// Command-line front end: evaluation, partial-wave sums, resonance scans,
// discriminant curve emission, and the ODE-oracle validation report.
#include "corona/config.hpp"
#include "corona/errors.hpp"
#include "corona/greens.hpp"
#include "corona/oracle.hpp"
#include "corona/resonance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Common {
    double v0 = 0.0, a = 0.0, b = 0.0;
    double m = 0.5, hbar = 1.0;
    corona::PotentialProfile profile() const { return {b, a, v0}; }
    std::string units() const
    {
        if (m == 0.5 && hbar == 1.0) return "reduced (2M=hbar=1)";
        return "custom (M=" + corona::format_double(m) +
               ", hbar=" + corona::format_double(hbar) + ")";
    }
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--V0", c.v0, "barrier height V0")->required();
    cmd->add_option("--a", c.a, "outer barrier radius")->required();
    cmd->add_option("--b", c.b, "inner barrier radius")->required();
    cmd->add_option("--m", c.m, "particle mass M (default 1/2, reduced units)");
    cmd->add_option("--hbar", c.hbar, "hbar (default 1, reduced units)");
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);   // LF endings everywhere
    if (!out)
        throw corona::InvalidInput("cannot open output file: " + out_path);
    out << text;
}

std::string csv_row(const std::vector<double>& vals)
{
    std::string row;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) row += ',';
        row += corona::format_double(vals[i]);
    }
    row += '\n';
    return row;
}

// ---------------------------------------------------------------------------
// Flat key=value config merging: command-line flags win; keys the selected
// subcommand does not use are legal (one schema for all subcommands) as long
// as some subcommand knows them.
// ---------------------------------------------------------------------------

bool flag_present(const std::vector<std::string>& args, const std::string& flag)
{
    for (const std::string& s : args)
        if (s == flag || s.rfind(flag + "=", 0) == 0) return true;
    return false;
}

void merge_config(CLI::App& app, std::vector<std::string>& args)
{
    std::string cfg_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) cfg_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) cfg_path = args[i].substr(9);
    }
    if (cfg_path.empty()) return;

    CLI::App* sub = nullptr;
    for (const std::string& s : args)
        if (CLI::App* cand = app.get_subcommand_no_throw(s)) { sub = cand; break; }

    const auto cfg = corona::parse_config_file(cfg_path);
    for (const auto& [key, val] : cfg) {
        const std::string flag = "--" + key;
        bool known = app.get_option_no_throw(flag) != nullptr;
        for (const CLI::App* s : app.get_subcommands({}))
            known = known || s->get_option_no_throw(flag) != nullptr;
        if (!known)
            throw corona::InvalidInput("unknown config key: " + key);
        const bool usable = (sub && sub->get_option_no_throw(flag)) ||
                            app.get_option_no_throw(flag);
        if (usable && !flag_present(args, flag)) {
            args.push_back(flag);
            args.push_back(val);
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-D annular-barrier Green function toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value config file");

    // --- eval ------------------------------------------------------------
    Common ec;
    int ev_l = 0;
    double ev_r = 0, ev_rp = 0, ev_e = 0;
    std::string ev_out, ev_format = "text";
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate G(l; r, r')");
    eval_cmd->fallthrough();
    add_common(eval_cmd, ec);
    eval_cmd->add_option("--l", ev_l, "angular momentum")->required();
    eval_cmd->add_option("--r", ev_r, "observation radius")->required();
    eval_cmd->add_option("--rp", ev_rp, "source radius")->required();
    eval_cmd->add_option("--E", ev_e, "energy E > V0")->required();
    eval_cmd->add_option("--out", ev_out, "output path (default stdout)");
    eval_cmd->add_option("--format", ev_format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));

    // --- sum -------------------------------------------------------------
    Common sc;
    int sm_l = -1;   // lmax; negative = auto
    double sm_r = 0, sm_th = 0, sm_rp = 0, sm_thp = 0, sm_e = 0;
    std::string sm_out, sm_format = "text";
    CLI::App* sum_cmd = app.add_subcommand("sum", "angular partial-wave sum");
    sum_cmd->fallthrough();
    add_common(sum_cmd, sc);
    sum_cmd->add_option("--lmax", sm_l, "truncation order (omit for auto)");
    sum_cmd->add_option("--r", sm_r, "observation radius")->required();
    sum_cmd->add_option("--theta", sm_th, "observation angle");
    sum_cmd->add_option("--rp", sm_rp, "source radius")->required();
    sum_cmd->add_option("--thetap", sm_thp, "source angle");
    sum_cmd->add_option("--E", sm_e, "energy E > V0")->required();
    sum_cmd->add_option("--out", sm_out, "output path (default stdout)");
    sum_cmd->add_option("--format", sm_format, "text|json")
           ->check(CLI::IsMember({"text", "json"}));

    // --- resonances ------------------------------------------------------
    Common rc;
    std::vector<int> rs_l;
    double rs_kmin = 0, rs_kmax = 0, rs_tol = 1e-12;
    int rs_samples = 0;
    std::string rs_out, rs_format = "csv";
    CLI::App* res_cmd = app.add_subcommand("resonances", "locate zeros of Delta_l(k)");
    res_cmd->fallthrough();
    add_common(res_cmd, rc);
    res_cmd->add_option("--l", rs_l, "angular momenta (comma separated)")
           ->required()->delimiter(',');
    res_cmd->add_option("--kmin", rs_kmin, "scan start")->required();
    res_cmd->add_option("--kmax", rs_kmax, "scan end")->required();
    res_cmd->add_option("--samples", rs_samples, "scan samples")->required();
    res_cmd->add_option("--tol", rs_tol, "bisection tolerance in k");
    res_cmd->add_option("--out", rs_out, "output path (default stdout)");
    res_cmd->add_option("--format", rs_format, "csv|json")
           ->check(CLI::IsMember({"csv", "json"}));

    // --- curve -----------------------------------------------------------
    Common cc;
    std::vector<int> cv_l;
    double cv_kmin = 0, cv_kmax = 0;
    int cv_samples = 0;
    std::string cv_out;
    CLI::App* curve_cmd = app.add_subcommand("curve", "emit Delta_l(k) samples");
    curve_cmd->fallthrough();
    add_common(curve_cmd, cc);
    curve_cmd->add_option("--l", cv_l, "angular momenta (comma separated)")
             ->required()->delimiter(',');
    curve_cmd->add_option("--kmin", cv_kmin, "grid start")->required();
    curve_cmd->add_option("--kmax", cv_kmax, "grid end")->required();
    curve_cmd->add_option("--samples", cv_samples, "grid samples")->required();
    curve_cmd->add_option("--out", cv_out, "output path (default stdout)");

    // --- validate --------------------------------------------------------
    Common vc;
    std::vector<int> vd_l{0};
    double vd_e = 0;
    int vd_points = 5;
    std::string vd_out, vd_format = "text";
    CLI::App* val_cmd = app.add_subcommand("validate", "property/oracle validation report");
    val_cmd->fallthrough();
    add_common(val_cmd, vc);
    val_cmd->add_option("--l", vd_l, "angular momenta (comma separated)")->delimiter(',');
    val_cmd->add_option("--E", vd_e, "energy E > V0")->required();
    val_cmd->add_option("--points", vd_points, "grid points per region");
    val_cmd->add_option("--out", vd_out, "output path (default stdout)");
    val_cmd->add_option("--format", vd_format, "text|json")
           ->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        merge_config(app, args);
        std::vector<const char*> cargv;
        cargv.push_back(argc > 0 ? argv[0] : "corona");
        for (const std::string& s : args) cargv.push_back(s.c_str());
        try {
            app.parse(static_cast<int>(cargv.size()), cargv.data());
        } catch (const CLI::ParseError& e) {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 2;
        }

        if (*eval_cmd) {
            const auto profile = ec.profile();
            const auto ctx = corona::wavenumbers(ev_e, profile, ec.m, ec.hbar);
            try {
                const auto gv = corona::green_radial(ev_l, ev_r, ev_rp, ctx, profile);
                if (ev_format == "json") {
                    json j{{"l", gv.l}, {"r", gv.r}, {"rp", gv.rp},
                           {"region", corona::region_name(gv.region)},
                           {"value", gv.value}, {"near_pole", false},
                           {"units", ec.units()}};
                    emit(j.dump(2) + "\n", ev_out);
                } else {
                    std::string t;
                    t += "l = " + std::to_string(gv.l) + "\n";
                    t += "r = " + corona::format_double(gv.r) + "\n";
                    t += "rp = " + corona::format_double(gv.rp) + "\n";
                    t += std::string("region = ") + corona::region_name(gv.region) + "\n";
                    t += "value = " + corona::format_double(gv.value) + "\n";
                    t += "units = " + ec.units() + "\n";
                    emit(t, ev_out);
                }
            } catch (const corona::NearPole& np) {
                emit("near_pole = " + np.quantity() + "\n", ev_out);
                std::cerr << "near-pole: " << np.what() << "\n";
                return 3;
            }
            return 0;
        }

        if (*sum_cmd) {
            const auto profile = sc.profile();
            const auto ctx = corona::wavenumbers(sm_e, profile, sc.m, sc.hbar);
            int used = sm_l;
            const double v = corona::green_polar_sum(sm_r, sm_th, sm_rp, sm_thp,
                                                     ctx, profile, sm_l, &used);
            if (sm_format == "json") {
                json j{{"value", v}, {"lmax", used}, {"units", sc.units()}};
                emit(j.dump(2) + "\n", sm_out);
            } else {
                std::string t;
                t += "value = " + corona::format_double(v) + "\n";
                t += "lmax = " + std::to_string(used) + "\n";
                t += "units = " + sc.units() + "\n";
                emit(t, sm_out);
            }
            return 0;
        }

        if (*res_cmd) {
            const auto profile = rc.profile();
            std::vector<int> ls = rs_l;
            std::sort(ls.begin(), ls.end());
            ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
            std::vector<corona::ResonanceRoot> roots;
            for (int l : ls) {
                corona::ResonanceScanConfig cfg;
                cfg.l = l;
                cfg.kmin = rs_kmin;
                cfg.kmax = rs_kmax;
                cfg.samples = rs_samples;
                cfg.refine_tol = rs_tol;
                const auto rr = corona::resonance_scan(cfg, profile, rc.m, rc.hbar);
                roots.insert(roots.end(), rr.begin(), rr.end());
            }
            if (rs_format == "json") {
                json j = json::array();
                for (const auto& r : roots)
                    j.push_back({{"l", r.l}, {"k_star", r.k_star},
                                 {"e_star", r.e_star}, {"residual", r.residual},
                                 {"beta_gap", r.beta_gap},
                                 {"g_at_root", r.g_at_root}});
                json top{{"units", rc.units()}, {"roots", j}};
                emit(top.dump(2) + "\n", rs_out);
            } else {
                std::string t = "l,k_star,e_star,residual,beta_gap,g_at_root\n";
                for (const auto& r : roots) {
                    t += std::to_string(r.l) + ",";
                    t += csv_row({r.k_star, r.e_star, r.residual, r.beta_gap,
                                  r.g_at_root});
                }
                emit(t, rs_out);
            }
            return 0;
        }

        if (*curve_cmd) {
            const auto profile = cc.profile();
            if (cv_samples < 2)
                throw corona::InvalidInput("curve: samples must be >= 2");
            if (!(cv_kmax > cv_kmin))
                throw corona::DegenerateRange("curve: kmax must exceed kmin");
            std::string t = "k";
            for (int l : cv_l) t += ",delta_l" + std::to_string(l);
            t += '\n';
            const double h = (cv_kmax - cv_kmin) / (cv_samples - 1);
            for (int i = 0; i < cv_samples; ++i) {
                const double k = cv_kmin + i * h;
                std::vector<double> row{k};
                for (int l : cv_l)
                    row.push_back(corona::pole_discriminant(l, k, profile, cc.m, cc.hbar));
                t += csv_row(row);
            }
            emit(t, cv_out);
            return 0;
        }

        if (*val_cmd) {
            const auto profile = vc.profile();
            const auto ctx = corona::wavenumbers(vd_e, profile, vc.m, vc.hbar);
            corona::ValidationGridSpec grid;
            grid.points_per_region = vd_points;
            if (vd_format == "json") {
                json out = json::array();
                for (int l : vd_l) {
                    const auto rep = corona::validate(l, ctx, profile, grid);
                    auto ent = [](const corona::ValidationEntry& e) {
                        return json{{"value", e.value}, {"at", e.where}};
                    };
                    out.push_back({{"l", rep.l},
                                   {"interface_continuity_a", ent(rep.interface_continuity_a)},
                                   {"interface_continuity_b", ent(rep.interface_continuity_b)},
                                   {"derivative_continuity_a", ent(rep.derivative_continuity_a)},
                                   {"derivative_continuity_b", ent(rep.derivative_continuity_b)},
                                   {"jump", ent(rep.jump)},
                                   {"ode_residual", ent(rep.ode_residual)},
                                   {"symmetry", ent(rep.symmetry)},
                                   {"parity", ent(rep.parity)},
                                   {"oracle_deviation", ent(rep.oracle_deviation)},
                                   {"flagged_near_pole", rep.flagged_near_pole}});
                }
                json top{{"units", vc.units()}, {"reports", out}};
                emit(top.dump(2) + "\n", vd_out);
            } else {
                std::string t = "units = " + vc.units() + "\n";
                for (int l : vd_l)
                    t += corona::validate(l, ctx, profile, grid).to_text();
                emit(t, vd_out);
            }
            return 0;
        }
        return 2;
    } catch (const corona::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
