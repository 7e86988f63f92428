#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json_writer.hpp"
#include "ptqes/bdpoly.hpp"
#include "ptqes/dynamics.hpp"
#include "ptqes/format.hpp"
#include "ptqes/hamiltonics.hpp"
#include "ptqes/model.hpp"

namespace {

using namespace ptqes;
using tools::JsonWriter;

struct CommonOpts {
    double a = 2.0 / 3.0;
    double b = 1.0;
    std::string format = "json";
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--a", opts.a, "cubic potential coefficient")
        ->capture_default_str();
    cmd->add_option("--b", opts.b, "linear potential coefficient")
        ->capture_default_str();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "output path ('-' = stdout)")
        ->capture_default_str();
}

void write_config_fields(JsonWriter& w, const std::string& command,
                         const CommonOpts& opts) {
    w.field("command", command);
    w.field("a", opts.a);
    w.field("b", opts.b);
    w.field("format", opts.format);
    w.field("out", opts.out);
}

void emit(const CommonOpts& opts, const std::string& payload) {
    if (opts.out == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw BadParams("cannot open output path: " + opts.out);
    file << payload;
}

ModelParams make_params(const CommonOpts& opts, double g) {
    ModelParams p;
    p.a = opts.a;
    p.b = opts.b;
    p.g = g;
    return p;
}

// --- dyn ------------------------------------------------------------------

void run_dyn_fixed_points(const CommonOpts& opts, double g, bool include_complex) {
    if (opts.format != "json") {
        throw BadParams("dyn fixed-points supports --format json only");
    }
    const auto fps = dynamics::fixed_points(make_params(opts, g), include_complex);

    std::ostringstream buf;
    JsonWriter w(buf);
    w.begin_object();
    w.key("config").begin_object();
    write_config_fields(w, "dyn fixed-points", opts);
    w.field("g", g);
    w.field("include_complex", include_complex);
    w.end_object();
    w.field("method", "analytic-jacobian");
    w.key("fixed_points").begin_array();
    for (const auto& fp : fps) {
        w.begin_object();
        w.field("family", fp.family);
        w.field("x_re", fp.x.real()).field("x_im", fp.x.imag());
        w.field("y_re", fp.y.real()).field("y_im", fp.y.imag());
        w.field("complex_location", fp.complex_location);
        w.field("lambda1_re", fp.lambda1.real()).field("lambda1_im", fp.lambda1.imag());
        w.field("lambda2_re", fp.lambda2.real()).field("lambda2_im", fp.lambda2.imag());
        w.field("lambda_sq", fp.lambda_sq);
        w.field("class", dynamics::to_string(fp.cls));
        w.end_object();
    }
    w.end_array();
    w.end_object().finish();
    emit(opts, buf.str());
}

void run_dyn_scan(const CommonOpts& opts, double g_min, double g_max, int steps) {
    const auto rows = dynamics::bifurcation_scan(g_min, g_max, steps);
    std::ostringstream buf;
    if (opts.format == "csv") {
        dynamics::write_scan_csv(buf, rows);
    } else {
        JsonWriter w(buf);
        w.begin_object();
        w.key("config").begin_object();
        write_config_fields(w, "dyn scan", opts);
        w.field("g_min", g_min).field("g_max", g_max).field("steps", steps);
        w.end_object();
        w.field("method", "analytic-jacobian");
        w.key("rows").begin_array();
        for (const auto& row : rows) {
            w.begin_object();
            w.field("g", row.g);
            w.field("fp", row.family);
            w.field("re_lambda", row.re_lambda);
            w.field("im_lambda", row.im_lambda);
            w.field("class", dynamics::to_string(row.cls));
            w.end_object();
        }
        w.end_array();
        w.end_object().finish();
    }
    emit(opts, buf.str());
}

void run_dyn_integrate(const CommonOpts& opts, double g, double x0, double y0,
                       double dt, double t_max) {
    const auto tr =
        dynamics::integrate(make_params(opts, g), {x0, y0}, dt, t_max);
    std::ostringstream buf;
    if (opts.format == "csv") {
        dynamics::write_trajectory_csv(buf, tr);
        std::cerr << "method=" << tr.method
                  << " max_h_drift=" << format_float(tr.max_h_drift)
                  << " blew_up=" << (tr.blew_up ? "true" : "false") << "\n";
    } else {
        JsonWriter w(buf);
        w.begin_object();
        w.key("config").begin_object();
        write_config_fields(w, "dyn integrate", opts);
        w.field("g", g).field("x0", x0).field("y0", y0);
        w.field("dt", dt).field("t_max", t_max);
        w.end_object();
        w.field("method", tr.method);
        w.field("blew_up", tr.blew_up);
        w.field("max_h_drift", tr.max_h_drift);
        w.key("samples").begin_array();
        for (const auto& s : tr.samples) {
            w.begin_array().value(s.t).value(s.x).value(s.y).value(s.H).end_array();
        }
        w.end_array();
        w.end_object().finish();
    }
    emit(opts, buf.str());
}

// --- canon ----------------------------------------------------------------

void run_canon_check(const CommonOpts& opts, double g, int samples,
                     unsigned long seed) {
    if (opts.format != "json") {
        throw BadParams("canon check supports --format json only");
    }
    const ModelParams p = make_params(opts, g);
    const double det_dev = hamiltonics::verify_canonical(p, samples, seed);

    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> qdist(-2.0, 2.0);
    double pullback = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double Q = qdist(rng);
        const double g3 = p.g * p.g * p.g;
        const double q2 = Q * Q;
        const double scale = 1.0 + std::abs(8 * p.a * q2 * q2 * q2 / g3) +
                             std::abs(12 * p.a * q2 * q2 / g3) +
                             std::abs((6 * p.a / g3 - 2 * p.b / p.g) * q2) +
                             std::abs(p.b / p.g - p.a / g3);
        const double diff = hamiltonics::potential_Q(p, Q) -
                            hamiltonics::potential_x(p, (2 * q2 - 1) / p.g);
        pullback = std::max(pullback, std::abs(diff) / scale);
    }

    const hamiltonics::GaugeParams gp = hamiltonics::gauge_params(p);
    const double g5 = std::pow(p.g, 5.0);
    const double alpha_beta =
        std::abs(gp.alpha * gp.beta + 12 * p.a / g5) / (12 * p.a / g5);
    const double beta_sq =
        std::abs(gp.beta * gp.beta - 8 * p.a / g5) / (8 * p.a / g5);

    std::ostringstream buf;
    JsonWriter w(buf);
    w.begin_object();
    w.key("config").begin_object();
    write_config_fields(w, "canon check", opts);
    w.field("g", g).field("samples", samples).field("seed", static_cast<long>(seed));
    w.end_object();
    w.field("method", "central-differences h=1e-6");
    w.field("max_det_deviation", det_dev);
    w.field("max_pullback_residual", pullback);
    w.key("gauge_identities").begin_object();
    w.field("alpha_beta", alpha_beta);
    w.field("beta_sq", beta_sq);
    w.end_object();
    w.end_object().finish();
    emit(opts, buf.str());
}

// --- qes ------------------------------------------------------------------

bdpoly::Branch parse_branch(const std::string& name) {
    return name == "printed" ? bdpoly::Branch::Printed : bdpoly::Branch::Table;
}

void run_qes_g(const CommonOpts& opts, int J, const std::string& branch) {
    if (opts.format != "json") throw BadParams("qes g supports --format json only");
    const auto roots = bdpoly::solve_qes_g(J, opts.a, opts.b, parse_branch(branch));
    std::ostringstream buf;
    JsonWriter w(buf);
    w.begin_object();
    w.key("config").begin_object();
    write_config_fields(w, "qes g", opts);
    w.field("J", J).field("branch", branch);
    w.end_object();
    w.field("method", "sign-scan+bisection");
    w.key("roots").values(roots);
    w.end_object().finish();
    emit(opts, buf.str());
}

void write_spectrum_fields(JsonWriter& w, const bdpoly::QESSpectrum& sp) {
    w.field("J", sp.J);
    w.field("g", sp.g);
    if (sp.branch) {
        w.field("branch", bdpoly::to_string(*sp.branch));
    } else {
        w.key("branch").null();
    }
    w.key("energies").values(sp.energies);
    w.key("diagnostics").begin_object();
    w.field("method", bdpoly::to_string(sp.diagnostics.method));
    w.field("max_cross_method_deviation", sp.diagnostics.max_cross_method_dev);
    if (sp.diagnostics.reality_certificate) {
        w.field("reality_certificate", *sp.diagnostics.reality_certificate);
    } else {
        w.key("reality_certificate").null();
    }
    w.field("factorization_max_residual", sp.diagnostics.factorization_max_residual);
    w.field("structural_root", sp.diagnostics.structural_root);
    w.field("structural_root_rel_dev", sp.diagnostics.structural_root_rel_dev);
    w.end_object();
}

void run_qes_spectrum(const CommonOpts& opts, int J, std::optional<double> g,
                      const std::string& branch, const std::string& method) {
    if (opts.format != "json") {
        throw BadParams("qes spectrum supports --format json only");
    }
    const bdpoly::RootMethod rm = (method == "companion")
                                      ? bdpoly::RootMethod::Companion
                                      : bdpoly::RootMethod::Tridiagonal;
    double g_value;
    std::optional<bdpoly::Branch> branch_used;
    if (g) {
        g_value = *g;
    } else {
        branch_used = parse_branch(branch);
        g_value = bdpoly::solve_qes_g(J, opts.a, opts.b, *branch_used).front();
    }
    bdpoly::QESSpectrum sp = bdpoly::spectrum(make_params(opts, g_value), J,
                                              g_value, rm);
    sp.branch = branch_used;

    std::ostringstream buf;
    JsonWriter w(buf);
    w.begin_object();
    w.key("config").begin_object();
    write_config_fields(w, "qes spectrum", opts);
    w.field("J", J);
    if (g) w.field("g", *g); else w.key("g").null();
    w.field("branch", branch).field("root_method", method);
    w.end_object();
    write_spectrum_fields(w, sp);
    w.end_object().finish();
    emit(opts, buf.str());
}

void run_qes_table(const CommonOpts& opts, int j_max) {
    const auto report = bdpoly::reproduce_published_table(j_max);
    std::ostringstream buf;
    if (opts.format == "csv") {
        buf << "J,g,E_index,E_paper,E_recomputed,verdict\n";
        for (const auto& row : report.rows) {
            for (const auto& entry : row.energies) {
                buf << row.J << ',' << format_float(row.g_published) << ','
                    << entry.index << ',' << format_float(entry.published) << ','
                    << format_float(entry.recomputed) << ','
                    << (entry.match ? "match" : "mismatch") << '\n';
            }
        }
    } else {
        JsonWriter w(buf);
        w.begin_object();
        w.key("config").begin_object();
        write_config_fields(w, "qes table", opts);
        w.field("j_max", j_max);
        w.end_object();
        w.field("method", report.method);
        w.key("rows").begin_array();
        for (const auto& row : report.rows) {
            w.begin_object();
            w.field("J", row.J);
            w.field("g_published", row.g_published);
            w.field("g_recomputed", row.g_recomputed);
            w.field("g_match", row.g_match);
            w.key("energies").begin_array();
            for (const auto& entry : row.energies) {
                w.begin_object();
                w.field("index", entry.index);
                w.field("published", entry.published);
                w.field("recomputed", entry.recomputed);
                w.field("match", entry.match);
                w.end_object();
            }
            w.end_array();
            w.field("row_match", row.row_match);
            w.end_object();
        }
        w.end_array();
        w.field("max_table_g", report.max_table_g);
        w.field("max_g_matches_published", report.max_g_matches_published);
        w.end_object().finish();
    }
    emit(opts, buf.str());
}

void run_qes_verify(const CommonOpts& opts, int J, std::optional<double> g,
                    int k_max, int n_max) {
    if (opts.format != "json") {
        throw BadParams("qes verify supports --format json only");
    }
    const double g_value =
        g ? *g : bdpoly::solve_qes_g(J, opts.a, opts.b, bdpoly::Branch::Table).front();
    const ModelParams p = make_params(opts, g_value);

    const auto sp = bdpoly::spectrum(p, J, g_value, bdpoly::RootMethod::Tridiagonal);
    const double fact = bdpoly::factorization_check(p, J, g_value, k_max);
    const auto fe = bdpoly::flavor_equivalence(p, J);

    std::ostringstream buf;
    JsonWriter w(buf);
    w.begin_object();
    w.key("config").begin_object();
    write_config_fields(w, "qes verify", opts);
    w.field("J", J);
    if (g) w.field("g", *g); else w.key("g").null();
    w.field("k_max", k_max).field("n_max", n_max);
    w.end_object();
    w.field("g_used", g_value);
    w.field("method", "tridiagonal+companion");
    w.field("factorization_max_residual", fact);
    if (sp.diagnostics.reality_certificate) {
        w.field("reality_certificate", *sp.diagnostics.reality_certificate);
    } else {
        w.key("reality_certificate").null();
    }
    w.key("flavor_equivalence").begin_object();
    w.key("printed").begin_array();
    for (const auto& dev : fe.printed) {
        w.begin_object();
        w.field("g", dev.g);
        w.field("max_rel_dev", dev.max_rel_dev);
        w.field("equivalent", dev.equivalent);
        w.end_object();
    }
    w.end_array();
    w.key("table").begin_object();
    w.field("g", fe.table.g);
    w.field("max_rel_dev", fe.table.max_rel_dev);
    w.field("equivalent", fe.table.equivalent);
    w.end_object();
    w.end_object();
    w.key("eta_diagnostics").begin_array();
    for (double E : sp.energies) {
        const auto series = bdpoly::eta_series(p, E, n_max);
        w.begin_object();
        w.field("energy", E);
        if (series.truncation_index) {
            w.field("truncation_index", *series.truncation_index);
        } else {
            w.key("truncation_index").null();
        }
        w.field("tail_max_rel", series.tail_max_rel);
        if (series.residual) {
            w.field("residual", *series.residual);
        } else {
            w.key("residual").null();
        }
        w.end_object();
    }
    w.end_array();
    w.end_object().finish();
    emit(opts, buf.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical and quasi-exactly-solvable analysis of a "
                 "PT-symmetric planar quadratic system"};
    app.require_subcommand(1);

    // dyn
    CLI::App* dyn = app.add_subcommand("dyn", "classical flow analysis");
    dyn->require_subcommand(1);

    CommonOpts fp_opts;
    double fp_g = 0.0;
    bool fp_complex = false;
    CLI::App* fixed = dyn->add_subcommand("fixed-points", "fixed points and stability");
    add_common(fixed, fp_opts, "json");
    fixed->add_option("--g", fp_g, "family parameter")->required();
    fixed->add_flag("--include-complex", fp_complex, "also report complex pairs");

    CommonOpts scan_opts;
    double scan_min = -2.0, scan_max = 2.0;
    int scan_steps = 101;
    CLI::App* scan = dyn->add_subcommand("scan", "bifurcation scan over g");
    add_common(scan, scan_opts, "csv");
    scan->add_option("--g-min", scan_min, "scan start")->capture_default_str();
    scan->add_option("--g-max", scan_max, "scan end")->capture_default_str();
    scan->add_option("--steps", scan_steps, "grid points")->capture_default_str();

    CommonOpts int_opts;
    double int_g = 0.0, int_x0 = 0.0, int_y0 = 0.0, int_dt = 1e-3, int_tmax = 100.0;
    CLI::App* integ = dyn->add_subcommand("integrate", "RK4 trajectory with H column");
    add_common(integ, int_opts, "csv");
    integ->add_option("--g", int_g, "family parameter")->required();
    integ->add_option("--x0", int_x0, "initial x")->capture_default_str();
    integ->add_option("--y0", int_y0, "initial y")->capture_default_str();
    integ->add_option("--dt", int_dt, "step size")->capture_default_str();
    integ->add_option("--t-max", int_tmax, "final time")->capture_default_str();

    // canon
    CLI::App* canon = app.add_subcommand("canon", "canonical transformation checks");
    canon->require_subcommand(1);
    CommonOpts canon_opts;
    double canon_g = 0.0;
    int canon_samples = 100;
    unsigned long canon_seed = 1;
    CLI::App* check = canon->add_subcommand("check", "bracket, pullback and gauge identities");
    add_common(check, canon_opts, "json");
    check->add_option("--g", canon_g, "family parameter")->required();
    check->add_option("--samples", canon_samples, "sample count")->capture_default_str();
    check->add_option("--seed", canon_seed, "RNG seed")->capture_default_str();

    // qes
    CLI::App* qes = app.add_subcommand("qes", "quasi-exactly-solvable spectrum tools");
    qes->require_subcommand(1);

    CommonOpts g_opts;
    int g_J = 1;
    std::string g_branch = "table";
    CLI::App* qes_g = qes->add_subcommand("g", "solve the quantization condition for g");
    add_common(qes_g, g_opts, "json");
    qes_g->add_option("--J", g_J, "level count")->required();
    qes_g->add_option("--branch", g_branch, "sign branch")
        ->check(CLI::IsMember({"table", "printed"}))
        ->capture_default_str();

    CommonOpts sp_opts;
    int sp_J = 1;
    double sp_g = 0.0;
    bool sp_g_set = false;
    std::string sp_branch = "table", sp_method = "tri";
    CLI::App* qes_sp = qes->add_subcommand("spectrum", "QES energies from the critical polynomial");
    add_common(qes_sp, sp_opts, "json");
    qes_sp->add_option("--J", sp_J, "level count")->required();
    CLI::Option* sp_g_opt = qes_sp->add_option("--g", sp_g, "explicit g (default: branch root)");
    qes_sp->add_option("--branch", sp_branch, "sign branch")
        ->check(CLI::IsMember({"table", "printed"}))
        ->capture_default_str();
    qes_sp->add_option("--method", sp_method, "root method")
        ->check(CLI::IsMember({"tri", "companion"}))
        ->capture_default_str();

    CommonOpts tbl_opts;
    int tbl_jmax = 10;
    CLI::App* qes_tbl = qes->add_subcommand("table", "reproduce the published table with verdicts");
    add_common(qes_tbl, tbl_opts, "json");
    qes_tbl->add_option("--j-max", tbl_jmax, "largest J")->capture_default_str();

    CommonOpts ver_opts;
    int ver_J = 1, ver_kmax = 5, ver_nmax = 40;
    double ver_g = 0.0;
    CLI::App* qes_ver = qes->add_subcommand("verify", "factorization, reality and flavor checks");
    add_common(qes_ver, ver_opts, "json");
    qes_ver->add_option("--J", ver_J, "level count")->required();
    CLI::Option* ver_g_opt = qes_ver->add_option("--g", ver_g, "explicit g (default: table root)");
    qes_ver->add_option("--k-max", ver_kmax, "factorization depth")->capture_default_str();
    qes_ver->add_option("--n-max", ver_nmax, "eta series length")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (*fixed) run_dyn_fixed_points(fp_opts, fp_g, fp_complex);
        if (*scan) run_dyn_scan(scan_opts, scan_min, scan_max, scan_steps);
        if (*integ) run_dyn_integrate(int_opts, int_g, int_x0, int_y0, int_dt, int_tmax);
        if (*check) run_canon_check(canon_opts, canon_g, canon_samples, canon_seed);
        if (*qes_g) run_qes_g(g_opts, g_J, g_branch);
        if (*qes_sp) {
            sp_g_set = sp_g_opt->count() > 0;
            run_qes_spectrum(sp_opts, sp_J,
                             sp_g_set ? std::optional<double>(sp_g) : std::nullopt,
                             sp_branch, sp_method);
        }
        if (*qes_tbl) run_qes_table(tbl_opts, tbl_jmax);
        if (*qes_ver) {
            run_qes_verify(ver_opts, ver_J,
                           ver_g_opt->count() > 0 ? std::optional<double>(ver_g)
                                                  : std::nullopt,
                           ver_kmax, ver_nmax);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const BadParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
