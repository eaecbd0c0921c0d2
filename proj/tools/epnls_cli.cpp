#include "epnls/experiments.hpp"
#include "epnls/plasma.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace epnls;

namespace {

constexpr int kExitAcceptance = 2;
constexpr int kExitUsage = 1;

struct Options {
    RunConfig run;
    std::string coeffs_file;
    double t_end = 10.0;
    double output_every = 1.0;
    double t = 0.0;
    std::string order = "extended";
    std::vector<double> eps_list;
    int workers = 1;
    std::string csv;
    std::string kind = "k11";
    int j = 0, l = 1, n = 0;
    double kmin = -3.0, kmax = 3.0, lmin = -3.0, lmax = 3.0;
    int nk = 61, nl = 61;
    double delta = 0.1, weight_eps = 0.1;
};

std::string out_path(const Options& o, const std::string& name) {
    std::filesystem::path dir = o.run.output_dir.empty() ? "." : o.run.output_dir;
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << text;
}

NlsCoefficients coefficients(const Options& o) {
    if (!o.coeffs_file.empty()) {
        NlsCoefficients c = NlsCoefficients::read(o.coeffs_file);
        if (std::abs(c.gamma - o.run.gamma) > 1e-12 || std::abs(c.k0 - o.run.k0) > 1e-12)
            throw std::invalid_argument("coefficient file does not match gamma/k0");
        return c;
    }
    return assemble_coefficients(o.run.gamma, o.run.k0);
}

AnsatzConfig initial_ansatz(const Options& o, AnsatzOrder order) {
    const RunConfig& r = o.run;
    r.validate();
    const Grid1D fg = r.grid();
    const Grid1D sg = slow_grid(fg, r.eps);
    return AnsatzConfig{r.eps, coefficients(o), gaussian_envelope(sg, r.amplitude, r.width, 0.5 * sg.length()), order,
                        r.cutoff_factor * std::abs(r.k0), fg};
}

int cmd_dispersion(const Options& o) {
    const auto rep = nonresonance_report(o.run.k0, DispersionParams(o.run.gamma));
    std::cout << rep.to_text();
    if (!o.csv.empty()) write_text(o.csv, rep.to_csv());
    return rep.passed ? 0 : kExitAcceptance;
}

int cmd_coeffs(const Options& o) {
    const NlsCoefficients c = assemble_coefficients(o.run.gamma, o.run.k0);
    std::cout << c.to_text();
    c.write(o.csv.empty() ? out_path(o, "coeffs.toml") : o.csv);
    return std::abs(c.nu2_imag) <= 1e-10 ? 0 : kExitAcceptance;
}

int cmd_kernels_check(const Options& o) {
    bool ok = true;
    for (const auto& c : kernel_certificates(o.run.gamma, o.run.k0, o.delta)) {
        std::printf("%-4s %-40s worst=%.3e tol=%.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst, c.tol);
        ok = ok && c.pass;
    }
    return ok ? 0 : kExitAcceptance;
}

int cmd_kernels_dump(const Options& o) {
    KernelKind kind;
    if (o.kind == "k01") kind = KernelKind::k01;
    else if (o.kind == "k10") kind = KernelKind::k10;
    else if (o.kind == "k11") kind = KernelKind::k11;
    else throw std::invalid_argument("unknown kernel kind " + o.kind);
    if (o.nk < 2 || o.nl < 2) throw std::invalid_argument("nk and nl must be at least 2");
    const DispersionParams p(o.run.gamma);
    const WeightParams w{o.delta, o.weight_eps};
    std::string s = "k,ell,re,im\n";
    char buf[160];
    for (int a = 0; a < o.nk; ++a)
        for (int b = 0; b < o.nl; ++b) {
            const double k = o.kmin + (o.kmax - o.kmin) * a / (o.nk - 1);
            const double ell = o.lmin + (o.lmax - o.lmin) * b / (o.nl - 1);
            cplx v(NAN, NAN);
            try {
                v = normalform_kernel(kind, o.j, o.l, o.n, k, ell, w, p);
            } catch (const NontrivialResonance&) {
            }
            std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", k, ell, v.real(), v.imag());
            s += buf;
        }
    if (o.csv.empty()) std::cout << s;
    else write_text(o.csv, s);
    return 0;
}

int cmd_simulate(const Options& o) {
    if (!(o.t_end >= 0.0) || !(o.output_every > 0.0)) throw std::invalid_argument("t_end and output_every must be positive");
    const AnsatzConfig cfg = initial_ansatz(o, AnsatzOrder::extended);
    PlasmaState s = build(cfg, 0.0);
    PlasmaSolver solver(cfg.grid, o.run.gamma);
    const double dt0 = o.run.dt > 0.0 ? o.run.dt : solver.cfl_limit(s);
    std::string diag = "t,mass,momentum,energy,entropy\n";
    char buf[256];
    int frame = 0;
    auto emit = [&]() {
        const Conserved c = conserved_diagnostics(s);
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e\n", s.time, c.mass, c.momentum, c.energy, c.entropy);
        diag += buf;
        std::snprintf(buf, sizeof buf, "snapshot_%04d.csv", frame++);
        write_snapshot_csv(s, out_path(o, buf));
    };
    emit();
    const int frames = static_cast<int>(std::ceil(o.t_end / o.output_every - 1e-9));
    int rc = 0;
    for (int f = 1; f <= frames; ++f) {
        const double target = std::min(o.t_end, f * o.output_every);
        const double span = target - s.time;
        const int n_sub = std::max(1, static_cast<int>(std::ceil(span / dt0 - 1e-9)));
        try {
            for (int i = 0; i < n_sub; ++i) s = solver.step_rk4(s, span / n_sub);
        } catch (const std::runtime_error& e) {
            std::cerr << "simulation stopped at t=" << s.time << ": " << e.what() << "\n";
            rc = kExitAcceptance;
            break;
        }
        s.time = target;
        emit();
    }
    write_text(out_path(o, "diagnostics.csv"), diag);
    return rc;
}

int cmd_ansatz(const Options& o) {
    AnsatzOrder order;
    if (o.order == "leading") order = AnsatzOrder::leading;
    else if (o.order == "extended") order = AnsatzOrder::extended;
    else throw std::invalid_argument("order must be leading or extended");
    AnsatzConfig cfg = initial_ansatz(o, order);
    if (o.t > 0.0) cfg.envelope = advance_envelope(cfg.envelope, o.run.eps * o.run.eps * o.t, cfg.coeffs, o.run.nls_dT_max);
    const PlasmaState s = build(cfg, o.t);
    std::string text = "x,rho,v,theta\n";
    char buf[200];
    for (int i = 0; i < cfg.grid.n_points(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", cfg.grid.x(i), s.rho.values[i], s.v.values[i],
                      s.theta.values[i]);
        text += buf;
    }
    write_text(o.csv.empty() ? out_path(o, "ansatz.csv") : o.csv, text);
    return 0;
}

int cmd_residual(const Options& o) {
    ResidualTemplate tpl;
    tpl.gamma = o.run.gamma;
    tpl.k0 = o.run.k0;
    tpl.n_points = o.run.n_points;
    tpl.amplitude = o.run.amplitude;
    tpl.width = o.run.width;
    tpl.cutoff_factor = o.run.cutoff_factor;
    tpl.containment = o.run.containment;
    const std::vector<double> eps = o.eps_list.empty() ? std::vector<double>{0.12, 0.08, 0.053} : o.eps_list;
    const ResidualScaling r = residual_scaling(eps, tpl);
    auto csv = [](const std::vector<ResidualReport>& reps) {
        std::string s = "eps,t,l2,h2\n";
        char buf[200];
        for (const auto& rep : reps)
            for (size_t i = 0; i < rep.t_samples.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", rep.eps, rep.t_samples[i], rep.l2_norms[i], rep.hs_norms[i]);
                s += buf;
            }
        return s;
    };
    write_text(out_path(o, "residual_leading.csv"), csv(r.leading));
    write_text(out_path(o, "residual_extended.csv"), csv(r.extended));
    std::printf("order_leading = %.6f\norder_extended = %.6f\nfit_rms_leading = %.3e\nfit_rms_extended = %.3e\n", r.order_leading,
                r.order_extended, r.fit_rms_leading, r.fit_rms_extended);
    const bool ok = r.power_law_ok && r.order_extended >= 2.2 && r.order_leading >= 1.3 &&
                    r.order_extended - r.order_leading >= 0.8;
    return ok ? 0 : kExitAcceptance;
}

int run_sweep(const Options& o, const std::vector<double>& eps, bool headline) {
    const SweepReport rep = sweep(o.run, eps, o.workers);
    write_text(out_path(o, "summary.csv"), rep.summary_csv());
    write_text(out_path(o, "samples.csv"), rep.samples_csv());
    bool all = true;
    for (const auto& r : rep.runs) {
        std::printf("eps = %.6g  sup_error_hs = %.6e  %s\n", r.eps, r.sup_error_hs, r.completed ? "completed" : r.failure.c_str());
        all = all && r.completed;
    }
    if (rep.has_order) std::printf("fitted_order = %.6f\n", rep.order);
    if (!headline) return all ? 0 : kExitAcceptance;
    return all && rep.has_order && rep.order >= 1.4 ? 0 : kExitAcceptance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler-Poisson modulation experiments"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML key-value file; flags override its keys");
    Options o;
    RunConfig& r = o.run;
    app.add_option("--gamma", r.gamma);
    app.add_option("--k0", r.k0);
    app.add_option("--eps", r.eps);
    app.add_option("--T0", r.T0);
    app.add_option("--n_points,--n-points", r.n_points);
    app.add_option("--length", r.length);
    app.add_option("--dt", r.dt);
    app.add_option("--samples,--sample_every", r.samples);
    app.add_option("--amplitude", r.amplitude);
    app.add_option("--width", r.width);
    app.add_option("--cutoff_factor", r.cutoff_factor);
    app.add_option("--containment", r.containment);
    app.add_option("--nls_dT_max", r.nls_dT_max);
    app.add_option("--output_dir,--output-dir", r.output_dir);
    app.add_option("--coeffs_file", o.coeffs_file);
    app.add_option("--t_end", o.t_end);
    app.add_option("--output_every", o.output_every);
    app.add_option("--eps-list,--eps_list", o.eps_list)->delimiter(',');
    app.add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    app.add_option("--csv,--out", o.csv, "output file");

    auto* disp = app.add_subcommand("dispersion", "nonresonance report");
    auto* coeffs = app.add_subcommand("coeffs", "NLS coefficients");
    auto* kernels = app.add_subcommand("kernels", "interaction kernel certificates and dumps");
    kernels->require_subcommand(1);
    auto* kcheck = kernels->add_subcommand("check", "run all kernel certificates");
    auto* kdump = kernels->add_subcommand("dump", "kernel values on a (k, ell) grid");
    for (auto* k : {kcheck, kdump}) k->add_option("--delta", o.delta);
    kdump->add_option("--kind", o.kind);
    kdump->add_option("--j", o.j);
    kdump->add_option("--l", o.l);
    kdump->add_option("--n", o.n);
    kdump->add_option("--kmin", o.kmin);
    kdump->add_option("--kmax", o.kmax);
    kdump->add_option("--lmin", o.lmin);
    kdump->add_option("--lmax", o.lmax);
    kdump->add_option("--nk", o.nk);
    kdump->add_option("--nl", o.nl);
    kdump->add_option("--weight_eps", o.weight_eps);
    auto* sim = app.add_subcommand("simulate", "evolve an ansatz-seeded state");
    auto* ans = app.add_subcommand("ansatz", "write the ansatz state");
    ans->add_option("--t", o.t);
    ans->add_option("--order", o.order);
    auto* res = app.add_subcommand("residual", "residual scaling in eps");
    auto* conv = app.add_subcommand("converge", "error order over the default eps ladder");
    auto* swp = app.add_subcommand("sweep", "validation runs over an eps list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (disp->parsed()) return cmd_dispersion(o);
        if (coeffs->parsed()) return cmd_coeffs(o);
        if (kcheck->parsed()) return cmd_kernels_check(o);
        if (kdump->parsed()) return cmd_kernels_dump(o);
        if (sim->parsed()) return cmd_simulate(o);
        if (ans->parsed()) return cmd_ansatz(o);
        if (res->parsed()) return cmd_residual(o);
        if (conv->parsed())
            return run_sweep(o, o.eps_list.empty() ? std::vector<double>{0.12, 0.09, 0.0675, 0.0506} : o.eps_list, true);
        if (swp->parsed()) {
            if (o.eps_list.empty()) throw std::invalid_argument("sweep needs --eps-list");
            return run_sweep(o, o.eps_list, false);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAcceptance;
    }
    return kExitUsage;
}
