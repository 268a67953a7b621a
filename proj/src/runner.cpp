#include "qsh/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "qsh/diagnostics.hpp"
#include "qsh/dynamics.hpp"
#include "qsh/errors.hpp"
#include "qsh/operators.hpp"
#include "qsh/presets.hpp"
#include "qsh/snapshot.hpp"
#include "qsh/twistwave.hpp"

namespace qsh {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) {
        file_ = std::fopen(path.string().c_str(), "w");
        if (!file_) throw IoError("cannot open for writing: " + path.string());
        std::fprintf(file_, "%s\n", header.c_str());
    }
    ~CsvWriter() {
        if (file_) std::fclose(file_);
    }
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            std::fprintf(file_, i + 1 == values.size() ? "%.17g\n" : "%.17g,", values[i]);
    }

  private:
    std::FILE* file_ = nullptr;
};

void write_json(const fs::path& path, const json& j) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw IoError("cannot open for writing: " + path.string());
    const std::string text = j.dump(2);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
}

int run_validate(const RunConfig& cfg) {
    const ValidationReport rep = validate(cfg.coeffs, cfg.regime);
    std::cout << "regime: " << regime_name(cfg.regime) << "\n";
    std::cout << "ok: " << (rep.ok ? "true" : "false") << "\n";
    for (const auto& [cond, msg] : rep.violations)
        std::cout << "violation [" << cond << "]: " << msg << "\n";
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
    if (std::isfinite(rep.mu1_bar)) std::cout << "mu1_bar: " << rep.mu1_bar << "\n";

    fs::create_directories(cfg.output_dir);
    json j;
    j["mode"] = "validate";
    j["regime"] = regime_name(cfg.regime);
    j["ok"] = rep.ok;
    j["mu1_bar"] = rep.mu1_bar;
    json v = json::array();
    for (const auto& [cond, msg] : rep.violations) v.push_back({{"condition", cond}, {"message", msg}});
    j["violations"] = v;
    j["warnings"] = rep.warnings;
    write_json(fs::path(cfg.output_dir) / "summary.json", j);
    return rep.ok ? 0 : 1;
}

int run_simulation(const RunConfig& cfg) {
    const fs::path outdir(cfg.output_dir);
    fs::create_directories(outdir);

    SimState state = initial_data_preset(cfg.initial, cfg.grid, cfg.seed);
    const bool q_only = cfg.mode == RunMode::QOnly;
    if (q_only)
        for (auto& c : state.v.components()) c.fill(0.0);

    StepOptions opts;
    opts.frozen_velocity = q_only;
    opts.mollifier_cut = cfg.mollifier_n;

    Coefficients cfl_coeffs = cfg.coeffs;
    if (q_only) cfl_coeffs.beta4 = 0.0;  // frozen velocity: no viscous limit
    const double dt = cfg.auto_cfl ? 0.5 * cfl_dt(state, cfl_coeffs) : cfg.dt;
    if (!(dt > 0.0)) throw InvalidArgument("step size is not positive");
    const long steps = std::lround(std::ceil(cfg.t_end / dt - 1e-12));

    CsvWriter csv(outdir / "energy.csv",
                  "t,kinetic,rotational,elastic,bulk,total,diss_newtonian,diss_beta1,"
                  "diss_rotational,cross_mu2tilde,cross_mu2,constraint_residual");
    auto emit = [&](const SimState& s, const EnergyBreakdown& e) {
        csv.row({s.t, e.kinetic, e.rotational, e.elastic, e.bulk, e.total,
                 e.dissipation_newtonian, e.dissipation_beta1, e.dissipation_rotational,
                 e.cross_mu2tilde, e.cross_mu2,
                 twist_constraint_residual(s.q, s.w, cfg.coeffs)});
    };

    EnergyBreakdown e0 = energy_breakdown(state, cfg.coeffs, cfg.elastic_factor);
    emit(state, e0);
    double energy_prev = e0.total;
    double max_increase = 0.0;
    double max_residual = 0.0;

    json summary;
    summary["mode"] = run_mode_name(cfg.mode);
    summary["seed"] = cfg.seed;
    summary["dt"] = dt;
    summary["steps_planned"] = steps;
    summary["energy_initial"] = e0.total;

    long performed = 0;
    std::string status = "ok";
    double failure_time = std::numeric_limits<double>::quiet_NaN();
    try {
        for (long s = 1; s <= steps; ++s) {
            SimState next = step_rk4(state, cfg.coeffs, dt, opts);
            state = std::move(next);
            ++performed;
            const EnergyBreakdown e = energy_breakdown(state, cfg.coeffs, cfg.elastic_factor);
            max_increase = std::max(max_increase, e.total - energy_prev);
            energy_prev = e.total;
            if (s % cfg.output_every == 0 || s == steps) emit(state, e);
            if (cfg.snapshot_every > 0 && s % cfg.snapshot_every == 0) {
                char name[48];
                std::snprintf(name, sizeof name, "snapshot_%08ld.qsh", s);
                write_snapshot(state, (outdir / name).string());
            }
        }
        write_snapshot(state, (outdir / "final.qsh").string());
    } catch (const NonFiniteError& err) {
        status = "nonfinite";
        failure_time = err.t;
        write_snapshot(state, (outdir / "last_good.qsh").string());
    }

    const EnergyBreakdown ef = energy_breakdown(state, cfg.coeffs, cfg.elastic_factor);
    max_residual = twist_constraint_residual(state.q, state.w, cfg.coeffs);
    summary["status"] = status;
    summary["steps_performed"] = performed;
    summary["t_final"] = state.t;
    if (status == "nonfinite") summary["failure_time"] = failure_time;
    summary["energy_final"] = ef.total;
    summary["max_energy_increase"] = max_increase;
    summary["monotone"] = max_increase <= 1e-8 * std::abs(e0.total) + 1e-300;
    summary["final_norm_v"] = l2_norm(state.v);
    summary["final_norm_q"] = l2_norm(state.q);
    summary["final_norm_w"] = l2_norm(state.w);
    summary["final_constraint_residual"] = max_residual;
    write_json(outdir / "summary.json", summary);

    return status == "ok" ? 0 : 2;
}

RadialState bump_profile(const RadialGrid& g, double amplitude, double width,
                         double ft_amplitude) {
    RadialState s;
    s.f.resize(static_cast<std::size_t>(g.cells));
    s.ft.resize(static_cast<std::size_t>(g.cells));
    for (int j = 0; j < g.cells; ++j) {
        const double r = g.r(j);
        const double shape = r * r * std::exp(-(r / width) * (r / width));
        s.f[static_cast<std::size_t>(j)] = amplitude * shape;
        s.ft[static_cast<std::size_t>(j)] = ft_amplitude * shape;
    }
    return s;
}

int run_twistwave(const RunConfig& cfg) {
    const fs::path outdir(cfg.output_dir);
    fs::create_directories(outdir);

    const RadialGrid rgrid =
        make_radial_grid(cfg.twistwave.outer_radius, cfg.twistwave.cells, cfg.grid.dim);
    const RadialState initial =
        bump_profile(rgrid, cfg.twistwave.amplitude, cfg.twistwave.width, cfg.twistwave.ft_amplitude);
    {
        CsvWriter profile(outdir / "profile_initial.csv", "r,f,ft");
        for (int j = 0; j < rgrid.cells; ++j)
            profile.row({rgrid.r(j), initial.f[static_cast<std::size_t>(j)],
                         initial.ft[static_cast<std::size_t>(j)]});
    }

    CompareOptions opts;
    opts.dt_radial = cfg.twistwave.dt_radial;
    opts.samples = cfg.twistwave.samples;
    if (!cfg.auto_cfl) opts.dt_full = cfg.dt;

    int status = 0;
    json summary;
    summary["mode"] = "twistwave_compare";
    try {
        const CompareReport report =
            compare_full_vs_radial(initial, cfg.coeffs, cfg.grid, rgrid, cfg.t_end, opts);
        CsvWriter csv(outdir / "compare.csv", "t,l2_discrepancy,constraint_residual");
        for (const auto& s : report.samples)
            csv.row({s.t, s.l2_discrepancy, std::max(s.residual_full, s.residual_radial)});
        summary["final_discrepancy"] = report.final_discrepancy;
        summary["max_constraint_residual"] = report.max_constraint_residual;
        summary["max_origin_value"] = report.max_origin_value;
        summary["max_origin_slope"] = report.max_origin_slope;
        summary["warnings"] = report.warnings;
        summary["status"] = "ok";
        for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
    } catch (const NonFiniteError& err) {
        summary["status"] = "nonfinite";
        summary["failure_time"] = err.t;
        status = 2;
    }
    write_json(outdir / "summary.json", summary);
    return status;
}

}  // namespace

int run(const RunConfig& cfg) {
    switch (cfg.mode) {
        case RunMode::Validate: return run_validate(cfg);
        case RunMode::Full:
        case RunMode::QOnly: return run_simulation(cfg);
        case RunMode::TwistwaveCompare: return run_twistwave(cfg);
    }
    throw InvalidArgument("unhandled run mode");
}

}  // namespace qsh
