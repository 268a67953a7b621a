#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qsh/config.hpp"
#include "qsh/errors.hpp"
#include "qsh/runner.hpp"

namespace {

int dispatch(const std::string& config_path, const std::vector<std::string>& overrides,
             const std::string& output_dir, const char* forced_mode) {
    std::vector<std::string> all = overrides;
    if (forced_mode) all.push_back(std::string("run.mode=") + forced_mode);
    if (!output_dir.empty()) all.push_back("run.output_dir=" + output_dir);
    const qsh::RunConfig cfg = qsh::load_config(config_path, all);
    return qsh::run(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral solver for the inertial Qian-Sheng nematic model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::vector<std::string> overrides;
    int threads = 1;
    if (const char* env = std::getenv("QSH_THREADS")) threads = std::atoi(env);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "config file")->required();
        cmd->add_option("--output-dir", output_dir, "override run.output_dir");
        cmd->add_option("--override", overrides, "section.key=value overrides")
            ->take_all();
        cmd->add_option("--threads", threads,
                        "worker threads (accepted for compatibility; the solver is serial)");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "execute the configured mode");
    add_common(cmd_run);
    CLI::App* cmd_validate = app.add_subcommand("validate", "check coefficients only");
    add_common(cmd_validate);
    CLI::App* cmd_compare =
        app.add_subcommand("compare-twistwave", "radial vs full twist-wave comparison");
    add_common(cmd_compare);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return dispatch(config_path, overrides, output_dir, nullptr);
        if (cmd_validate->parsed()) return dispatch(config_path, overrides, output_dir, "validate");
        return dispatch(config_path, overrides, output_dir, "twistwave_compare");
    } catch (const qsh::NonFiniteError& e) {
        std::cerr << "numerical failure: " << e.what() << " (t = " << e.t << ")\n";
        return 2;
    } catch (const qsh::ConfigError& e) {
        if (e.line > 0)
            std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const qsh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
