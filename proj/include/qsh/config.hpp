#ifndef QSH_CONFIG_HPP
#define QSH_CONFIG_HPP

#include <cstdint>
#include <span>
#include <string>

#include "qsh/coefficients.hpp"
#include "qsh/diagnostics.hpp"
#include "qsh/grid.hpp"

namespace qsh {

enum class RunMode { Full, QOnly, TwistwaveCompare, Validate };

/// Parameters of the built-in initial data presets; which ones matter
/// depends on the preset.
struct InitialData {
    std::string preset = "zero";  // zero | taylor_green | random_smooth |
                                  // uniaxial_constant | hedgehog_bump
    std::string snapshot;         // non-empty: load state from file instead
    double amplitude = 0.1;
    double envelope_modes = 4.0;   // random_smooth: k0 of exp(-|k|^2/k0^2), in mode units
    double scalar_order = 0.5;     // uniaxial_constant
    double width = 0.3;            // hedgehog_bump: gaussian width of f/r^2
    double ft_amplitude = 0.0;     // hedgehog_bump: amplitude of the f_t profile
};

struct TwistwaveConfig {
    double outer_radius = 2.8;
    int cells = 256;
    double amplitude = 0.5;
    double width = 0.3;
    double ft_amplitude = 0.0;
    double dt_radial = 0.0;  // 0: radial CFL
    int samples = 8;
};

struct RunConfig {
    Coefficients coeffs;
    Regime regime = Regime::EnergyDecay;
    Grid grid;
    double dt = 0.0;  // used when auto_cfl is false
    bool auto_cfl = true;
    double t_end = 1.0;
    int output_every = 10;
    InitialData initial;
    RunMode mode = RunMode::Full;
    int mollifier_n = -1;  // < 0: plain dealiased stepping
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int snapshot_every = 0;  // 0: final snapshot only
    ElasticFactor elastic_factor = ElasticFactor::Half;
    TwistwaveConfig twistwave;
};

/// Parse a sectioned key=value file. Unknown sections or keys are hard
/// errors; so are malformed lines (ConfigError carries the line number).
/// Overrides of the form "section.key=value" are merged before validation
/// and obey the same rules.
RunConfig load_config(const std::string& path,
                      std::span<const std::string> overrides = {});

const char* run_mode_name(RunMode mode);

}  // namespace qsh

#endif
