#include "qsh/config.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>

#include "qsh/errors.hpp"
#include "qsh/field.hpp"

namespace qsh {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, RawEntry>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const RawEntry& e) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + e.value, e.line);
    }
}

std::int64_t to_int(const std::string& key, const RawEntry& e) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + e.value, e.line);
    }
}

class SectionReader {
  public:
    SectionReader(const std::string& name, const Section* section)
        : name_(name), section_(section) {}

    std::optional<RawEntry> take(const std::string& key) {
        if (!section_) return std::nullopt;
        auto it = section_->find(key);
        if (it == section_->end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    void get(const std::string& key, double& out) {
        if (auto e = take(key)) out = to_double(name_ + "." + key, *e);
    }
    void get(const std::string& key, int& out) {
        if (auto e = take(key)) out = static_cast<int>(to_int(name_ + "." + key, *e));
    }
    void get(const std::string& key, std::uint64_t& out) {
        if (auto e = take(key)) out = static_cast<std::uint64_t>(to_int(name_ + "." + key, *e));
    }
    void get(const std::string& key, std::string& out) {
        if (auto e = take(key)) out = e->value;
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, entry] : *section_)
            if (!used_.count(key))
                throw ConfigError("unknown key '" + name_ + "." + key + "'", entry.line);
    }

  private:
    std::string name_;
    const Section* section_;
    std::set<std::string> used_;
};

std::map<std::string, Section> parse_sections(std::istream& in) {
    std::map<std::string, Section> out;
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", lineno);
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) throw ConfigError("empty section name", lineno);
            out[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
        if (current.empty()) throw ConfigError("key outside any section", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (out[current].count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        out[current][key] = RawEntry{value, lineno};
    }
    return out;
}

RunConfig build_config(std::map<std::string, Section>& sections) {
    static const std::set<std::string> known_sections = {
        "coefficients", "grid", "time", "initial_data", "run", "twistwave"};
    for (const auto& [name, sec] : sections)
        if (!known_sections.count(name)) {
            const int line = sec.empty() ? 0 : sec.begin()->second.line;
            throw ConfigError("unknown section '" + name + "'", line);
        }

    RunConfig cfg;
    auto section = [&](const char* name) -> const Section* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };

    {
        SectionReader r("coefficients", section("coefficients"));
        std::string preset;
        r.get("preset", preset);
        if (!preset.empty()) {
            if (preset != "mbba")
                throw ConfigError("unknown coefficients preset '" + preset + "'");
            double mu1 = 1.0;
            if (auto e = r.take("mu1")) mu1 = to_double("coefficients.mu1", *e);
            cfg.coeffs = preset_mbba(mu1);
        }
        r.get("a", cfg.coeffs.a);
        r.get("b", cfg.coeffs.b);
        r.get("c", cfg.coeffs.c);
        r.get("L", cfg.coeffs.L);
        r.get("J", cfg.coeffs.J);
        r.get("mu1", cfg.coeffs.mu1);
        r.get("mu2", cfg.coeffs.mu2);
        r.get("mu2_tilde", cfg.coeffs.mu2_tilde);
        r.get("beta1", cfg.coeffs.beta1);
        r.get("beta4", cfg.coeffs.beta4);
        r.get("beta5", cfg.coeffs.beta5);
        r.get("beta6", cfg.coeffs.beta6);
        std::string regime;
        r.get("regime", regime);
        if (!regime.empty()) cfg.regime = regime_from_name(regime);
        r.finish();
    }
    {
        SectionReader r("grid", section("grid"));
        int dim = 2, n = 64;
        double length = cfg.grid.domain_length;
        r.get("dim", dim);
        r.get("n", n);
        r.get("domain_length", length);
        cfg.grid = make_grid(dim, n, length);
        cfg.coeffs.dim = dim;
        r.finish();
    }
    {
        SectionReader r("time", section("time"));
        if (auto e = r.take("dt")) {
            if (e->value == "auto") {
                cfg.auto_cfl = true;
            } else {
                cfg.dt = to_double("time.dt", *e);
                cfg.auto_cfl = false;
                if (!(cfg.dt > 0.0)) throw ConfigError("time.dt must be positive", e->line);
            }
        }
        r.get("t_end", cfg.t_end);
        r.get("output_every", cfg.output_every);
        if (!(cfg.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
        if (cfg.output_every < 1) throw ConfigError("time.output_every must be >= 1");
        r.finish();
    }
    {
        SectionReader r("initial_data", section("initial_data"));
        r.get("preset", cfg.initial.preset);
        r.get("snapshot", cfg.initial.snapshot);
        r.get("amplitude", cfg.initial.amplitude);
        r.get("envelope_modes", cfg.initial.envelope_modes);
        r.get("scalar_order", cfg.initial.scalar_order);
        r.get("width", cfg.initial.width);
        r.get("ft_amplitude", cfg.initial.ft_amplitude);
        r.finish();
        if (!cfg.initial.snapshot.empty() && !std::filesystem::exists(cfg.initial.snapshot))
            throw ConfigError("initial_data.snapshot does not exist: " + cfg.initial.snapshot);
    }
    {
        SectionReader r("run", section("run"));
        std::string mode;
        r.get("mode", mode);
        if (!mode.empty()) {
            if (mode == "full") cfg.mode = RunMode::Full;
            else if (mode == "q_only") cfg.mode = RunMode::QOnly;
            else if (mode == "twistwave_compare") cfg.mode = RunMode::TwistwaveCompare;
            else if (mode == "validate") cfg.mode = RunMode::Validate;
            else throw ConfigError("unknown run.mode '" + mode + "'");
        }
        r.get("mollifier_n", cfg.mollifier_n);
        r.get("seed", cfg.seed);
        r.get("output_dir", cfg.output_dir);
        r.get("snapshot_every", cfg.snapshot_every);
        std::string elastic;
        r.get("elastic_factor", elastic);
        if (!elastic.empty()) {
            if (elastic == "half") cfg.elastic_factor = ElasticFactor::Half;
            else if (elastic == "quarter") cfg.elastic_factor = ElasticFactor::Quarter;
            else throw ConfigError("run.elastic_factor must be 'half' or 'quarter'");
        }
        r.finish();
    }
    {
        SectionReader r("twistwave", section("twistwave"));
        r.get("outer_radius", cfg.twistwave.outer_radius);
        r.get("cells", cfg.twistwave.cells);
        r.get("amplitude", cfg.twistwave.amplitude);
        r.get("width", cfg.twistwave.width);
        r.get("ft_amplitude", cfg.twistwave.ft_amplitude);
        r.get("dt_radial", cfg.twistwave.dt_radial);
        r.get("samples", cfg.twistwave.samples);
        r.finish();
    }
    return cfg;
}

}  // namespace

RunConfig load_config(const std::string& path, std::span<const std::string> overrides) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    auto sections = parse_sections(in);
    for (const std::string& assignment : overrides) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must look like section.key=value: " + assignment);
        const std::string key_path = trim(assignment.substr(0, eq));
        const std::string value = trim(assignment.substr(eq + 1));
        const auto dot = key_path.find('.');
        if (dot == std::string::npos)
            throw ConfigError("override key must be section.key: " + assignment);
        sections[key_path.substr(0, dot)][key_path.substr(dot + 1)] = RawEntry{value, 0};
    }
    return build_config(sections);
}

const char* run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Full: return "full";
        case RunMode::QOnly: return "q_only";
        case RunMode::TwistwaveCompare: return "twistwave_compare";
        case RunMode::Validate: return "validate";
    }
    return "?";
}

}  // namespace qsh
