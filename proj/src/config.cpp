#include "omsent/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "omsent/errors.hpp"
#include "omsent/presets.hpp"

namespace omsent {

namespace {

struct Field {
    std::string_view section;
    std::string_view key;
    std::function<void(ScenarioConfig&, std::string_view, const std::string&, std::size_t)> set;
    // empty optional: field unset, omitted from the canonical document
    std::function<std::optional<std::string>(const ScenarioConfig&)> get;
};

double real_value(std::string_view value, const std::string& path, std::size_t line) {
    auto parsed = parse_real(value);
    if (!parsed) throw ConfigError(path, line, "expected a real number, got '" + std::string(value) + "'");
    return *parsed;
}

int int_value(std::string_view value, const std::string& path, std::size_t line) {
    int out = 0;
    auto s = trim(value);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError(path, line, "expected an integer, got '" + s + "'");
    }
    return out;
}

bool bool_value(std::string_view value, const std::string& path, std::size_t line) {
    auto s = trim(value);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError(path, line, "expected a boolean, got '" + s + "'");
}

std::vector<double> list_value(std::string_view value, const std::string& path, std::size_t line) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(value)};
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(real_value(item, path, line));
    }
    return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string list_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_real(v[i]);
    }
    return out;
}

template <typename Member>
Field real_field(std::string_view section, std::string_view key, Member member) {
    return {section, key,
            [member](ScenarioConfig& c, std::string_view v, const std::string& p, std::size_t l) {
                c.*member = real_value(v, p, l);
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                return format_real(c.*member);
            }};
}

template <typename Member>
Field optional_real_field(std::string_view section, std::string_view key, Member member) {
    return {section, key,
            [member](ScenarioConfig& c, std::string_view v, const std::string& p, std::size_t l) {
                if (trim(v) == "auto") {
                    c.*member = std::nullopt;
                } else {
                    c.*member = real_value(v, p, l);
                }
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                if (!(c.*member)) return std::nullopt;
                return format_real(*(c.*member));
            }};
}

template <typename Member>
Field int_field(std::string_view section, std::string_view key, Member member) {
    return {section, key,
            [member](ScenarioConfig& c, std::string_view v, const std::string& p, std::size_t l) {
                c.*member = int_value(v, p, l);
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                return std::to_string(c.*member);
            }};
}

template <typename Member>
Field bool_field(std::string_view section, std::string_view key, Member member) {
    return {section, key,
            [member](ScenarioConfig& c, std::string_view v, const std::string& p, std::size_t l) {
                c.*member = bool_value(v, p, l);
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                return bool_text(c.*member);
            }};
}

template <typename Member>
Field string_field(std::string_view section, std::string_view key, Member member) {
    return {section, key,
            [member](ScenarioConfig& c, std::string_view v, const std::string&, std::size_t) {
                c.*member = trim(v);
            },
            [member](const ScenarioConfig& c) -> std::optional<std::string> {
                if ((c.*member).empty()) return std::nullopt;
                return c.*member;
            }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        using C = ScenarioConfig;
        std::vector<Field> f;
        f.push_back(real_field("system", "coupling", &C::coupling));
        f.push_back(real_field("system", "omega_m", &C::omega_m));
        f.push_back(real_field("system", "omega_m_over_gamma_m", &C::omega_m_over_gamma_m));
        f.push_back(real_field("system", "detuning_over_omega_m", &C::detuning_over_omega_m));
        f.push_back(real_field("system", "occupancy", &C::occupancy));
        f.push_back(bool_field("system", "noise", &C::noise));
        f.push_back(bool_field("system", "vacuum_noise", &C::vacuum_noise));

        f.push_back({"pulse", "shape",
                     [](C& c, std::string_view v, const std::string& p, std::size_t l) {
                         try {
                             c.shape = shape_from_string(trim(v));
                         } catch (const DomainError& e) {
                             throw ConfigError(p, l, e.what());
                         }
                     },
                     [](const C& c) -> std::optional<std::string> {
                         return std::string(to_string(c.shape));
                     }});
        f.push_back(real_field("pulse", "amplitude", &C::amplitude));
        f.push_back(real_field("pulse", "width_over_omega_m", &C::width_over_omega_m));
        f.push_back(real_field("pulse", "duration", &C::duration));
        f.push_back(optional_real_field("pulse", "center", &C::center));
        f.push_back(real_field("pulse", "plateau_fraction", &C::plateau_fraction));
        f.push_back(int_field("pulse", "count", &C::count));
        f.push_back(real_field("pulse", "gap", &C::gap));
        f.push_back(bool_field("pulse", "normalize_energy", &C::normalize_energy));
        f.push_back({"pulse", "samples",
                     [](C& c, std::string_view v, const std::string& p, std::size_t l) {
                         c.samples = list_value(v, p, l);
                     },
                     [](const C& c) -> std::optional<std::string> {
                         if (c.samples.empty()) return std::nullopt;
                         return list_text(c.samples);
                     }});
        f.push_back(real_field("pulse", "sample_step", &C::sample_step));

        f.push_back(optional_real_field("grid", "step", &C::step));
        f.push_back(optional_real_field("grid", "horizon", &C::horizon));
        f.push_back(int_field("grid", "stride", &C::stride));
        f.push_back(int_field("grid", "quadrature_nodes", &C::quadrature_nodes));

        f.push_back(string_field("output", "csv", &C::csv));
        f.push_back(string_field("output", "label", &C::label));
        f.push_back(bool_field("output", "covariance", &C::covariance));
        f.push_back({"output", "negativity_formula",
                     [](C& c, std::string_view v, const std::string& p, std::size_t l) {
                         const auto s = trim(v);
                         if (s == "standard") {
                             c.negativity_formula = NegativityFormula::standard;
                         } else if (s == "printed") {
                             c.negativity_formula = NegativityFormula::printed;
                         } else {
                             throw ConfigError(p, l, "expected 'standard' or 'printed', got '" + s + "'");
                         }
                     },
                     [](const C& c) -> std::optional<std::string> {
                         return c.negativity_formula == NegativityFormula::standard ? "standard"
                                                                                    : "printed";
                     }});
        return f;
    }();
    return table;
}

const Field* find_field(std::string_view section, std::string_view key) {
    for (const auto& f : fields()) {
        if (f.section == section && f.key == key) return &f;
    }
    return nullptr;
}

bool known_section(std::string_view s) {
    return s == "system" || s == "pulse" || s == "grid" || s == "output";
}

double resolved_step(const ScenarioConfig& c) {
    return c.step ? *c.step : 2.0 * std::numbers::pi / (kDefaultStepsPerPeriod * c.omega_m);
}

}  // namespace

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_real(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) return std::nullopt;
    auto one = [](std::string_view t) -> std::optional<double> {
        double out = 0.0;
        const char* first = t.data();
        if (!t.empty() && t.front() == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
        if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(out)) return std::nullopt;
        return out;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) return one(s);
    auto num = one(trim(std::string_view(s).substr(0, slash)));
    auto den = one(trim(std::string_view(s).substr(slash + 1)));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
}

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.amplitude = kCalibratedAmplitude;
    return c;
}

void set_config_field(ScenarioConfig& config, std::string_view path, std::string_view value,
                      std::size_t line) {
    const auto dot = path.find('.');
    const std::string p(path);
    if (dot == std::string_view::npos) throw ConfigError(p, line, "expected 'section.key'");
    const Field* f = find_field(path.substr(0, dot), path.substr(dot + 1));
    if (!f) throw ConfigError(p, line, "unknown key");
    f->set(config, value, p, line);
}

ScenarioConfig load_config(std::string_view text) {
    ScenarioConfig config = default_config();
    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> seen;  // key path -> line
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find_first_of("#;");
        std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("", line_no, "malformed section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_section(section)) {
                throw ConfigError(section, line_no, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (section.empty()) throw ConfigError(key, line_no, "key outside of a section");
        const std::string path = section + "." + key;
        if (!seen.emplace(path, line_no).second) throw ConfigError(path, line_no, "duplicate key");
        set_config_field(config, path, value, line_no);
    }
    try {
        validate_config(config);
    } catch (const ConfigError& e) {
        const auto it = seen.find(e.key());
        if (e.line() != 0 || it == seen.end()) throw;
        throw ConfigError(e.key(), it->second, e.detail());
    }
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& config) {
    std::string out;
    std::string_view section;
    for (const auto& f : fields()) {
        auto value = f.get(config);
        if (!value) continue;
        if (f.section != section) {
            if (!section.empty()) out += "\n";
            section = f.section;
            out += "[" + std::string(section) + "]\n";
        }
        out += std::string(f.key) + " = " + *value + "\n";
    }
    return out;
}

void validate_config(const ScenarioConfig& c, bool check_resolution) {
    auto require = [](bool ok, const char* path, const std::string& what) {
        if (!ok) throw ConfigError(path, 0, what);
    };
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    require(positive(c.coupling), "system.coupling", "must be > 0");
    require(positive(c.omega_m), "system.omega_m", "must be > 0");
    require(positive(c.omega_m_over_gamma_m), "system.omega_m_over_gamma_m", "must be > 0");
    require(std::isfinite(c.detuning_over_omega_m), "system.detuning_over_omega_m", "must be finite");
    require(std::isfinite(c.occupancy) && c.occupancy >= 0.0, "system.occupancy", "must be >= 0");
    require(std::isfinite(c.amplitude) && c.amplitude >= 0.0, "pulse.amplitude", "must be >= 0");
    require(positive(c.width_over_omega_m), "pulse.width_over_omega_m", "must be > 0");
    require(positive(c.duration), "pulse.duration", "must be > 0");
    require(!c.center || std::isfinite(*c.center), "pulse.center", "must be finite");
    require(c.plateau_fraction >= 0.0 && c.plateau_fraction <= 1.0, "pulse.plateau_fraction",
            "must lie in [0, 1]");
    require(c.count >= 1, "pulse.count", "must be >= 1");
    require(std::isfinite(c.gap) && c.gap >= 0.0, "pulse.gap", "must be >= 0");
    if (c.shape == ShapeKind::sampled) {
        require(c.samples.size() >= 2, "pulse.samples", "needs at least two values");
        require(positive(c.sample_step), "pulse.sample_step", "must be > 0");
        for (double s : c.samples) require(s >= 0.0, "pulse.samples", "values must be >= 0");
    }
    require(c.stride >= 1, "grid.stride", "must be >= 1");
    require(c.quadrature_nodes >= 1 && c.quadrature_nodes <= 8, "grid.quadrature_nodes",
            "must lie in [1, 8]");
    require(!c.step || positive(*c.step), "grid.step", "must be > 0");
    if (check_resolution) {
        require(resolved_step(c) * c.omega_m <= kMaxPhasePerStep * (1.0 + 1e-12), "grid.step",
                "omega_m * step must not exceed 2 pi / 40");
    }
    const auto [lo, hi] = build_train(c).support();
    (void)lo;
    require(!c.horizon || (positive(*c.horizon) && *c.horizon >= hi), "grid.horizon",
            "must cover the pulse support (ends at " + format_real(hi) + ")");
}

PulseTrain build_train(const ScenarioConfig& c) {
    PulseTrain train;
    train.count = c.count;
    train.gap = c.gap;
    Envelope env;
    env.kind = c.shape;
    env.amplitude = c.amplitude;
    env.plateau_fraction = c.plateau_fraction;
    switch (c.shape) {
        case ShapeKind::gaussian:
            env.width = c.width_over_omega_m * c.omega_m;
            break;
        case ShapeKind::sampled:
            env.samples = c.samples;
            env.sample_step = c.sample_step;
            env.width = c.sample_step * static_cast<double>(c.samples.size() > 1 ? c.samples.size() - 1 : 0);
            break;
        default:
            env.width = c.duration;
            break;
    }
    const double half =
        c.shape == ShapeKind::gaussian ? 6.0 / env.width : 0.5 * env.width;
    env.center = c.center ? *c.center : half;
    if (c.normalize_energy && c.shape != ShapeKind::gaussian && env.amplitude > 0.0 &&
        pulse_energy(env) > 0.0) {
        const Envelope reference =
            Envelope::gaussian(c.amplitude, c.width_over_omega_m * c.omega_m, env.center);
        env = with_energy(env, pulse_energy(reference));
    }
    train.base = env;
    return train;
}

Scenario to_scenario(const ScenarioConfig& c, bool check_resolution) {
    validate_config(c, check_resolution);
    Scenario s;
    s.params.coupling = c.coupling;
    s.params.kappa = 1.0;
    s.params.omega_m = c.omega_m;
    s.params.gamma_m = c.omega_m / c.omega_m_over_gamma_m;
    s.params.detuning = c.detuning_over_omega_m * c.omega_m;
    s.params.occupancy = c.occupancy;
    s.params.validate();
    s.train = build_train(c);
    try {
        s.train.validate();
    } catch (const DomainError& e) {
        throw ConfigError("pulse", 0, e.what());
    }

    const double step = resolved_step(c);
    const double horizon = c.horizon ? *c.horizon : s.train.support().second + kTrailingWindow;
    s.grid.step = step;
    s.grid.intervals = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    if (s.grid.intervals < 1) s.grid.intervals = 1;
    s.noise.enabled = c.noise;
    s.noise.vacuum = c.vacuum_noise;
    s.formula = c.negativity_formula;
    s.quadrature_nodes = c.quadrature_nodes;
    return s;
}

std::uint64_t config_hash(const ScenarioConfig& config) {
    ScenarioConfig c = config;
    c.csv.clear();
    c.label.clear();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_config(c)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace omsent
