#include "omsent/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "omsent/errors.hpp"

namespace omsent {

namespace {

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(value)};
    while (std::getline(in, item, ',')) {
        item = trim(item);
        out.push_back(item);
    }
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

SweepConfig load_sweep(std::string_view text) {
    SweepConfig sweep;
    std::string scenario_text;
    std::istringstream in{std::string(text)};
    std::string raw;
    bool in_sweep = false;
    std::size_t line_no = 0;
    std::vector<std::pair<std::string, std::size_t>> sweep_lines;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(std::string_view(raw).substr(0, raw.find_first_of("#;")));
        if (!line.empty() && line.front() == '[') in_sweep = line == "[sweep]";
        if (in_sweep) {
            if (line != "[sweep]" && !line.empty()) sweep_lines.emplace_back(line, line_no);
            scenario_text += "\n";  // keep line numbers aligned
        } else {
            scenario_text += raw + "\n";
        }
    }
    sweep.base = load_config(scenario_text);

    for (const auto& [line, no] : sweep_lines) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("sweep", no, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "max_points") {
            auto v = parse_real(value);
            if (!v || *v < 1.0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
                throw ConfigError("sweep.max_points", no, "expected a positive integer");
            }
            sweep.max_points = static_cast<std::size_t>(*v);
        } else if (key == "out_dir") {
            sweep.out_dir = value;
        } else {
            SweepAxis axis{key, split_list(value)};
            if (axis.values.empty()) throw ConfigError("sweep." + key, no, "empty axis");
            ScenarioConfig probe = sweep.base;
            for (const auto& v : axis.values) set_config_field(probe, key, v, no);
            for (const auto& other : sweep.axes) {
                if (other.path == key) throw ConfigError("sweep." + key, no, "duplicate axis");
            }
            sweep.axes.push_back(std::move(axis));
        }
    }
    if (sweep.axes.empty()) throw ConfigError("sweep", 0, "no sweep axes given");
    return sweep;
}

SweepConfig load_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open sweep file");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_sweep(buf.str());
}

std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep) {
    std::size_t total = 1;
    for (const auto& axis : sweep.axes) {
        if (axis.values.empty()) throw ConfigError("sweep." + axis.path, 0, "empty axis");
        total *= axis.values.size();
        if (total > sweep.max_points) {
            throw ConfigError("sweep.max_points", 0,
                              "Cartesian product exceeds the cap of " +
                                  std::to_string(sweep.max_points) + " points");
        }
    }
    std::vector<SweepPoint> points(total);
    for (std::size_t i = 0; i < total; ++i) {
        SweepPoint& p = points[i];
        p.config = sweep.base;
        std::size_t rest = i;
        p.values.resize(sweep.axes.size());
        for (std::size_t a = sweep.axes.size(); a-- > 0;) {
            const auto& axis = sweep.axes[a];
            p.values[a] = axis.values[rest % axis.values.size()];
            rest /= axis.values.size();
        }
        std::string label;
        for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
            set_config_field(p.config, sweep.axes[a].path, p.values[a]);
            const auto& path = sweep.axes[a].path;
            if (!label.empty()) label += " ";
            label += path.substr(path.find('.') + 1) + "=" + p.values[a];
        }
        p.config.label = label;
        if (!sweep.out_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof(name), "point_%03zu.csv", i);
            p.config.csv = sweep.out_dir + "/" + name;
        } else {
            p.config.csv.clear();
        }
    }
    return points;
}

SweepResult run_sweep(const SweepConfig& sweep, unsigned workers) {
    SweepResult result;
    result.points = expand_sweep(sweep);
    auto& points = result.points;

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            SweepPoint& p = points[i];
            try {
                RunResult r = run_scenario(p.config, 1);
                p.trace = std::move(r.trace);
                p.summary = r.summary;
                p.csv = std::move(r.csv);
                p.ok = true;
            } catch (const std::exception& e) {
                p.ok = false;
                p.error = e.what();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::string csv = "index";
    for (const auto& axis : sweep.axes) csv += "," + axis.path;
    csv += ",peak_E_N,peak_kappa_t,min_after_first_peak,status\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        csv += std::to_string(i);
        for (const auto& v : p.values) csv += "," + csv_cell(v);
        if (p.ok) {
            csv += "," + format_real(p.summary.peak) + "," + format_real(p.summary.peak_time) + "," +
                   format_real(p.summary.trough) + ",ok\n";
        } else {
            csv += ",,,," + csv_cell("error: " + p.error) + "\n";
        }
    }
    result.summary_csv = csv;
    if (!sweep.out_dir.empty()) write_text_file(sweep.out_dir + "/summary.csv", csv);
    return result;
}

}  // namespace omsent
