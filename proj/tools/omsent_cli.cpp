#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "omsent/calibrate.hpp"
#include "omsent/config.hpp"
#include "omsent/errors.hpp"
#include "omsent/plot.hpp"
#include "omsent/presets.hpp"
#include "omsent/run.hpp"
#include "omsent/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kIntegrityError = 3, kIoError = 4 };

std::string file_stem(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        if (c == '/') c = '_';
    }
    return out;
}

void print_summary(const omsent::TraceSummary& s, std::ostream& out) {
    out << "peak_E_N " << omsent::format_real(s.peak) << " at kappa_t "
        << omsent::format_real(s.peak_time) << "\n";
    out << "first_peak " << omsent::format_real(s.first_peak) << " at kappa_t "
        << omsent::format_real(s.first_peak_time) << "\n";
    out << "min_after_first_peak " << omsent::format_real(s.trough) << "\n";
}

omsent::ScenarioConfig config_or_preset(const std::string& arg) {
    if (std::filesystem::exists(arg)) return omsent::load_config_file(arg);
    return omsent::preset(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optomechanical entanglement under pulsed drive"};
    app.require_subcommand(1);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("-j,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    std::string config_path;
    std::string out_path;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario from a config file");
    simulate->add_option("config", config_path, "Scenario config")->required();
    simulate->add_option("-o,--out", out_path, "CSV path (overrides [output] csv)");

    std::string preset_name;
    std::string out_dir = ".";
    bool list = false;
    bool print_config = false;
    auto* preset_cmd = app.add_subcommand("preset", "Run a figure preset");
    preset_cmd->add_option("name", preset_name, "Preset name");
    preset_cmd->add_option("--out", out_dir, "Output directory");
    preset_cmd->add_flag("--list", list, "List preset names");
    preset_cmd->add_flag("--print-config", print_config, "Print the preset config and exit");
    std::vector<std::string> overrides;
    preset_cmd->add_option("--set", overrides, "Override a field, section.key=value");

    std::string sweep_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep_cmd->add_option("config", sweep_path, "Sweep config")->required();

    double target = 0.0;
    double tolerance = 1e-3;
    std::string base_preset = "fig1a";
    auto* calibrate = app.add_subcommand("calibrate", "Calibrate the drive amplitude");
    calibrate->add_option("--target", target, "Target peak E_N")->required();
    calibrate->add_option("--preset", base_preset, "Base preset");
    calibrate->add_option("--tolerance", tolerance, "Tolerance on the peak");

    std::string converge_arg;
    auto* converge = app.add_subcommand("converge", "Step-halving convergence report");
    converge->add_option("config", converge_arg, "Scenario config or preset name")->required();

    std::vector<std::string> plot_inputs;
    std::string svg_path;
    std::string title;
    auto* plot = app.add_subcommand("plot", "Render trace CSVs to SVG");
    plot->add_option("csv", plot_inputs, "Trace CSV files")->required();
    plot->add_option("--out", svg_path, "SVG output path")->required();
    plot->add_option("--title", title, "Plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*simulate) {
            auto config = omsent::load_config_file(config_path);
            if (!out_path.empty()) config.csv = out_path;
            const auto result = omsent::run_scenario(config, workers);
            if (config.csv.empty()) std::cout << result.csv;
            print_summary(result.summary, config.csv.empty() ? std::cerr : std::cout);
        } else if (*preset_cmd) {
            if (list) {
                for (const auto& n : omsent::preset_names()) std::cout << n << "\n";
                return kOk;
            }
            if (preset_name.empty()) throw omsent::ConfigError("preset", 0, "preset name required");
            auto config = omsent::preset(preset_name);
            for (const auto& o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) {
                    throw omsent::ConfigError(o, 0, "expected section.key=value");
                }
                omsent::set_config_field(config, o.substr(0, eq), o.substr(eq + 1));
            }
            omsent::validate_config(config);
            if (print_config) {
                std::cout << omsent::serialize_config(config);
                return kOk;
            }
            config.csv = out_dir + "/" + file_stem(preset_name) + ".csv";
            const auto result = omsent::run_scenario(config, workers);
            std::cout << "wrote " << config.csv << "\n";
            print_summary(result.summary, std::cout);
        } else if (*sweep_cmd) {
            const auto sweep = omsent::load_sweep_file(sweep_path);
            const auto result = omsent::run_sweep(sweep, workers);
            std::cout << result.summary_csv;
        } else if (*calibrate) {
            const auto res =
                omsent::calibrate_amplitude(omsent::preset(base_preset), target, tolerance, workers);
            std::cout << "amplitude " << omsent::format_real(res.amplitude) << "\n";
            std::cout << "peak_E_N " << omsent::format_real(res.achieved_peak) << "\n";
            std::cout << "evaluations " << res.evaluations.size() << "\n";
        } else if (*converge) {
            const auto report = omsent::convergence_report(config_or_preset(converge_arg), workers);
            std::cout << report.to_text();
            return report.passed ? kOk : kIntegrityError;
        } else if (*plot) {
            std::vector<omsent::PlotSeries> series;
            for (const auto& path : plot_inputs) {
                series.push_back(
                    omsent::load_plot_series(path, std::filesystem::path(path).stem().string()));
            }
            omsent::write_text_file(svg_path, omsent::render_plot(series, title));
            std::cout << "wrote " << svg_path << "\n";
        }
    } catch (const omsent::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const omsent::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const omsent::IntegrityError& e) {
        std::cerr << "numerical integrity error: " << e.what() << "\n";
        return kIntegrityError;
    } catch (const omsent::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}
