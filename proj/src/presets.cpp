#include "omsent/presets.hpp"

#include <array>

#include "omsent/config.hpp"
#include "omsent/errors.hpp"

namespace omsent {

namespace {

constexpr std::array<double, 4> kFig1Detunings{-1.0, -0.5, 0.5, 1.0};

[[noreturn]] void unknown(std::string_view name) {
    throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
}

double parse_width(std::string_view suffix, std::string_view name, bool fig3) {
    if (suffix.empty()) return 4.0;
    if (suffix.substr(0, 2) != "-w") unknown(name);
    const std::string w(suffix.substr(2));
    if (w == "4") return 4.0;
    if (w == "4/3") return 4.0 / 3.0;
    if (!fig3 && w == "0.8") return 0.8;
    if (!fig3 && w == "0.4") return 0.4;
    unknown(name);
}

ScenarioConfig gaussian_base(double detuning, double width) {
    ScenarioConfig c = default_config();
    c.detuning_over_omega_m = detuning;
    c.width_over_omega_m = width;
    c.center = kPresetCenter;
    return c;
}

}  // namespace

const std::vector<std::string>& preset_widths() {
    static const std::vector<std::string> widths{"0.4", "0.8", "4/3", "4"};
    return widths;
}

ScenarioConfig preset(std::string_view name) {
    auto label = [&](ScenarioConfig c) {
        c.label = std::string(name);
        return c;
    };
    if (name.size() >= 5 && (name.substr(0, 4) == "fig1" || name.substr(0, 4) == "fig4")) {
        const char panel = name[4];
        if (panel < 'a' || panel > 'd') unknown(name);
        ScenarioConfig c = gaussian_base(kFig1Detunings[panel - 'a'], parse_width(name.substr(5), name, false));
        if (name[3] == '4') c.occupancy = 1e4;
        return label(c);
    }
    if (name.size() >= 5 && name.substr(0, 4) == "fig2") {
        const char panel = name[4];
        if (panel != 'a' && panel != 'b') unknown(name);
        std::string_view rest = name.substr(5);
        ShapeKind shape = ShapeKind::square;
        if (!rest.empty()) {
            if (rest.front() != '-') unknown(name);
            try {
                shape = shape_from_string(rest.substr(1));
            } catch (const DomainError&) {
                unknown(name);
            }
            if (shape == ShapeKind::sampled) unknown(name);
        }
        ScenarioConfig c = gaussian_base(panel == 'a' ? -1.0 : 1.0, kPiecewiseReferenceWidth);
        c.shape = shape;
        if (shape != ShapeKind::gaussian) {
            c.duration = kPiecewiseDuration;
            c.normalize_energy = true;
        }
        return label(c);
    }
    if (name.substr(0, 8) == "fig3-gap") {
        std::string_view rest = name.substr(8);
        double gap = 0.0;
        if (rest.substr(0, 1) == "8") {
            gap = 8.0;
        } else if (rest.substr(0, 1) == "5") {
            gap = 5.0;
        } else {
            unknown(name);
        }
        ScenarioConfig c = gaussian_base(-1.0, parse_width(rest.substr(1), name, true));
        c.count = 2;
        c.gap = gap;
        return label(c);
    }
    unknown(name);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const char* fig : {"fig1", "fig4"}) {
        for (char panel : {'a', 'b', 'c', 'd'}) {
            const std::string base = std::string(fig) + panel;
            for (const auto& w : preset_widths()) out.push_back(base + "-w" + w);
        }
    }
    for (char panel : {'a', 'b'}) {
        for (const char* shape : {"square", "triangle", "sawtooth", "trapezium", "gaussian"}) {
            out.push_back(std::string("fig2") + panel + "-" + shape);
        }
    }
    for (const char* gap : {"8", "5"}) {
        for (const char* w : {"4/3", "4"}) out.push_back(std::string("fig3-gap") + gap + "-w" + w);
    }
    return out;
}

}  // namespace omsent
