#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clat/collective.hpp"
#include "clat/errors.hpp"
#include "clat/greens.hpp"
#include "clat/surface.hpp"
#include "clat/sweep.hpp"
#include "clat/version.hpp"

namespace {

using clat::sweep::format_float;
using clat::sweep::run_config;

struct overrides {
    std::string out;
    std::string format;
    int workers = 0;
    int n = 0;
    int precision = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw clat::config_error("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

run_config load_config(const std::string& path, const overrides& ov) {
    run_config cfg = clat::sweep::parse_config(read_file(path));
    if (!ov.out.empty()) cfg.out_path = ov.out;
    if (!ov.format.empty()) cfg.format = ov.format;
    if (ov.precision > 0) cfg.precision = ov.precision;
    if (ov.n > 0) {
        if (cfg.layout != "ring")
            throw clat::config_error("config: --n only applies to the ring layout");
        cfg.n = ov.n;
        cfg.n_defaulted = false;  // an explicit choice is no longer an assumption
    }
    return cfg;
}

void write_output(const run_config& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw clat::config_error("output: cannot write " + cfg.out_path);
    out << text;
}

void require_emitters(const run_config& cfg) {
    if (cfg.layout == "ring" && !(cfg.spacing > 0.0))
        throw clat::config_error("config: an emitters block with positive spacing is required");
}

// one evaluated Green-table row; sphere carries both families
struct green_row {
    double sep;
    std::complex<double> main;  // plane / free3d / sphere open
    double closed = 0.0;
};

int cmd_green(const run_config& cfg) {
    if (cfg.separations.empty())
        throw clat::config_error("green: a separations list is required");
    clat::surface::optical_params optics =
        clat::surface::optics_from_frac(cfg.n0, cfg.k_perp_frac);
    clat::surface::descriptor surf;
    switch (cfg.geometry) {
        case clat::surface::kind::plane: surf = clat::surface::descriptor::plane(); break;
        case clat::surface::kind::free3d: surf = clat::surface::descriptor::free3d(); break;
        case clat::surface::kind::sphere:
        default: surf = clat::surface::descriptor::sphere(cfg.radius); break;
    }
    double keff = clat::surface::effective_wavenumber(optics, surf);

    std::vector<green_row> rows;
    rows.reserve(cfg.separations.size());
    for (std::size_t i = 0; i < cfg.separations.size(); ++i) {
        double s = cfg.separations[i];
        try {
            green_row row{s, {0.0, 0.0}, 0.0};
            switch (cfg.geometry) {
                case clat::surface::kind::plane:
                    row.main = clat::greens::green_plane(s, keff);
                    break;
                case clat::surface::kind::free3d:
                    row.main = clat::greens::green_free3d_zz(s, keff);
                    break;
                case clat::surface::kind::sphere:
                default:
                    row.main = clat::greens::green_sphere_open(s, cfg.radius, keff);
                    row.closed = clat::greens::green_sphere_closed(s, cfg.radius, keff);
                    break;
            }
            rows.push_back(row);
        } catch (const std::runtime_error& e) {
            throw clat::domain_error("green: row " + std::to_string(i + 1) + " (separation " +
                                     format_float(s, cfg.precision) + "): " + e.what());
        }
    }

    const bool sphere = cfg.geometry == clat::surface::kind::sphere;
    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "# curved-lattice v" << clat::version << "\n";
        if (!cfg.note.empty()) out << "# " << cfg.note << "\n";
        out << (sphere ? "separation,re_open,im_open,closed" : "separation,re,im") << "\n";
        for (const auto& r : rows) {
            out << format_float(r.sep, cfg.precision) << ","
                << format_float(r.main.real(), cfg.precision) << ","
                << format_float(r.main.imag(), cfg.precision);
            if (sphere) out << "," << format_float(r.closed, cfg.precision);
            out << "\n";
        }
    } else {
        out << "{\n  \"version\": \"" << clat::version << "\",\n";
        if (!cfg.note.empty()) out << "  \"note\": " << nlohmann::json(cfg.note).dump() << ",\n";
        out << "  \"rows\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << (i ? ",\n    " : "\n    ");
            out << "{\"separation\": " << format_float(r.sep, cfg.precision)
                << (sphere ? ", \"re_open\": " : ", \"re\": ")
                << format_float(r.main.real(), cfg.precision)
                << (sphere ? ", \"im_open\": " : ", \"im\": ")
                << format_float(r.main.imag(), cfg.precision);
            if (sphere) out << ", \"closed\": " << format_float(r.closed, cfg.precision);
            out << "}";
        }
        out << "\n  ]\n}\n";
    }
    write_output(cfg, out.str());
    return 0;
}

int cmd_spectrum(const run_config& cfg) {
    if (cfg.axis)
        throw clat::config_error("spectrum: config has a sweep block, use the sweep command");
    require_emitters(cfg);
    clat::surface::emitter_array arr = clat::sweep::array_from(cfg);
    clat::surface::optical_params optics =
        clat::surface::optics_from_frac(cfg.n0, cfg.k_perp_frac);
    clat::collective::spectrum_result spec = clat::collective::spectrum(arr, optics);

    clat::sweep::sweep_row row;
    row.param = cfg.layout == "ring" ? cfg.spacing : 0.0;
    int idx = 0;
    for (const auto& m : spec.modes) row.modes.push_back({idx++, m.shift, m.gamma});
    clat::sweep::sweep_result res;
    res.blocks.emplace_back();
    res.blocks.back().rows.push_back(std::move(row));
    write_output(cfg, cfg.format == "csv" ? to_csv(res, cfg) : to_json(res, cfg));
    return 0;
}

int cmd_sweep(const run_config& cfg, int workers) {
    require_emitters(cfg);
    clat::sweep::sweep_result res = clat::sweep::run_sweep(cfg, workers);
    write_output(cfg, cfg.format == "csv" ? to_csv(res, cfg) : to_json(res, cfg));
    if (res.partial) {
        std::cerr << "sweep: some points failed; error rows are marked in the output\n";
        return 4;
    }
    return 0;
}

// Canned reproduction presets. Each is a complete config for the sweep (or,
// for fig4b, the green) command; ring presets flag their emitter count as
// assumed so emitted files carry the warning.
const std::map<std::string, std::pair<const char*, const char*>>& recipe_table() {
    static const std::map<std::string, std::pair<const char*, const char*>> table = {
        {"fig2a",
         {"ring in free space, spacing sweep",
          R"({
  "note": "ring in free space, spacing sweep",
  "geometry": {"kind": "free3d"},
  "emitters": {"layout": "ring", "n": 8, "n_assumed": true, "spacing": 0.1},
  "optics": {"n0": 1.0, "k_perp_frac": 0.0},
  "sweep": {"param": "spacing", "from": 0.1, "to": 1.0, "steps": 90, "scale": "linear"}
}
)"}},
        {"fig2b",
         {"ring on the plane waveguide, spacing sweep",
          R"({
  "note": "ring on the plane waveguide, spacing sweep",
  "geometry": {"kind": "plane"},
  "emitters": {"layout": "ring", "n": 8, "n_assumed": true, "spacing": 0.1},
  "optics": {"n0": 1.0, "k_perp_frac": 0.9},
  "sweep": {"param": "spacing", "from": 0.1, "to": 1.0, "steps": 90, "scale": "linear"}
}
)"}},
        {"fig3",
         {"ring on the plane, transverse-momentum sweep",
          R"({
  "note": "ring on the plane, transverse-momentum sweep",
  "geometry": {"kind": "plane"},
  "emitters": {"layout": "ring", "n": 8, "n_assumed": true, "spacing": 0.6},
  "optics": {"n0": 1.0, "k_perp_frac": 0.0},
  "sweep": {"param": "k_perp_frac", "from": 0.0, "to": 0.95, "steps": 96, "scale": "linear"}
}
)"}},
        {"fig4b",
         {"sphere Green function, open and closed families vs central angle",
          R"({
  "note": "sphere Green function, open and closed families vs central angle",
  "geometry": {"kind": "sphere", "radius": 1.0},
  "optics": {"n0": 1.0, "k_perp_frac": 0.9},
  "separations": [0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 1.05, 1.15, 1.25,
                  1.35, 1.45, 1.55, 1.65, 1.75, 1.85, 1.95, 2.05, 2.15, 2.25,
                  2.35, 2.45, 2.55, 2.65, 2.75]
}
)"}},
        {"fig4c",
         {"ring on shrinking spheres, radius sweep",
          R"({
  "note": "ring on shrinking spheres, radius sweep",
  "geometry": {"kind": "sphere", "radius": 10.0},
  "emitters": {"layout": "ring", "n": 8, "n_assumed": true, "spacing": 0.1},
  "optics": {"n0": 1.0, "k_perp_frac": 0.9},
  "sweep": {"param": "radius", "from": 0.55, "to": 10.0, "steps": 60, "scale": "log"}
}
)"}},
    };
    return table;
}

int cmd_recipes(const std::string& name, const std::string& out_path) {
    const auto& table = recipe_table();
    if (name.empty()) {
        for (const auto& [key, entry] : table)
            std::cout << key << "  " << entry.first << "\n";
        return 0;
    }
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto& [key, entry] : table) known += " " + key;
        throw clat::config_error("recipes: unknown name \"" + name + "\"; known:" + known);
    }
    // sanity: every preset must parse under our own rules
    run_config cfg = clat::sweep::parse_config(it->second.second);
    cfg.out_path = out_path;
    write_output(cfg, it->second.second);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-mediated dipole interactions and collective decay spectra for "
                 "emitter arrays on planar and spherical waveguides"};
    app.set_version_flag("--version", std::string("curved-lattice v") + clat::version);
    app.require_subcommand(1);

    std::string config_path, recipe_name;
    overrides ov;

    auto add_common = [&](CLI::App* sub, bool with_n) {
        sub->add_option("--config", config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", ov.out, "output path (default stdout)");
        sub->add_option("--format", ov.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--precision", ov.precision, "float digits in output")
            ->check(CLI::Range(3, 17));
        if (with_n)
            sub->add_option("--n", ov.n, "override the ring emitter count")
                ->check(CLI::Range(2, 256));
    };

    CLI::App* green = app.add_subcommand(
        "green", "evaluate the surface Green function on a separations list");
    add_common(green, false);

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "collective shifts and decay rates for a single configuration");
    add_common(spectrum, true);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "spectra along a parameter axis with mode tracking");
    add_common(sweep, true);
    sweep->add_option("--workers", ov.workers, "parallel evaluation threads")
        ->check(CLI::Range(1, 1024));

    CLI::App* recipes = app.add_subcommand(
        "recipes", "print a canned reproduction preset (no name lists them)");
    recipes->add_option("name", recipe_name, "preset name, e.g. fig2b");
    recipes->add_option("--out", ov.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (green->parsed()) return cmd_green(load_config(config_path, ov));
        if (spectrum->parsed()) return cmd_spectrum(load_config(config_path, ov));
        if (sweep->parsed()) return cmd_sweep(load_config(config_path, ov), ov.workers);
        return cmd_recipes(recipe_name, ov.out);
    } catch (const clat::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
