#pragma once
#include <optional>
#include <string>
#include <vector>

#include "clat/surface.hpp"

// Configuration-driven parameter sweeps: JSON config parsing, parallel
// evaluation over sweep points, nearest-neighbor mode tracking, and
// deterministic CSV/JSON emission.

namespace clat::sweep {

struct sweep_axis {
    std::string param;  // "spacing" | "k_perp_frac" | "radius"
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string scale = "linear";  // "linear" | "log"
};

struct run_config {
    surface::kind geometry = surface::kind::plane;
    double radius = 0.0;  // sphere only

    std::string layout = "ring";  // "ring" | "explicit"
    int n = 8;
    bool n_defaulted = false;  // recipes leave N at its assumed default
    double spacing = 0.0;
    std::vector<std::array<double, 3>> positions;  // explicit layout

    double n0 = 1.0;
    double k_perp_frac = 0.0;

    std::optional<sweep_axis> axis;   // "sweep" block
    std::optional<sweep_axis> outer;  // optional stacked outer axis

    std::string format = "csv";  // "csv" | "json"
    std::string out_path;        // empty means stdout
    int precision = 12;

    std::vector<double> separations;  // for single-point Green evaluation
    std::string note;                 // free text, carried into file headers
};

// throws config_error with a field-naming message on any invariant violation
run_config parse_config(const std::string& json_text);

// the grid a sweep axis spans; endpoints are hit exactly
std::vector<double> axis_values(const sweep_axis& axis);

// emitter array described by the config's geometry/emitters blocks
surface::emitter_array array_from(const run_config& cfg);

struct mode_entry {
    int track_id;
    double shift;
    double gamma;
};

struct sweep_row {
    double param = 0.0;
    bool ok = true;
    std::string error;               // set when !ok
    std::vector<mode_entry> modes;   // sorted by descending gamma
};

struct sweep_block {
    bool has_outer = false;
    std::string outer_param;
    double outer_value = 0.0;
    std::vector<sweep_row> rows;
};

struct sweep_result {
    std::vector<sweep_block> blocks;
    bool partial = false;  // at least one error row
};

// Evaluates the sweep grid (outer x inner when an outer axis is present),
// parallel across points, then runs the sequential tracking pass so parallel
// and serial runs emit identical bytes.  Per-point failures become error
// rows; only config-level problems throw.
sweep_result run_sweep(const run_config& cfg, int workers = 0);

// %.{precision}g rendering used for every float the artifact emits
std::string format_float(double v, int precision);

std::string to_csv(const sweep_result& res, const run_config& cfg);
std::string to_json(const sweep_result& res, const run_config& cfg);

// inverse of to_csv, for round-trip verification (values at emitted precision)
sweep_result parse_csv(const std::string& text);

// CURVED_LATTICE_WORKERS, else hardware concurrency
int default_workers();

}  // namespace clat::sweep
