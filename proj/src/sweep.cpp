#include "clat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "clat/collective.hpp"
#include "clat/errors.hpp"
#include "clat/version.hpp"

namespace clat::sweep {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw config_error("config: " + msg); }

double get_num(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) bad(std::string(where) + "." + key + " is required");
    if (!j[key].is_number()) bad(std::string(where) + "." + key + " must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const char* key, double fallback, const char* where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) bad(std::string(where) + "." + key + " must be a number");
    return j[key].get<double>();
}

std::string get_str_or(const json& j, const char* key, const std::string& fallback,
                       const char* where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) bad(std::string(where) + "." + key + " must be a string");
    return j[key].get<std::string>();
}

sweep_axis parse_axis(const json& j, const char* where) {
    sweep_axis ax;
    ax.param = get_str_or(j, "param", "", where);
    if (ax.param != "spacing" && ax.param != "k_perp_frac" && ax.param != "radius")
        bad(std::string(where) + ".param must be spacing, k_perp_frac, or radius");
    ax.from = get_num(j, "from", where);
    ax.to = get_num(j, "to", where);
    double steps = get_num(j, "steps", where);
    if (steps != std::floor(steps) || steps < 2 || steps > 1e6)
        bad(std::string(where) + ".steps must be an integer >= 2");
    ax.steps = static_cast<int>(steps);
    if (!(ax.from < ax.to)) bad(std::string(where) + ": need from < to");
    ax.scale = get_str_or(j, "scale", "linear", where);
    if (ax.scale != "linear" && ax.scale != "log")
        bad(std::string(where) + ".scale must be linear or log");
    if (ax.scale == "log" && !(ax.from > 0.0))
        bad(std::string(where) + ": log scale needs from > 0");
    if (ax.param == "k_perp_frac" && !(ax.from >= 0.0 && ax.to < 1.0))
        bad(std::string(where) + ": k_perp_frac must stay in [0, 1)");
    if ((ax.param == "spacing" || ax.param == "radius") && !(ax.from > 0.0))
        bad(std::string(where) + ": " + ax.param + " must be > 0");
    return ax;
}

}  // namespace

run_config parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("top level must be an object");

    run_config cfg;

    if (!j.contains("geometry") || !j["geometry"].is_object())
        bad("geometry block is required");
    const json& geo = j["geometry"];
    std::string kind = get_str_or(geo, "kind", "", "geometry");
    if (kind == "plane")
        cfg.geometry = surface::kind::plane;
    else if (kind == "sphere")
        cfg.geometry = surface::kind::sphere;
    else if (kind == "free3d")
        cfg.geometry = surface::kind::free3d;
    else
        bad("geometry.kind must be plane, sphere, or free3d");
    if (cfg.geometry == surface::kind::sphere) {
        cfg.radius = get_num(geo, "radius", "geometry");
        if (!(cfg.radius > 0.0)) bad("geometry.radius must be > 0");
    } else if (geo.contains("radius")) {
        bad("geometry.radius only applies to kind sphere");
    }

    // single-point Green-table configs carry no emitters; the spectrum and
    // sweep entry points check for them
    if (j.contains("emitters") && !j["emitters"].is_object()) bad("emitters must be an object");
    const json em = j.contains("emitters") ? j["emitters"] : json::object();
    cfg.layout = get_str_or(em, "layout", "ring", "emitters");
    if (cfg.layout == "ring") {
        if (em.contains("n")) {
            double n = get_num(em, "n", "emitters");
            if (n != std::floor(n) || n < 2 || n > 256)
                bad("emitters.n must be an integer in [2, 256]");
            cfg.n = static_cast<int>(n);
        }
        if (em.contains("spacing") || !em.empty()) {
            cfg.spacing = get_num(em, "spacing", "emitters");
            if (!(cfg.spacing > 0.0)) bad("emitters.spacing must be > 0");
        }
    } else if (cfg.layout == "explicit") {
        if (!em.contains("positions") || !em["positions"].is_array() || em["positions"].size() < 2)
            bad("emitters.positions must be an array of at least 2 points");
        const std::size_t dim = (cfg.geometry == surface::kind::free3d) ? 3 : 2;
        for (const auto& p : em["positions"]) {
            if (!p.is_array() || p.size() != dim)
                bad("emitters.positions entries must be arrays of " + std::to_string(dim) +
                    " numbers");
            std::array<double, 3> q{0.0, 0.0, 0.0};
            for (std::size_t c = 0; c < dim; ++c) {
                if (!p[c].is_number()) bad("emitters.positions entries must be numeric");
                q[c] = p[c].get<double>();
            }
            cfg.positions.push_back(q);
        }
        cfg.n = static_cast<int>(cfg.positions.size());
        if (em.contains("n") && em["n"].get<double>() != cfg.n)
            bad("emitters.n disagrees with the positions list");
    } else {
        bad("emitters.layout must be ring or explicit");
    }
    if (em.contains("n_assumed") && em["n_assumed"].is_boolean())
        cfg.n_defaulted = em["n_assumed"].get<bool>();

    if (j.contains("optics")) {
        const json& op = j["optics"];
        if (!op.is_object()) bad("optics must be an object");
        cfg.n0 = get_num_or(op, "n0", 1.0, "optics");
        if (!(cfg.n0 >= 1.0)) bad("optics.n0 must be >= 1");
        cfg.k_perp_frac = get_num_or(op, "k_perp_frac", 0.0, "optics");
        if (!(cfg.k_perp_frac >= 0.0 && cfg.k_perp_frac < 1.0))
            bad("optics.k_perp_frac must be in [0, 1)");
    }

    if (j.contains("sweep")) {
        if (!j["sweep"].is_object()) bad("sweep must be an object");
        cfg.axis = parse_axis(j["sweep"], "sweep");
    }
    if (j.contains("outer")) {
        if (!j["outer"].is_object()) bad("outer must be an object");
        if (!cfg.axis) bad("outer axis requires a sweep block");
        cfg.outer = parse_axis(j["outer"], "outer");
        if (cfg.outer->param == cfg.axis->param) bad("outer and sweep cannot share a parameter");
    }
    for (const auto* ax : {cfg.axis ? &*cfg.axis : nullptr, cfg.outer ? &*cfg.outer : nullptr}) {
        if (!ax) continue;
        if (ax->param == "spacing" && cfg.layout != "ring")
            bad("sweeping spacing requires the ring layout");
        if (ax->param == "radius" && cfg.geometry != surface::kind::sphere)
            bad("sweeping radius requires sphere geometry");
    }

    if (j.contains("output")) {
        const json& out = j["output"];
        if (!out.is_object()) bad("output must be an object");
        cfg.format = get_str_or(out, "format", "csv", "output");
        if (cfg.format != "csv" && cfg.format != "json")
            bad("output.format must be csv or json");
        cfg.out_path = get_str_or(out, "path", "", "output");
        double prec = get_num_or(out, "precision", 12.0, "output");
        if (prec != std::floor(prec) || prec < 3 || prec > 17)
            bad("output.precision must be an integer in [3, 17]");
        cfg.precision = static_cast<int>(prec);
    }

    if (j.contains("separations")) {
        if (!j["separations"].is_array() || j["separations"].empty())
            bad("separations must be a non-empty array");
        for (const auto& s : j["separations"]) {
            if (!s.is_number() || !(s.get<double>() > 0.0))
                bad("separations entries must be positive numbers");
            cfg.separations.push_back(s.get<double>());
        }
    }

    cfg.note = get_str_or(j, "note", "", "top level");
    return cfg;
}

std::vector<double> axis_values(const sweep_axis& axis) {
    std::vector<double> v(axis.steps);
    if (axis.scale == "log") {
        double lf = std::log(axis.from), lt = std::log(axis.to);
        for (int i = 0; i < axis.steps; ++i)
            v[i] = std::exp(lf + (lt - lf) * i / (axis.steps - 1.0));
    } else {
        for (int i = 0; i < axis.steps; ++i)
            v[i] = axis.from + (axis.to - axis.from) * i / (axis.steps - 1.0);
    }
    v.front() = axis.from;
    v.back() = axis.to;
    return v;
}

surface::emitter_array array_from(const run_config& cfg) {
    if (cfg.layout == "ring") {
        switch (cfg.geometry) {
            case surface::kind::plane: return surface::ring_on_plane(cfg.n, cfg.spacing);
            case surface::kind::free3d: return surface::ring_in_free3d(cfg.n, cfg.spacing);
            case surface::kind::sphere:
            default: return surface::ring_on_sphere(cfg.n, cfg.spacing, cfg.radius);
        }
    }
    surface::descriptor surf;
    switch (cfg.geometry) {
        case surface::kind::plane: surf = surface::descriptor::plane(); break;
        case surface::kind::free3d: surf = surface::descriptor::free3d(); break;
        case surface::kind::sphere:
        default: surf = surface::descriptor::sphere(cfg.radius); break;
    }
    return surface::make_array(surf, cfg.positions);
}

namespace {

run_config with_param(run_config cfg, const std::string& param, double v) {
    if (param == "spacing")
        cfg.spacing = v;
    else if (param == "k_perp_frac")
        cfg.k_perp_frac = v;
    else
        cfg.radius = v;
    return cfg;
}

sweep_row evaluate_point(const run_config& cfg, double param_value) {
    sweep_row row;
    row.param = param_value;
    try {
        surface::emitter_array arr = array_from(cfg);
        surface::optical_params optics = surface::optics_from_frac(cfg.n0, cfg.k_perp_frac);
        collective::spectrum_result spec = collective::spectrum(arr, optics);
        row.modes.reserve(spec.modes.size());
        int idx = 0;
        for (const auto& m : spec.modes) row.modes.push_back({idx++, m.shift, m.gamma});
    } catch (const std::runtime_error& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

// Nearest-neighbor continuation in the (shift, gamma) plane between two
// successive rows; ties broken by shift proximity, then by index so the
// result never depends on evaluation order.
void match_tracks(const sweep_row& prev, sweep_row& cur) {
    const std::size_t n = cur.modes.size();
    if (prev.modes.size() != n) return;  // differing mode counts: keep positional ids
    struct cand {
        double dist2;
        double shift_gap;
        int pi, ci;
    };
    std::vector<cand> cands;
    cands.reserve(n * n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t c = 0; c < n; ++c) {
            double ds = cur.modes[c].shift - prev.modes[p].shift;
            double dg = cur.modes[c].gamma - prev.modes[p].gamma;
            cands.push_back({ds * ds + dg * dg, std::fabs(ds), static_cast<int>(p),
                             static_cast<int>(c)});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const cand& a, const cand& b) {
        return std::tie(a.dist2, a.shift_gap, a.pi, a.ci) <
               std::tie(b.dist2, b.shift_gap, b.pi, b.ci);
    });
    std::vector<bool> p_used(n, false), c_used(n, false);
    std::vector<int> assign(n, -1);
    std::size_t done = 0;
    for (const auto& cd : cands) {
        if (p_used[cd.pi] || c_used[cd.ci]) continue;
        p_used[cd.pi] = c_used[cd.ci] = true;
        assign[cd.ci] = prev.modes[cd.pi].track_id;
        if (++done == n) break;
    }
    for (std::size_t c = 0; c < n; ++c) cur.modes[c].track_id = assign[c];
}

void track_block(sweep_block& block) {
    const sweep_row* last_ok = nullptr;
    for (auto& row : block.rows) {
        if (!row.ok) continue;
        if (last_ok) match_tracks(*last_ok, row);
        // else: first good row keeps positional ids (descending-decay rank)
        last_ok = &row;
    }
}

}  // namespace

sweep_result run_sweep(const run_config& cfg, int workers) {
    if (!cfg.axis) throw config_error("config: sweep block is required for a sweep run");
    std::vector<double> inner = axis_values(*cfg.axis);
    std::vector<double> outer_vals;
    if (cfg.outer) outer_vals = axis_values(*cfg.outer);

    // flatten to a task list so the pool stays trivial
    struct task {
        int block;
        int row;
        run_config cfg;
        double param;
    };
    std::vector<task> tasks;
    sweep_result res;
    if (cfg.outer) {
        for (std::size_t b = 0; b < outer_vals.size(); ++b) {
            sweep_block block;
            block.has_outer = true;
            block.outer_param = cfg.outer->param;
            block.outer_value = outer_vals[b];
            block.rows.resize(inner.size());
            res.blocks.push_back(std::move(block));
            run_config outer_cfg = with_param(cfg, cfg.outer->param, outer_vals[b]);
            for (std::size_t i = 0; i < inner.size(); ++i)
                tasks.push_back({static_cast<int>(b), static_cast<int>(i),
                                 with_param(outer_cfg, cfg.axis->param, inner[i]), inner[i]});
        }
    } else {
        sweep_block block;
        block.rows.resize(inner.size());
        res.blocks.push_back(std::move(block));
        for (std::size_t i = 0; i < inner.size(); ++i)
            tasks.push_back({0, static_cast<int>(i),
                             with_param(cfg, cfg.axis->param, inner[i]), inner[i]});
    }

    if (workers <= 0) workers = default_workers();
    if (static_cast<std::size_t>(workers) > tasks.size())
        workers = static_cast<int>(tasks.size());
    if (workers <= 1) {
        for (const auto& t : tasks)
            res.blocks[t.block].rows[t.row] = evaluate_point(t.cfg, t.param);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                const task& t = tasks[i];
                res.blocks[t.block].rows[t.row] = evaluate_point(t.cfg, t.param);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // tracking is sequential and runs after all points exist, so parallel and
    // serial sweeps are byte-identical
    for (auto& block : res.blocks) {
        track_block(block);
        for (const auto& row : block.rows)
            if (!row.ok) res.partial = true;
    }
    return res;
}

std::string format_float(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

namespace {

void emit_header_comments(std::ostringstream& out, const run_config& cfg) {
    out << "# curved-lattice v" << version << "\n";
    if (!cfg.note.empty()) out << "# " << cfg.note << "\n";
    if (cfg.n_defaulted)
        out << "# ring size N = " << cfg.n << " is an assumed default, not a fitted value\n";
}

}  // namespace

std::string to_csv(const sweep_result& res, const run_config& cfg) {
    std::ostringstream out;
    emit_header_comments(out, cfg);
    out << "param,mode,track_id,shift,gamma\n";
    for (const auto& block : res.blocks) {
        if (block.has_outer)
            out << "# outer: " << block.outer_param << "="
                << format_float(block.outer_value, cfg.precision) << "\n";
        for (const auto& row : block.rows) {
            if (!row.ok) {
                out << "# error param=" << format_float(row.param, cfg.precision) << " "
                    << row.error << "\n";
                continue;
            }
            for (std::size_t m = 0; m < row.modes.size(); ++m) {
                const auto& e = row.modes[m];
                out << format_float(row.param, cfg.precision) << "," << m << "," << e.track_id
                    << "," << format_float(e.shift, cfg.precision) << ","
                    << format_float(e.gamma, cfg.precision) << "\n";
            }
        }
    }
    return out.str();
}

std::string to_json(const sweep_result& res, const run_config& cfg) {
    // emitted by hand so floats go through the same %.Ng formatter as CSV;
    // the library is only used for parsing
    std::ostringstream out;
    out << "{\n  \"version\": \"" << version << "\",\n";
    if (!cfg.note.empty()) out << "  \"note\": " << json(cfg.note).dump() << ",\n";
    if (cfg.n_defaulted) out << "  \"assumed_n\": " << cfg.n << ",\n";
    out << "  \"rows\": [";
    bool first = true;
    auto sep = [&]() -> std::ostringstream& {
        out << (first ? "\n    " : ",\n    ");
        first = false;
        return out;
    };
    for (const auto& block : res.blocks) {
        if (block.has_outer)
            sep() << "{\"outer_param\": \"" << block.outer_param << "\", \"outer_value\": "
                  << format_float(block.outer_value, cfg.precision) << "}";
        for (const auto& row : block.rows) {
            if (!row.ok) {
                sep() << "{\"param\": " << format_float(row.param, cfg.precision)
                      << ", \"error\": " << json(row.error).dump() << "}";
                continue;
            }
            for (std::size_t m = 0; m < row.modes.size(); ++m) {
                const auto& e = row.modes[m];
                sep() << "{\"param\": " << format_float(row.param, cfg.precision)
                      << ", \"mode\": " << m << ", \"track_id\": " << e.track_id
                      << ", \"shift\": " << format_float(e.shift, cfg.precision)
                      << ", \"gamma\": " << format_float(e.gamma, cfg.precision) << "}";
            }
        }
    }
    out << "\n  ]\n}\n";
    return out.str();
}

sweep_result parse_csv(const std::string& text) {
    sweep_result res;
    res.blocks.emplace_back();
    std::istringstream in(text);
    std::string line;
    bool any_outer = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# outer: ", 0) == 0) {
            std::string rest = line.substr(9);
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw config_error("csv: malformed outer comment");
            if (any_outer || !res.blocks.back().rows.empty()) res.blocks.emplace_back();
            any_outer = true;
            res.blocks.back().has_outer = true;
            res.blocks.back().outer_param = rest.substr(0, eq);
            res.blocks.back().outer_value = std::strtod(rest.c_str() + eq + 1, nullptr);
            continue;
        }
        if (line.rfind("# error param=", 0) == 0) {
            sweep_row row;
            row.ok = false;
            const char* p = line.c_str() + 14;
            char* end = nullptr;
            row.param = std::strtod(p, &end);
            row.error = (end && *end == ' ') ? std::string(end + 1) : std::string();
            res.blocks.back().rows.push_back(std::move(row));
            res.partial = true;
            continue;
        }
        if (line[0] == '#' || line.rfind("param,", 0) == 0) continue;
        double param, shift, gamma;
        int mode, track;
        if (std::sscanf(line.c_str(), "%lf,%d,%d,%lf,%lf", &param, &mode, &track, &shift,
                        &gamma) != 5)
            throw config_error("csv: malformed data line: " + line);
        auto& rows = res.blocks.back().rows;
        if (mode == 0 || rows.empty() || !rows.back().ok) rows.push_back({param, true, "", {}});
        rows.back().modes.push_back({track, shift, gamma});
    }
    return res;
}

int default_workers() {
    if (const char* env = std::getenv("CURVED_LATTICE_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace clat::sweep
