#include "ffp/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

namespace ffp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void wrong_type(const std::string& path, const char* expected) {
    throw ScenarioSyntaxError("scenario field '" + path + "' must be " + expected);
}

[[noreturn]] void out_of_range(const std::string& path, const std::string& why) {
    throw ScenarioRangeError("scenario field '" + path + "' " + why);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) {
            const std::string where = path.empty() ? item.key() : path + "." + item.key();
            throw ScenarioUnknownKeyError("scenario has unknown key '" + where + "'");
        }
    }
}

const json& require_field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        const std::string where = path.empty() ? key : path + "." + key;
        throw ScenarioSyntaxError("scenario is missing required field '" + where + "'");
    }
    return *it;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) wrong_type(path, "a string");
    return j.get<std::string>();
}

double get_finite_number(const json& j, const std::string& path) {
    if (!j.is_number()) wrong_type(path, "a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) out_of_range(path, "must be finite");
    return v;
}

int get_positive_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) wrong_type(path, "an integer");
    const auto v = j.get<std::int64_t>();
    if (v < 1) out_of_range(path, "must be at least 1");
    if (v > std::numeric_limits<int>::max()) out_of_range(path, "is too large");
    return static_cast<int>(v);
}

std::size_t get_index(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) wrong_type(path, "a nonnegative integer");
    return j.get<std::size_t>();
}

Point get_point(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array()) wrong_type(path, "an array of numbers");
    if (j.size() != dim) {
        std::ostringstream msg;
        msg << "scenario field '" << path << "' must have " << dim << " entries, got " << j.size();
        throw ScenarioDimensionError(msg.str());
    }
    Point out;
    out.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k)
        out.push_back(get_finite_number(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

Seminorm parse_seminorm(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_object()) wrong_type(path, "an object");
    const std::string kind = get_string(require_field(j, path, "kind"), path + ".kind");
    try {
        if (kind == "abs") {
            check_keys(j, path, {"kind", "axis", "weight"});
            const std::size_t axis = get_index(require_field(j, path, "axis"), path + ".axis");
            if (axis >= dim) {
                std::ostringstream msg;
                msg << "scenario field '" << path << ".axis' must be below dim = " << dim
                    << ", got " << axis;
                throw ScenarioDimensionError(msg.str());
            }
            double weight = 1.0;
            if (auto it = j.find("weight"); it != j.end())
                weight = get_finite_number(*it, path + ".weight");
            if (!(weight > 0.0)) out_of_range(path + ".weight", "must be positive");
            return Seminorm::weighted_abs(dim, axis, weight);
        }
        if (kind == "sup") {
            check_keys(j, path, {"kind", "weights"});
            Point weights = get_point(require_field(j, path, "weights"), path + ".weights", dim);
            bool any_positive = false;
            for (double w : weights) {
                if (w < 0.0) out_of_range(path + ".weights", "must be entrywise nonnegative");
                if (w > 0.0) any_positive = true;
            }
            if (!any_positive) out_of_range(path + ".weights", "needs a positive entry");
            return Seminorm::weighted_sup(std::move(weights));
        }
        if (kind == "ellipsoid") {
            check_keys(j, path, {"kind", "semi_axes"});
            Point axes = get_point(require_field(j, path, "semi_axes"), path + ".semi_axes", dim);
            for (double a : axes)
                if (!(a > 0.0)) out_of_range(path + ".semi_axes", "must be entrywise positive");
            return Seminorm::ellipsoid_gauge(std::move(axes));
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const ConfigError& e) {
        out_of_range(path, std::string("is invalid: ") + e.what());
    }
    out_of_range(path + ".kind",
                 "names an unknown seminorm kind '" + kind + "' (expected abs, sup, ellipsoid)");
}

MapSpec parse_map(const json& j, std::size_t dim) {
    if (!j.is_object()) wrong_type("map", "an object");
    const std::string kind = get_string(require_field(j, "map", "kind"), "map.kind");
    try {
        if (kind == "affine") {
            check_keys(j, "map", {"kind", "A", "b"});
            const json& a_json = require_field(j, "map", "A");
            if (!a_json.is_array()) wrong_type("map.A", "an array of rows");
            if (a_json.size() != dim) {
                std::ostringstream msg;
                msg << "scenario field 'map.A' must have " << dim << " rows, got " << a_json.size();
                throw ScenarioDimensionError(msg.str());
            }
            std::vector<Point> rows;
            rows.reserve(dim);
            for (std::size_t r = 0; r < dim; ++r)
                rows.push_back(get_point(a_json[r], "map.A[" + std::to_string(r) + "]", dim));
            Point b = get_point(require_field(j, "map", "b"), "map.b", dim);
            return MapSpec::affine(Matrix::from_rows(rows), std::move(b));
        }
        if (kind == "registered") {
            check_keys(j, "map", {"kind", "name"});
            const std::string name = get_string(require_field(j, "map", "name"), "map.name");
            return MapSpec::registered(name, dim);
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const ConfigError& e) {
        out_of_range("map", std::string("is invalid: ") + e.what());
    }
    out_of_range("map.kind",
                 "names an unknown map kind '" + kind + "' (expected affine, registered)");
}

LambdaSchedule parse_schedule(const json& j) {
    if (!j.is_object()) wrong_type("schedule", "an object");
    check_keys(j, "schedule", {"name", "value"});
    const std::string name = get_string(require_field(j, "schedule", "name"), "schedule.name");
    std::optional<double> value;
    if (auto it = j.find("value"); it != j.end())
        value = get_finite_number(*it, "schedule.value");
    try {
        return LambdaSchedule::from_name(name, value);
    } catch (const ConfigError& e) {
        out_of_range("schedule", std::string("is invalid: ") + e.what());
    }
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ScenarioSyntaxError("scenario document must be a JSON object");
    check_keys(j, "",
               {"name", "dim", "tnorm", "seminorms", "map", "y0", "schedule", "t_probe",
                "alpha_tol", "max_iters", "cauchy_window", "seed"});

    Scenario s;
    const json& dim_json = require_field(j, "", "dim");
    if (!dim_json.is_number_unsigned()) wrong_type("dim", "a positive integer");
    s.dim = dim_json.get<std::size_t>();
    if (s.dim == 0) out_of_range("dim", "must be at least 1");
    if (s.dim > 4096) out_of_range("dim", "is unreasonably large (limit 4096)");

    if (auto it = j.find("name"); it != j.end()) s.name = get_string(*it, "name");

    if (auto it = j.find("tnorm"); it != j.end()) {
        const std::string name = get_string(*it, "tnorm");
        try {
            s.tnorm = TNorm::from_name(name);
        } catch (const ConfigError& e) {
            out_of_range("tnorm", std::string("is invalid: ") + e.what());
        }
    }

    const json& seminorms_json = require_field(j, "", "seminorms");
    if (!seminorms_json.is_array()) wrong_type("seminorms", "an array");
    if (seminorms_json.empty())
        throw ScenarioDimensionError("scenario field 'seminorms' needs at least one member");
    for (std::size_t i = 0; i < seminorms_json.size(); ++i)
        s.seminorms.push_back(parse_seminorm(seminorms_json[i],
                                             "seminorms[" + std::to_string(i) + "]", s.dim));

    s.map = parse_map(require_field(j, "", "map"), s.dim);

    if (auto it = j.find("y0"); it != j.end())
        s.y0 = get_point(*it, "y0", s.dim);
    else
        s.y0 = zeros(s.dim);

    if (auto it = j.find("schedule"); it != j.end()) s.schedule = parse_schedule(*it);

    if (auto it = j.find("t_probe"); it != j.end()) {
        s.t_probe = get_finite_number(*it, "t_probe");
        if (!(s.t_probe > 0.0)) out_of_range("t_probe", "must be positive");
    }
    if (auto it = j.find("alpha_tol"); it != j.end()) {
        s.alpha_tol = get_finite_number(*it, "alpha_tol");
        if (!(s.alpha_tol > 0.0 && s.alpha_tol < 1.0)) out_of_range("alpha_tol", "must lie in (0,1)");
    }
    if (auto it = j.find("max_iters"); it != j.end())
        s.max_iters = get_positive_int(*it, "max_iters");
    if (auto it = j.find("cauchy_window"); it != j.end())
        s.cauchy_window = get_positive_int(*it, "cauchy_window");
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned()) wrong_type("seed", "a nonnegative integer");
        s.seed = it->get<std::uint64_t>();
    }
    return s;
}

ordered_json seminorm_to_json(const Seminorm& q) {
    ordered_json out;
    switch (q.kind()) {
        case SeminormKind::WeightedAbs:
            out["kind"] = "abs";
            out["axis"] = q.axis();
            out["weight"] = q.weight();
            break;
        case SeminormKind::WeightedSup:
            out["kind"] = "sup";
            out["weights"] = q.weights();
            break;
        case SeminormKind::EllipsoidGauge:
            out["kind"] = "ellipsoid";
            out["semi_axes"] = q.semi_axes();
            break;
    }
    return out;
}

ordered_json map_to_json(const MapSpec& map) {
    ordered_json out;
    if (map.is_affine()) {
        const AffineMap& aff = map.affine_form();
        out["kind"] = "affine";
        std::vector<Point> rows;
        rows.reserve(map.dim());
        for (std::size_t r = 0; r < map.dim(); ++r) {
            Point row(map.dim());
            for (std::size_t c = 0; c < map.dim(); ++c) row[c] = aff.a(r, c);
            rows.push_back(std::move(row));
        }
        out["A"] = rows;
        out["b"] = aff.b;
    } else {
        out["kind"] = "registered";
        out["name"] = map.registered_name();
    }
    return out;
}

}  // namespace

SolverConfig Scenario::to_solver_config() const {
    SolverConfig cfg(map, family());
    cfg.tnorm = tnorm;
    cfg.y0 = y0;
    cfg.schedule = schedule;
    cfg.t_probe = t_probe;
    cfg.alpha_tol = alpha_tol;
    cfg.max_iters = max_iters;
    cfg.cauchy_window = cauchy_window;
    cfg.seed = seed;
    return cfg;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioIoError("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw ScenarioIoError("failed while reading scenario file '" + path + "'");
    return parse_scenario(buffer.str());
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioSyntaxError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

std::string canonical_scenario_text(const Scenario& s) {
    ordered_json out;
    out["name"] = s.name;
    out["dim"] = s.dim;
    out["tnorm"] = std::string(s.tnorm.name());
    ordered_json members = ordered_json::array();
    for (const Seminorm& q : s.seminorms) members.push_back(seminorm_to_json(q));
    out["seminorms"] = std::move(members);
    out["map"] = map_to_json(s.map);
    out["y0"] = s.y0;
    ordered_json schedule;
    schedule["name"] = s.schedule.name();
    if (auto v = s.schedule.constant_value()) schedule["value"] = *v;
    out["schedule"] = std::move(schedule);
    out["t_probe"] = s.t_probe;
    out["alpha_tol"] = s.alpha_tol;
    out["max_iters"] = s.max_iters;
    out["cauchy_window"] = s.cauchy_window;
    out["seed"] = s.seed;
    return out.dump(2) + "\n";
}

}  // namespace ffp
