#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffp/contraction.hpp"
#include "ffp/errors.hpp"
#include "ffp/linalg.hpp"
#include "ffp/seminorm.hpp"
#include "ffp/solver.hpp"
#include "ffp/tnorm.hpp"

namespace ffp {

/// Scenario files are rejected loudly: every failure names the offending
/// field by path (e.g. "seminorms[1].weights", "map.A"). All five classes
/// derive from ConfigError, so callers mapping configuration trouble to one
/// exit path need a single catch.
class ScenarioError : public ConfigError {
    using ConfigError::ConfigError;
};

/// The file could not be read at all.
class ScenarioIoError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

/// The document is not valid JSON, or a field has the wrong JSON type.
class ScenarioSyntaxError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

/// A key the schema does not define. Misspelled knobs fail instead of being
/// silently ignored.
class ScenarioUnknownKeyError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

/// Array sizes or axis indices that disagree with "dim".
class ScenarioDimensionError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

/// A value outside its mathematical domain (negative weight, alpha_tol
/// outside (0,1), unknown kind names, ...).
class ScenarioRangeError : public ScenarioError {
    using ScenarioError::ScenarioError;
};

/// A fully validated problem instance: the space (dim, seminorms, tnorm), the
/// map, and the iteration knobs. Optional fields are materialized to their
/// defaults at parse time, so equality and canonical serialization are exact.
struct Scenario {
    std::string name;
    std::size_t dim = 0;
    TNorm tnorm = default_tnorm();
    std::vector<Seminorm> seminorms;
    MapSpec map;
    Point y0;
    LambdaSchedule schedule = LambdaSchedule::zero();
    double t_probe = 1.0;
    double alpha_tol = 1e-9;
    int max_iters = 200;
    int cauchy_window = 1000;
    std::uint64_t seed = 0;

    bool operator==(const Scenario&) const = default;

    SeminormFamily family() const { return SeminormFamily(seminorms); }
    SolverConfig to_solver_config() const;
};

/// Reads and validates a scenario file.
Scenario load_scenario(const std::string& path);

/// Parses scenario JSON text: syntax first, then the schema walk. Unknown
/// keys anywhere are fatal.
Scenario parse_scenario(const std::string& text);

/// Canonical JSON rendering (fixed key order, defaults materialized, trailing
/// newline). parse_scenario(canonical_scenario_text(s)) == s for every valid
/// scenario.
std::string canonical_scenario_text(const Scenario& s);

}  // namespace ffp
