#pragma once

// Machine-readable reports. JSON trees are built in insertion order and
// serialized by our own printer (17 significant digits, fixed layout) so a
// given config + seed produces byte-identical output.

#include <abmetric/classifier.hpp>
#include <abmetric/config.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace abm {

using Json = nlohmann::ordered_json;

enum class Command { scalars, analyze, verify, classify, equivalence };

Command parse_command(const std::string& name);
std::string command_name(Command cmd);

struct RunOptions {
    std::optional<std::vector<double>> point;   // overrides the probe points
    std::optional<int> grid;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> tol_profile;     // "strict" | "fd"
};

struct RunResult {
    Json report;
    std::string csv;     // scalar tables (scalars command)
    int exit_code = 0;   // 0 ok, 3 verification failure
};

RunResult run_command(Command cmd, const Fixture& fixture, const RunOptions& opt = {});

// Deterministic serializer: objects in insertion order, doubles as %.17g.
// Throws DomainError if any numeric entry is non-finite.
std::string dump_json(const Json& j);

Json json_vec(const Vec& v);
Json json_mat(const Mat& m);

}  // namespace abm
