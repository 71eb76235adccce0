#pragma once

// Line-oriented `key = value` config with bracketed sections. parse_config
// gives located diagnostics (ParseError with the line, ValidationError with
// the dotted field name); build_fixture materializes the fields.

#include <abmetric/curvature.hpp>
#include <abmetric/tolerances.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace abm {

struct FixtureConfig {
    std::string name = "fixture";
    int n = 2;

    std::string alpha_kind = "euclidean";        // euclidean | diagonal | conformal | funk_ball
    std::vector<std::string> alpha_entries;      // diagonal: one expression per axis
    std::string alpha_factor;                    // conformal: expression

    std::string beta_kind = "constant";          // constant | linear | funk_ball
    std::vector<double> beta_vector;
    std::vector<std::vector<double>> beta_matrix;  // b_i = M_ij x^j

    std::string phi_family = "randers";
    double phi_m = 0.0;
    double phi_k1 = 1.0, phi_k2 = 0.0, phi_k3 = 0.0;
    std::vector<double> phi_coeffs;
    double phi_radius = 0.0;
    double phi_b0 = 0.0;  // 0 = family default

    std::vector<std::vector<double>> points;
    int directions = 0;   // 0 = 4n default
    int grid = 201;
    std::uint64_t seed = 0;
    std::string tol_profile = "fd";  // fd | strict
    std::vector<double> b2_list;     // scalars command: explicit b^2 values
    std::vector<double> s_list;      // scalars command: explicit s values (else grid)
};

FixtureConfig parse_config(const std::string& text);

struct Fixture {
    FixtureConfig cfg;
    FinslerMetric fm;
    Tolerances tol;
    std::vector<Vec> points;
    int directions = 0;
};

// Validates and materializes the fields; throws ValidationError naming the
// offending field.
Fixture build_fixture(const FixtureConfig& cfg);

// Bundled fixture catalog (configs compiled in, parsed through the same
// grammar). Names accepted by the CLI as `builtin:<name>`.
std::vector<std::string> builtin_fixture_names();
std::string builtin_fixture_text(const std::string& name);

}  // namespace abm
