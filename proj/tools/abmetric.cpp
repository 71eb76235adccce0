// abmetric: curvature invariants and isotropy classification for
// (alpha, beta)-metrics. See README.md for the config grammar.

#include <abmetric/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    if (path.rfind("builtin:", 0) == 0) return abm::builtin_fixture_text(path.substr(8));
    std::ifstream in(path);
    if (!in) throw abm::ValidationError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int exit_code_for(const abm::Error& e) {
    const std::string& k = e.kind();
    if (k == "ParseError" || k == "ValidationError") return 1;
    return 2;  // precondition / numeric degeneracy class
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature invariants of (alpha, beta)-metrics"};
    app.require_subcommand(0, 1);

    std::string config_path, point_str, report_path, format = "json", tol_profile;
    int grid = 0;
    std::int64_t seed = -1;
    bool list_fixtures = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file or builtin:<name>")->required();
        sub->add_option("--point", point_str, "probe point override, comma separated");
        sub->add_option("--grid", grid, "s-grid size override");
        sub->add_option("--tol-profile", tol_profile, "strict | fd");
        sub->add_option("--report", report_path, "write the report to this path");
        sub->add_option("--format", format, "json | csv");
        sub->add_option("--seed", seed, "direction-sequence seed override");
    };
    for (const char* name : {"scalars", "analyze", "verify", "classify", "equivalence"})
        add_common(app.add_subcommand(name));
    app.add_flag("--list-fixtures", list_fixtures, "print builtin fixture names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_fixtures) {
        for (const auto& n : abm::builtin_fixture_names()) std::cout << n << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }

    try {
        const abm::Command cmd = abm::parse_command(app.get_subcommands().front()->get_name());
        const abm::FixtureConfig cfg = abm::parse_config(slurp(config_path));
        const abm::Fixture fx = abm::build_fixture(cfg);

        abm::RunOptions opt;
        if (!point_str.empty()) opt.point = parse_point(point_str);
        if (grid > 0) opt.grid = grid;
        if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);
        if (!tol_profile.empty()) opt.tol_profile = tol_profile;

        const abm::RunResult rr = abm::run_command(cmd, fx, opt);
        const std::string payload = (format == "csv" && !rr.csv.empty()) ? rr.csv : abm::dump_json(rr.report);
        if (report_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(report_path, std::ios::binary);
            if (!out) throw abm::ValidationError("report", "cannot write '" + report_path + "'");
            out << payload;
        }
        if (rr.exit_code != 0) std::cerr << "verification failures present\n";
        return rr.exit_code;
    } catch (const abm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
