// Command-line front end: each subcommand runs one check end to end and
// prints a machine-readable report.
//
// Exit codes: 0 success, 2 parse error, 3 validation error, 4 numerical
// invariant failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pathspin/scenario.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumeric = 4;

pathspin::Overrides make_overrides(std::optional<std::uint64_t> seed,
                                   std::optional<std::uint64_t> shots,
                                   const std::string& wing1) {
    pathspin::Overrides ov;
    if (!seed) {
        if (const char* env = std::getenv("PATHSPIN_SEED")) {
            ov.seed = std::strtoull(env, nullptr, 10);
        }
    } else {
        ov.seed = seed;
    }
    ov.shots = shots;
    if (!wing1.empty()) {
        if (wing1 == "A") {
            ov.wing1 = pathspin::Wing1Setting{pathspin::Wing1Kind::A, 0.0};
        } else if (wing1 == "B") {
            ov.wing1 = pathspin::Wing1Setting{pathspin::Wing1Kind::B, 0.0};
        } else if (wing1.rfind("angle:", 0) == 0) {
            ov.wing1 = pathspin::Wing1Setting{pathspin::Wing1Kind::Angle,
                                              std::stod(wing1.substr(6))};
        } else {
            throw pathspin::validation_error(
                "--wing1 must be A, B, or angle:<radians>");
        }
    }
    return ov;
}

void emit(const nlohmann::json& report, const std::string& format) {
    if (format == "csv") {
        std::cout << pathspin::scenario_csv(report);
    } else {
        std::cout << report.dump(2) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-spin contextuality test bench"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "json";
    std::string wing1;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::string family_name = "free-spin";
    std::vector<double> angles;
    int grid_points = 19;

    auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
        if (needs_file) {
            cmd->add_option("file", file, "apparatus description file")
                ->required();
        }
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", seed, "override RNG seed");
        cmd->add_option("--shots", shots, "override shot count");
    };

    CLI::App* run = app.add_subcommand("run", "full subensemble NRI scenario");
    add_common(run);
    run->add_option("--wing1", wing1, "override wing-1 setting (A|B|angle:<rad>)");

    CLI::App* nosignal =
        app.add_subcommand("nosignal", "no-signaling residual check");
    add_common(nosignal);

    CLI::App* sweep =
        app.add_subcommand("sweep", "wing-1 angle sweep (x-z plane)");
    add_common(sweep);
    sweep->add_option("--points", grid_points,
                      "number of grid points over [0, pi]");
    sweep->add_option("--angle", angles, "explicit angles in radians");

    CLI::App* enumerate_hv = app.add_subcommand(
        "enumerate-hv", "exhaustive noncontextual assignment table");

    CLI::App* optimize =
        app.add_subcommand("optimize", "maximize |s| per subensemble");
    add_common(optimize);
    optimize->add_option("--family", family_name, "constraint family")
        ->check(CLI::IsMember({"paper-literal", "with-phase", "free-spin"}));
    optimize->add_option("--wing1", wing1,
                         "override wing-1 setting (A|B|angle:<rad>)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        if (enumerate_hv->parsed()) {
            std::cout << pathspin::enumerate_hv_table();
            return 0;
        }

        const pathspin::Overrides ov = make_overrides(seed, shots, wing1);
        const pathspin::ApparatusSpec spec = pathspin::with_overrides(
            pathspin::parse_apparatus_file(file), ov);

        if (run->parsed()) {
            emit(pathspin::run_scenario(spec), format);
        } else if (nosignal->parsed()) {
            const nlohmann::json report = pathspin::nosignal_check(spec);
            if (format == "csv") {
                std::cout << "rho_residual,stats_residual,max_sampled_z\n"
                          << report.at("rho_residual").get<double>() << ','
                          << report.at("stats_residual").get<double>() << ','
                          << report.at("max_sampled_z").get<double>() << '\n';
            } else {
                std::cout << report.dump(2) << '\n';
            }
        } else if (sweep->parsed()) {
            if (angles.empty()) {
                constexpr double kPi = 3.14159265358979323846;
                for (int i = 0; i < grid_points; ++i) {
                    angles.push_back(i * kPi / (grid_points - 1));
                }
            }
            const auto rows = pathspin::sweep_wing1_angle(spec, angles);
            if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : rows) {
                    j.push_back({{"alpha", r.alpha},
                                 {"weight_plus", r.weight_plus},
                                 {"concurrence_plus", r.concurrence_plus},
                                 {"smax_plus", r.smax_plus},
                                 {"weight_minus", r.weight_minus},
                                 {"concurrence_minus", r.concurrence_minus},
                                 {"smax_minus", r.smax_minus}});
                }
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << pathspin::sweep_csv(rows);
            }
        } else if (optimize->parsed()) {
            pathspin::SettingFamily fam = pathspin::SettingFamily::FreeSpin;
            if (family_name == "paper-literal") {
                fam = pathspin::SettingFamily::PaperLiteral;
            } else if (family_name == "with-phase") {
                fam = pathspin::SettingFamily::WithPhase;
            }
            std::cout << pathspin::optimize_report(spec, fam).dump(2) << '\n';
        }
        return 0;
    } catch (const pathspin::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const pathspin::validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const pathspin::numeric_error& e) {
        std::cerr << "numerical invariant failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
