#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathspin/apparatus.hpp"
#include "pathspin/nri.hpp"
#include "pathspin/shots.hpp"
#include "pathspin/states.hpp"

#include <json.hpp>

namespace pathspin {

inline constexpr const char* kVersion = "0.1.0";

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<Wing1Setting> wing1;
};

ApparatusSpec with_overrides(ApparatusSpec spec, const Overrides& ov);

/// Wing-2 subensembles for the configured wing-1 setting, after the preparation
/// stage of the pipeline (BS1 + SF and any phase, BS2 excluded).
std::vector<Subensemble> prepare_subensembles(const ApparatusSpec& spec);

/// Full end-to-end report: subensemble weights, concurrences, exact and
/// count-estimated NRI values, free-spin optima, no-signaling residuals,
/// provenance.
nlohmann::json run_scenario(const ApparatusSpec& spec, const Overrides& ov = {});

/// Exact and sampled no-signaling residuals between wing-1 settings A and B.
nlohmann::json nosignal_check(const ApparatusSpec& spec, const Overrides& ov = {});

struct SweepRow {
    double alpha;
    double weight_plus;
    double concurrence_plus;
    double smax_plus;
    double weight_minus;
    double concurrence_minus;
    double smax_minus;
};

std::vector<SweepRow> sweep_wing1_angle(const ApparatusSpec& spec,
                                        const std::vector<double>& alphas);

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// 16-row noncontextual assignment table plus the bound summary line.
std::string enumerate_hv_table();

nlohmann::json optimize_report(const ApparatusSpec& spec, SettingFamily family);

std::string scenario_csv(const nlohmann::json& report);

}  // namespace pathspin
