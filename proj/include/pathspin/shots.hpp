#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pathspin/nri.hpp"
#include "pathspin/qcore.hpp"

namespace pathspin {

/// Detector counts N'3, N''3, N'4, N''4 for one joint setting.
struct CountTable {
    std::uint64_t n3p = 0;
    std::uint64_t n3m = 0;
    std::uint64_t n4p = 0;
    std::uint64_t n4m = 0;
    std::uint64_t total = 0;

    std::string to_csv_row(const std::string& setting_id) const;
};

struct SamplerConfig {
    std::uint64_t seed = 1;
    std::uint64_t shots = 1;
};

/// Stateless counter-based generator: identical (seed, index) always yields
/// the identical word, on every platform.
std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t index);

/// p(channel, spin sign) in the order (psi3,+), (psi3,-), (psi4,+), (psi4,-).
std::array<double, 4> born_probabilities(const StateVector& state,
                                         const JointSetting& j);

/// Deterministic multinomial draw; probabilities are quantized to a 2^-50
/// integer grid so the sampling path is integer-only.
CountTable sample_counts(const StateVector& state, const JointSetting& j,
                         const SamplerConfig& cfg);

CountTable sample_counts(const std::array<double, 4>& probs,
                         const SamplerConfig& cfg);

/// (n3p - n3m - n4p + n4m) / total, channel sign +1 for psi3, -1 for psi4.
double estimate_correlation(const CountTable& t);

}  // namespace pathspin
