#pragma once

#include <array>
#include <utility>
#include <vector>

#include "pathspin/apparatus.hpp"
#include "pathspin/qcore.hpp"

namespace pathspin {

/// One commuting path/spin pair to be measured jointly.
struct JointSetting {
    PathObservable path;
    BlochVector spin;
};

/// The four correlations of the CHSH-form combination, ordered
/// (A1,b1), (A1,b2), (A2,b1), (A2,b2), and s = e11 + e12 + e21 - e22.
struct NriValue {
    double e11;
    double e12;
    double e21;
    double e22;
    double s;
};

/// One deterministic noncontextual value assignment.
struct HvAssignment {
    int a1;  // v(A1)
    int a2;  // v(A2)
    int sz;  // v(sigma_z)
    int sx;  // v(sigma_x)

    int combination() const { return a1 * sz + a1 * sx + a2 * sz - a2 * sx; }
};

double correlation(const StateVector& state, const JointSetting& j);

NriValue nri_value(const StateVector& state, const PathObservable& a1,
                   const PathObservable& a2, const BlochVector& b1 = bloch_z(),
                   const BlochVector& b2 = bloch_x());

/// All 16 sign assignments with their combination value (always +-2).
std::vector<std::pair<HvAssignment, int>> enumerate_noncontextual();

/// Weighted average s over a distribution of assignments; throws if the
/// weights are not a distribution or |s| exceeds 2 beyond 1e-12.
double hv_bound_check(const std::vector<std::pair<HvAssignment, double>>& mix);

/// 3x3 correlation tensor T_ij = <sigma_i^path (x) sigma_j^spin>.
std::array<std::array<double, 3>, 3> correlation_tensor(const StateVector& state);

/// Horodecki maximum 2*sqrt(t1^2 + t2^2) over all measurement directions.
double tsirelson_max(const StateVector& state);

enum class SettingFamily { PaperLiteral, WithPhase, FreeSpin };

struct OptimalSettings {
    SettingFamily family;
    double theta1;  // BS2 angle of A1: gamma = cos theta, delta = sin theta
    double theta2;
    double chi1;
    double chi2;
    BlochVector b1;
    BlochVector b2;
    double s;  // signed value at the settings; |s| is the family optimum

    PathObservable path1() const;
    PathObservable path2() const;
};

/// Deterministic maximization of |s| within the constraint family: 2-degree
/// coarse grid then coordinate pattern search down to 1e-6 rad steps.
OptimalSettings optimize_settings(const StateVector& state, SettingFamily family);

}  // namespace pathspin
