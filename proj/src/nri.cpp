#include "pathspin/nri.hpp"

#include <algorithm>
#include <cmath>

namespace pathspin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTieTol = 1e-9;
constexpr double kGridStep = kPi / 90.0;  // 2 degrees
constexpr double kMinStep = 1e-6;

using Vec3 = std::array<double, 3>;
using Tensor3 = std::array<std::array<double, 3>, 3>;

Vec3 mul(const Tensor3& t, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i) {
        out[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
    }
    return out;
}

Vec3 mul_t(const Tensor3& t, const Vec3& v) {
    Vec3 out{};
    for (int j = 0; j < 3; ++j) {
        out[j] = t[0][j] * v[0] + t[1][j] * v[1] + t[2][j] * v[2];
    }
    return out;
}

double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm3(const Vec3& v) { return std::sqrt(dot(v, v)); }

BlochVector to_bloch(const Vec3& v) { return {v[0], v[1], v[2]}; }

/// Pseudo-spin direction of the family: chi rotates the y-z circle direction
/// about k-hat, covering the full sphere when chi varies.
Vec3 path_dir(double theta, double chi) {
    return {std::sin(2.0 * theta) * std::sin(chi),
            std::sin(2.0 * theta) * std::cos(chi), std::cos(2.0 * theta)};
}

/// Tracks the best (max) value with lexicographic tie-break on the argument
/// tuple for values equal within kTieTol.
struct ArgBest {
    double value = -1e300;
    std::vector<double> arg;

    void offer(double v, std::vector<double> a) {
        if (v > value + kTieTol) {
            value = v;
            arg = std::move(a);
        } else if (v > value - kTieTol && !arg.empty() &&
                   std::lexicographical_compare(a.begin(), a.end(), arg.begin(),
                                                arg.end())) {
            if (v > value) value = v;
            arg = std::move(a);
        }
    }
};

/// Coordinate pattern search: halve the step when no coordinate move
/// improves, stop below kMinStep. Deterministic.
template <typename F>
double pattern_search(std::vector<double>& x, F eval) {
    double best = eval(x);
    double step = kGridStep;
    while (step >= kMinStep) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double sign : {+1.0, -1.0}) {
                std::vector<double> trial = x;
                trial[i] += sign * step;
                const double v = eval(trial);
                if (v > best) {
                    best = v;
                    x = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

const std::vector<std::string> kStateLabels = {"path", "spin"};

void check_state(const StateVector& state) {
    if (state.labels() != kStateLabels) {
        throw validation_error("expected a state on labels (path, spin)");
    }
    if (std::abs(state.norm() - 1.0) > 1e-9) {
        throw validation_error("state must be normalized");
    }
}

std::array<double, 3> sym3_eigenvalues(Tensor3 m) {
    // cyclic Jacobi on a symmetric 3x3
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off < 1e-15) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                const double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                Tensor3 r = m;
                for (int k = 0; k < 3; ++k) {
                    r[p][k] = c * m[p][k] - s * m[q][k];
                    r[q][k] = s * m[p][k] + c * m[q][k];
                }
                Tensor3 r2 = r;
                for (int k = 0; k < 3; ++k) {
                    r2[k][p] = c * r[k][p] - s * r[k][q];
                    r2[k][q] = s * r[k][p] + c * r[k][q];
                }
                m = r2;
            }
        }
    }
    std::array<double, 3> ev = {m[0][0], m[1][1], m[2][2]};
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace

double correlation(const StateVector& state, const JointSetting& j) {
    check_state(state);
    const Operator joint =
        tensor(j.path.to_operator("path"), pauli_along(j.spin, "spin"));
    return expect(joint, state);
}

NriValue nri_value(const StateVector& state, const PathObservable& a1,
                   const PathObservable& a2, const BlochVector& b1,
                   const BlochVector& b2) {
    NriValue v{};
    v.e11 = correlation(state, {a1, b1});
    v.e12 = correlation(state, {a1, b2});
    v.e21 = correlation(state, {a2, b1});
    v.e22 = correlation(state, {a2, b2});
    v.s = v.e11 + v.e12 + v.e21 - v.e22;
    return v;
}

std::vector<std::pair<HvAssignment, int>> enumerate_noncontextual() {
    std::vector<std::pair<HvAssignment, int>> out;
    for (int mask = 0; mask < 16; ++mask) {
        HvAssignment h{(mask & 8) ? 1 : -1, (mask & 4) ? 1 : -1,
                       (mask & 2) ? 1 : -1, (mask & 1) ? 1 : -1};
        out.emplace_back(h, h.combination());
    }
    return out;
}

double hv_bound_check(const std::vector<std::pair<HvAssignment, double>>& mix) {
    double wsum = 0.0;
    double s = 0.0;
    for (const auto& [h, w] : mix) {
        if (w < -1e-12) throw validation_error("negative weight in mixture");
        wsum += w;
        s += w * h.combination();
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw validation_error("mixture weights must sum to 1");
    }
    if (std::abs(s) > 2.0 + 1e-12) {
        throw numeric_error("noncontextual mixture exceeded the bound 2");
    }
    return s;
}

std::array<std::array<double, 3>, 3> correlation_tensor(const StateVector& state) {
    check_state(state);
    const std::array<Operator, 3> paulis_path = {
        sigma_x("path"), sigma_y("path"), sigma_z("path")};
    const std::array<Operator, 3> paulis_spin = {
        sigma_x("spin"), sigma_y("spin"), sigma_z("spin")};
    Tensor3 t{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t[i][j] = expect(tensor(paulis_path[i], paulis_spin[j]), state);
        }
    }
    return t;
}

double tsirelson_max(const StateVector& state) {
    const Tensor3 t = correlation_tensor(state);
    Tensor3 tt{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += t[k][i] * t[k][j];
            tt[i][j] = v;
        }
    }
    const auto ev = sym3_eigenvalues(tt);
    return 2.0 * std::sqrt(std::max(0.0, ev[0]) + std::max(0.0, ev[1]));
}

PathObservable OptimalSettings::path1() const {
    return path_observable(std::cos(theta1), std::sin(theta1), chi1);
}

PathObservable OptimalSettings::path2() const {
    return path_observable(std::cos(theta2), std::sin(theta2), chi2);
}

OptimalSettings optimize_settings(const StateVector& state, SettingFamily family) {
    const Tensor3 t = correlation_tensor(state);
    const Vec3 bz = {0.0, 0.0, 1.0};
    const Vec3 bx = {1.0, 0.0, 0.0};
    const Vec3 p = mul(t, {bz[0] + bx[0], bz[1] + bx[1], bz[2] + bx[2]});
    const Vec3 q = mul(t, {bz[0] - bx[0], bz[1] - bx[1], bz[2] - bx[2]});

    OptimalSettings out{};
    out.family = family;
    out.b1 = bloch_z();
    out.b2 = bloch_x();

    if (family == SettingFamily::PaperLiteral ||
        family == SettingFamily::WithPhase) {
        const bool with_phase = family == SettingFamily::WithPhase;
        // s = a1.p + a2.q is separable; maximize and minimize each term
        auto optimize_term = [&](const Vec3& coef, bool maximize) {
            const double sign = maximize ? 1.0 : -1.0;
            ArgBest best;
            const int nchi = with_phase ? 180 : 1;
            for (int i = 0; i < 90; ++i) {
                const double theta = i * kGridStep;
                for (int j = 0; j < nchi; ++j) {
                    const double chi = j * (2.0 * kPi / 180.0);
                    const double v = sign * dot(path_dir(theta, chi), coef);
                    best.offer(v, with_phase ? std::vector<double>{theta, chi}
                                             : std::vector<double>{theta});
                }
            }
            std::vector<double> x = best.arg;
            const double v = pattern_search(x, [&](const std::vector<double>& y) {
                return sign * dot(path_dir(y[0], with_phase ? y[1] : 0.0), coef);
            });
            return std::make_pair(sign * v, x);
        };

        const auto [fmax, arg_fmax] = optimize_term(p, true);
        const auto [fmin, arg_fmin] = optimize_term(p, false);
        const auto [gmax, arg_gmax] = optimize_term(q, true);
        const auto [gmin, arg_gmin] = optimize_term(q, false);

        const double s_pos = fmax + gmax;
        const double s_neg = fmin + gmin;
        bool take_pos = std::abs(s_pos) > std::abs(s_neg) + kTieTol;
        if (!take_pos && std::abs(s_pos) > std::abs(s_neg) - kTieTol) {
            // tie: lexicographically smaller (theta1, theta2, chi1, chi2)
            std::vector<double> tp = {arg_fmax[0], arg_gmax[0]};
            std::vector<double> tn = {arg_fmin[0], arg_gmin[0]};
            if (with_phase) {
                tp.insert(tp.end(), {arg_fmax[1], arg_gmax[1]});
                tn.insert(tn.end(), {arg_fmin[1], arg_gmin[1]});
            }
            take_pos = !std::lexicographical_compare(tn.begin(), tn.end(),
                                                     tp.begin(), tp.end());
        }
        const auto& a1 = take_pos ? arg_fmax : arg_fmin;
        const auto& a2 = take_pos ? arg_gmax : arg_gmin;
        out.theta1 = a1[0];
        out.theta2 = a2[0];
        out.chi1 = with_phase ? a1[1] : 0.0;
        out.chi2 = with_phase ? a2[1] : 0.0;
        out.s = take_pos ? s_pos : s_neg;
        return out;
    }

    // FreeSpin: chi = 0 (paths in the y-z circle), spins closed-form optimal
    auto spin_vectors = [&](double th1, double th2) {
        const Vec3 a1 = path_dir(th1, 0.0);
        const Vec3 a2 = path_dir(th2, 0.0);
        const Vec3 u = mul_t(t, {a1[0] + a2[0], a1[1] + a2[1], a1[2] + a2[2]});
        const Vec3 v = mul_t(t, {a1[0] - a2[0], a1[1] - a2[1], a1[2] - a2[2]});
        return std::make_pair(u, v);
    };
    auto eval = [&](const std::vector<double>& x) {
        const auto [u, v] = spin_vectors(x[0], x[1]);
        return norm3(u) + norm3(v);
    };

    ArgBest best;
    for (int i = 0; i < 90; ++i) {
        for (int j = 0; j < 90; ++j) {
            const std::vector<double> x = {i * kGridStep, j * kGridStep};
            best.offer(eval(x), x);
        }
    }
    std::vector<double> x = best.arg;
    const double s = pattern_search(x, eval);
    out.theta1 = x[0];
    out.theta2 = x[1];
    const auto [u, v] = spin_vectors(x[0], x[1]);
    out.b1 = norm3(u) > 1e-12 ? to_bloch({u[0] / norm3(u), u[1] / norm3(u),
                                          u[2] / norm3(u)})
                              : bloch_z();
    out.b2 = norm3(v) > 1e-12 ? to_bloch({v[0] / norm3(v), v[1] / norm3(v),
                                          v[2] / norm3(v)})
                              : bloch_x();
    out.s = s;
    return out;
}

}  // namespace pathspin
