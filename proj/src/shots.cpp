#include "pathspin/shots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pathspin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kQuantum = std::uint64_t{1} << 50;

}  // namespace

std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x1234567887654321ULL));
}

std::string CountTable::to_csv_row(const std::string& setting_id) const {
    std::ostringstream out;
    out << setting_id << ',' << n3p << ',' << n3m << ',' << n4p << ',' << n4m
        << ',' << total;
    return out.str();
}

std::array<double, 4> born_probabilities(const StateVector& state,
                                         const JointSetting& j) {
    if (std::abs(state.norm() - 1.0) > 1e-9) {
        throw validation_error("state must be normalized");
    }
    const Operator a = j.path.to_operator("path");
    const Operator id_path = identity({"path"});
    // P(psi3) = (I + A)/2, P(psi4) = (I - A)/2
    const Operator p3 = scale(0.5, add(id_path, a));
    const Operator p4 = scale(0.5, add(id_path, scale(-1.0, a)));

    std::array<double, 4> p{};
    int k = 0;
    for (const Operator* chan : {&p3, &p4}) {
        for (int sign : {+1, -1}) {
            const Operator joint =
                tensor(*chan, projector_along(j.spin, sign, "spin"));
            const StateVector projected = apply(joint, state);
            p[k++] = projected.norm() * projected.norm();
        }
    }
    const double sum = p[0] + p[1] + p[2] + p[3];
    if (std::abs(sum - 1.0) > kStructuralTol) {
        throw numeric_error("born probabilities do not sum to 1");
    }
    return p;
}

CountTable sample_counts(const std::array<double, 4>& probs,
                         const SamplerConfig& cfg) {
    if (cfg.shots < 1) throw validation_error("shots must be >= 1");
    std::array<double, 4> p = probs;
    double sum = 0.0;
    for (double& v : p) {
        if (v < -1e-9 || v > 1.0 + 1e-9) {
            throw numeric_error("probability outside [0,1] beyond 1e-9");
        }
        v = std::clamp(v, 0.0, 1.0);
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw numeric_error("probabilities drift from 1 beyond 1e-9");
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        for (double& v : p) v /= sum;
    }

    // quantize to integer thresholds on a 2^50 grid
    std::array<std::uint64_t, 4> q{};
    std::uint64_t qsum = 0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        q[i] = static_cast<std::uint64_t>(
            std::llround(p[i] * static_cast<double>(kQuantum)));
        qsum += q[i];
        if (p[i] > p[largest]) largest = i;
    }
    // settle rounding drift on the largest bucket
    if (qsum > kQuantum) {
        q[largest] -= qsum - kQuantum;
    } else {
        q[largest] += kQuantum - qsum;
    }
    const std::array<std::uint64_t, 3> cut = {q[0], q[0] + q[1],
                                              q[0] + q[1] + q[2]};

    CountTable t;
    for (std::uint64_t shot = 0; shot < cfg.shots; ++shot) {
        const std::uint64_t r = counter_rng(cfg.seed, shot) >> 14;  // 50 bits
        if (r < cut[0]) ++t.n3p;
        else if (r < cut[1]) ++t.n3m;
        else if (r < cut[2]) ++t.n4p;
        else ++t.n4m;
    }
    t.total = cfg.shots;
    return t;
}

CountTable sample_counts(const StateVector& state, const JointSetting& j,
                         const SamplerConfig& cfg) {
    return sample_counts(born_probabilities(state, j), cfg);
}

double estimate_correlation(const CountTable& t) {
    if (t.total < 1) throw validation_error("count table is empty");
    const double num = static_cast<double>(t.n3p) - static_cast<double>(t.n3m) -
                       static_cast<double>(t.n4p) + static_cast<double>(t.n4m);
    return num / static_cast<double>(t.total);
}

}  // namespace pathspin
