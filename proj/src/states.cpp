#include "pathspin/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pathspin {

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += at(i, i).real();
    return t;
}

StateVector make_singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({"spin1", "spin2"},
                       {cplx{0.0, 0.0}, cplx{r, 0.0}, cplx{-r, 0.0}, cplx{0.0, 0.0}});
}

std::vector<MeasurementBranch> measure_wing1(const StateVector& singlet,
                                             const BlochVector& n) {
    if (!n.is_unit()) throw validation_error("measurement axis must be unit");
    if (singlet.labels() != std::vector<std::string>{"spin1", "spin2"}) {
        throw validation_error("measure_wing1 expects labels (spin1, spin2)");
    }
    std::vector<MeasurementBranch> out;
    for (int outcome : {+1, -1}) {
        const Operator proj = projector_along(n, outcome, "spin1");
        const StateVector branch = apply(proj, singlet);
        const double p = branch.norm() * branch.norm();
        // outcome eigenstate of n.sigma = normalized nonzero column of the
        // rank-1 projector; contract it out of the projected joint state
        std::array<cplx, 2> eig = {proj.at(0, 0), proj.at(1, 0)};
        if (std::abs(eig[0]) + std::abs(eig[1]) < 1e-9) {
            eig = {proj.at(0, 1), proj.at(1, 1)};
        }
        const double en = std::sqrt(std::norm(eig[0]) + std::norm(eig[1]));
        eig[0] /= en;
        eig[1] /= en;
        std::vector<cplx> cond(2, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < 2; ++i) {    // spin1 index
            for (std::size_t j = 0; j < 2; ++j) {  // spin2 index
                cond[j] += std::conj(eig[i]) * branch.amps()[i * 2 + j];
            }
        }
        StateVector c({"spin"}, std::move(cond));
        out.push_back({outcome, p, c.normalized().canonical_phase()});
    }
    return out;
}

DensityMatrix reduced_density(const StateVector& s,
                              const std::vector<std::string>& keep) {
    if (keep.empty()) throw validation_error("keep set must be non-empty");
    std::vector<std::size_t> kpos;
    for (const auto& l : keep) kpos.push_back(s.label_position(l));
    std::vector<std::size_t> tpos;  // traced-out positions
    for (std::size_t i = 0; i < s.num_subsystems(); ++i) {
        if (std::find(kpos.begin(), kpos.end(), i) == kpos.end()) tpos.push_back(i);
    }
    const std::size_t n = s.num_subsystems();
    const std::size_t dk = std::size_t{1} << kpos.size();
    const std::size_t dt = std::size_t{1} << tpos.size();

    auto full_index = [&](std::size_t ki, std::size_t ti) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < kpos.size(); ++b) {
            const std::size_t bit = (ki >> (kpos.size() - 1 - b)) & 1u;
            idx |= bit << (n - 1 - kpos[b]);
        }
        for (std::size_t b = 0; b < tpos.size(); ++b) {
            const std::size_t bit = (ti >> (tpos.size() - 1 - b)) & 1u;
            idx |= bit << (n - 1 - tpos[b]);
        }
        return idx;
    };

    std::vector<cplx> rho(dk * dk, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cplx v{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                v += s.amps()[full_index(r, t)] * std::conj(s.amps()[full_index(c, t)]);
            }
            rho[r * dk + c] = v;
        }
    }
    return DensityMatrix{keep, std::move(rho)};
}

double max_abs_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.labels.size() != b.labels.size()) {
        throw validation_error("density matrices have different shapes");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.matrix.size(); ++i) {
        m = std::max(m, std::abs(a.matrix[i] - b.matrix[i]));
    }
    return m;
}

double concurrence(const StateVector& s) {
    if (s.num_subsystems() != 2) {
        throw validation_error("concurrence requires exactly two two-level labels");
    }
    const auto& a = s.amps();
    return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

}  // namespace pathspin
