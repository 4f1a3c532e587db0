#include "pathspin/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace pathspin {

namespace {

constexpr std::size_t kMaxDim = 16;

void check_labels_unique(const std::vector<std::string>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw validation_error("duplicate subsystem label: " + l);
        }
    }
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool BlochVector::is_unit(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

BlochVector BlochVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw validation_error("cannot normalize zero Bloch vector");
    return {x / n, y / n, z / n};
}

BlochVector bloch_x() { return {1.0, 0.0, 0.0}; }
BlochVector bloch_y() { return {0.0, 1.0, 0.0}; }
BlochVector bloch_z() { return {0.0, 0.0, 1.0}; }

StateVector::StateVector(std::vector<std::string> labels, std::vector<cplx> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    check_labels_unique(labels_);
    const std::size_t expected = std::size_t{1} << labels_.size();
    if (amps_.size() != expected) {
        throw validation_error("amplitude count does not match 2^k for k labels");
    }
    if (expected > kMaxDim) {
        throw validation_error("Hilbert dimension exceeds supported maximum 16");
    }
    for (const cplx& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw validation_error("non-finite amplitude");
        }
    }
}

StateVector StateVector::basis(std::vector<std::string> labels, std::size_t index) {
    std::vector<cplx> amps(std::size_t{1} << labels.size(), cplx{0.0, 0.0});
    amps.at(index) = cplx{1.0, 0.0};
    return StateVector(std::move(labels), std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw validation_error("cannot normalize zero state");
    std::vector<cplx> out(amps_);
    for (cplx& a : out) a /= n;
    return StateVector(labels_, std::move(out));
}

StateVector StateVector::canonical_phase() const {
    for (const cplx& a : amps_) {
        if (std::abs(a) > 1e-14) {
            const cplx phase = std::conj(a) / std::abs(a);
            std::vector<cplx> out(amps_);
            for (cplx& v : out) v *= phase;
            return StateVector(labels_, std::move(out));
        }
    }
    return *this;
}

StateVector StateVector::relabeled(std::vector<std::string> labels) const {
    if (labels.size() != labels_.size()) {
        throw validation_error("relabel requires same subsystem count");
    }
    return StateVector(std::move(labels), amps_);
}

std::size_t StateVector::label_position(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw validation_error("unknown label: " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) {
        throw validation_error("inner product requires identical labels");
    }
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a.amps()[i]) * b.amps()[i];
    }
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b));
}

Operator::Operator(std::vector<std::string> target, std::vector<cplx> matrix,
                   OpKind kind)
    : target_(std::move(target)), matrix_(std::move(matrix)), kind_(kind) {
    check_labels_unique(target_);
    dim_ = std::size_t{1} << target_.size();
    if (matrix_.size() != dim_ * dim_) {
        throw validation_error("matrix size does not match 2^k x 2^k");
    }
    if (dim_ > kMaxDim) {
        throw validation_error("Hilbert dimension exceeds supported maximum 16");
    }
    if (kind_ == OpKind::unitary) {
        // ||U^dag U - I||_max <= 1e-12
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                cplx s{0.0, 0.0};
                for (std::size_t k = 0; k < dim_; ++k) {
                    s += std::conj(at(k, r)) * at(k, c);
                }
                const cplx expect_v = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                if (std::abs(s - expect_v) > kStructuralTol) {
                    throw validation_error("operator tagged unitary is not unitary");
                }
            }
        }
    } else if (kind_ == OpKind::hermitian || kind_ == OpKind::projector) {
        if (!is_hermitian()) {
            throw validation_error("operator tagged hermitian is not hermitian");
        }
        if (kind_ == OpKind::projector) {
            for (std::size_t r = 0; r < dim_; ++r) {
                for (std::size_t c = 0; c < dim_; ++c) {
                    cplx s{0.0, 0.0};
                    for (std::size_t k = 0; k < dim_; ++k) s += at(r, k) * at(k, c);
                    if (std::abs(s - at(r, c)) > kStructuralTol) {
                        throw validation_error(
                            "operator tagged projector is not idempotent");
                    }
                }
            }
        }
    }
}

bool Operator::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
        }
    }
    return true;
}

Operator Operator::dagger() const {
    std::vector<cplx> out(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out[r * dim_ + c] = std::conj(at(c, r));
        }
    }
    return Operator(target_, std::move(out), kind_);
}

Operator identity(std::vector<std::string> target) {
    const std::size_t d = std::size_t{1} << target.size();
    std::vector<cplx> m(d * d, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = cplx{1.0, 0.0};
    return Operator(std::move(target), std::move(m), OpKind::unitary);
}

Operator sigma_x(const std::string& label) {
    return Operator({label}, {0, 1, 1, 0}, OpKind::unitary);
}

Operator sigma_y(const std::string& label) {
    return Operator({label}, {cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}},
                    OpKind::unitary);
}

Operator sigma_z(const std::string& label) {
    return Operator({label}, {1, 0, 0, -1}, OpKind::unitary);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::string> labels(a.labels());
    for (const auto& l : b.labels()) {
        if (std::find(labels.begin(), labels.end(), l) != labels.end()) {
            throw validation_error("tensor label collision: " + l);
        }
        labels.push_back(l);
    }
    std::vector<cplx> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a.amps()[i] * b.amps()[j];
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

Operator tensor(const Operator& a, const Operator& b) {
    std::vector<std::string> target(a.target());
    for (const auto& l : b.target()) {
        if (std::find(target.begin(), target.end(), l) != target.end()) {
            throw validation_error("tensor label collision: " + l);
        }
        target.push_back(l);
    }
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    std::vector<cplx> m(da * db * da * db);
    for (std::size_t ra = 0; ra < da; ++ra) {
        for (std::size_t rb = 0; rb < db; ++rb) {
            for (std::size_t ca = 0; ca < da; ++ca) {
                for (std::size_t cb = 0; cb < db; ++cb) {
                    m[(ra * db + rb) * da * db + (ca * db + cb)] =
                        a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    OpKind kind = OpKind::general;
    if (a.kind() == b.kind() &&
        (a.kind() == OpKind::unitary || a.kind() == OpKind::hermitian ||
         a.kind() == OpKind::projector)) {
        kind = a.kind();
    }
    return Operator(std::move(target), std::move(m), kind);
}

Operator compose(const Operator& a, const Operator& b) {
    if (a.target() != b.target()) {
        throw validation_error("compose requires identical targets");
    }
    const std::size_t d = a.dim();
    std::vector<cplx> m(d * d, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx ark = a.at(r, k);
            if (ark == cplx{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < d; ++c) {
                m[r * d + c] += ark * b.at(k, c);
            }
        }
    }
    OpKind kind = (a.kind() == OpKind::unitary && b.kind() == OpKind::unitary)
                      ? OpKind::unitary
                      : OpKind::general;
    return Operator(a.target(), std::move(m), kind);
}

Operator add(const Operator& a, const Operator& b) {
    if (a.target() != b.target()) {
        throw validation_error("add requires identical targets");
    }
    std::vector<cplx> m(a.matrix());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += b.matrix()[i];
    return Operator(a.target(), std::move(m), OpKind::general);
}

Operator scale(cplx c, const Operator& a) {
    std::vector<cplx> m(a.matrix());
    for (cplx& v : m) v *= c;
    return Operator(a.target(), std::move(m), OpKind::general);
}

Operator embed(const Operator& op, const std::vector<std::string>& full) {
    // positions of op's target labels inside `full`
    std::vector<std::size_t> pos;
    for (const auto& l : op.target()) {
        const auto it = std::find(full.begin(), full.end(), l);
        if (it == full.end()) {
            throw validation_error("embed: target label not present: " + l);
        }
        pos.push_back(static_cast<std::size_t>(it - full.begin()));
    }
    const std::size_t n = full.size();
    const std::size_t d = std::size_t{1} << n;
    const std::size_t k = op.target().size();
    const std::size_t dk = std::size_t{1} << k;

    auto sub_index = [&](std::size_t i) {
        std::size_t t = 0;
        for (std::size_t b = 0; b < k; ++b) {
            const std::size_t bit = (i >> (n - 1 - pos[b])) & 1u;
            t = (t << 1) | bit;
        }
        return t;
    };
    auto with_sub = [&](std::size_t i, std::size_t t) {
        std::size_t out = i;
        for (std::size_t b = 0; b < k; ++b) {
            const std::size_t bit = (t >> (k - 1 - b)) & 1u;
            const std::size_t shift = n - 1 - pos[b];
            out = (out & ~(std::size_t{1} << shift)) | (bit << shift);
        }
        return out;
    };

    std::vector<cplx> m(d * d, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t tr = sub_index(r);
        for (std::size_t tc = 0; tc < dk; ++tc) {
            const std::size_t c = with_sub(r, tc);
            m[r * d + c] = op.at(tr, tc);
        }
    }
    OpKind kind = (op.kind() == OpKind::unitary) ? OpKind::unitary
                  : op.kind() == OpKind::hermitian ? OpKind::hermitian
                                                   : OpKind::general;
    return Operator(full, std::move(m), kind);
}

StateVector apply(const Operator& op, const StateVector& s) {
    const Operator full = (op.target() == s.labels())
                              ? op
                              : embed(op, s.labels());
    const std::size_t d = s.dim();
    std::vector<cplx> out(d, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            out[r] += full.at(r, c) * s.amps()[c];
        }
    }
    return StateVector(s.labels(), std::move(out));
}

double expect(const Operator& op, const StateVector& s) {
    const Operator full = (op.target() == s.labels())
                              ? op
                              : embed(op, s.labels());
    if (!full.is_hermitian()) {
        throw validation_error("expect requires a Hermitian operator");
    }
    const StateVector os = apply(full, s);
    const cplx v = inner(s, os);
    if (std::abs(v.imag()) > 1e-10) {
        throw numeric_error("expectation has imaginary residue above 1e-10");
    }
    return v.real();
}

Operator pauli_along(const BlochVector& n, const std::string& label) {
    if (!n.is_unit()) throw validation_error("pauli_along requires a unit vector");
    std::vector<cplx> m = {cplx{n.z, 0.0}, cplx{n.x, -n.y},
                           cplx{n.x, n.y}, cplx{-n.z, 0.0}};
    return Operator({label}, std::move(m), OpKind::hermitian);
}

Operator projector_along(const BlochVector& n, int sign,
                         const std::string& label) {
    if (!n.is_unit()) {
        throw validation_error("projector_along requires a unit vector");
    }
    if (sign != 1 && sign != -1) {
        throw validation_error("projector sign must be +1 or -1");
    }
    const double s = static_cast<double>(sign);
    std::vector<cplx> m = {cplx{0.5 + s * (0.5 * n.z), 0.0},
                           cplx{s * (0.5 * n.x), -s * (0.5 * n.y)},
                           cplx{s * (0.5 * n.x), s * (0.5 * n.y)},
                           cplx{0.5 - s * (0.5 * n.z), 0.0}};
    return Operator({label}, std::move(m), OpKind::projector);
}

}  // namespace pathspin
