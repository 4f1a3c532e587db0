#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pathspin/errors.hpp"

namespace pathspin {

using cplx = std::complex<double>;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;

/// Unit-sphere direction. Tagged `unit` checks are done at the call sites
/// that require them (pauli_along, projector_along, spin-flipper axis).
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm() const;
    bool is_unit(double tol = 1e-9) const;
    BlochVector normalized() const;
};

BlochVector bloch_x();
BlochVector bloch_y();
BlochVector bloch_z();

/// Normalized complex amplitude vector over an ordered list of two-level
/// subsystem labels. labels[0] is the most significant index bit.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<cplx> amps);

    static StateVector basis(std::vector<std::string> labels, std::size_t index);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<cplx>& amps() const { return amps_; }
    std::size_t dim() const { return amps_.size(); }
    std::size_t num_subsystems() const { return labels_.size(); }

    double norm() const;
    StateVector normalized() const;

    /// Multiplies by the global phase making the first nonzero amplitude
    /// real positive. Used for reproducible conditional-state fixtures.
    StateVector canonical_phase() const;

    StateVector relabeled(std::vector<std::string> labels) const;

    std::size_t label_position(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::vector<cplx> amps_;
};

/// |<a|b>|^2, global-phase insensitive. Labels must match.
double fidelity(const StateVector& a, const StateVector& b);

cplx inner(const StateVector& a, const StateVector& b);

enum class OpKind { unitary, hermitian, projector, general };

/// Dense square matrix on a declared subsystem subset. Kind invariants
/// (unitarity, idempotence) are checked at construction to 1e-12.
class Operator {
public:
    Operator(std::vector<std::string> target, std::vector<cplx> matrix,
             OpKind kind = OpKind::general);

    const std::vector<std::string>& target() const { return target_; }
    const std::vector<cplx>& matrix() const { return matrix_; }
    std::size_t dim() const { return dim_; }
    OpKind kind() const { return kind_; }

    cplx at(std::size_t r, std::size_t c) const { return matrix_[r * dim_ + c]; }

    bool is_hermitian(double tol = kStructuralTol) const;

    Operator dagger() const;

private:
    std::vector<std::string> target_;
    std::vector<cplx> matrix_;
    std::size_t dim_;
    OpKind kind_;
};

Operator identity(std::vector<std::string> target);
Operator sigma_x(const std::string& label);
Operator sigma_y(const std::string& label);
Operator sigma_z(const std::string& label);

StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

Operator compose(const Operator& a, const Operator& b);  // a * b, same target
Operator add(const Operator& a, const Operator& b);
Operator scale(cplx c, const Operator& a);

/// Embeds op onto the full label list (identity on the rest, label order of
/// `full`), producing a 2^k x 2^k matrix.
Operator embed(const Operator& op, const std::vector<std::string>& full);

StateVector apply(const Operator& op, const StateVector& s);

double expect(const Operator& op, const StateVector& s);

Operator pauli_along(const BlochVector& n, const std::string& label = "spin");
Operator projector_along(const BlochVector& n, int sign,
                         const std::string& label = "spin");

}  // namespace pathspin
