#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathspin/qcore.hpp"

namespace pathspin {

struct BeamSplitterParams {
    double gamma;  // reflection amplitude
    double delta;  // transmission amplitude

    void validate() const;  // gamma^2 + delta^2 = 1 within 1e-12
};

/// Wing-1 measurement setting. A = sigma_z, B = sigma_x, Angle = direction
/// in the x-z plane at `angle` radians from +x.
enum class Wing1Kind { A, B, Angle };

struct Wing1Setting {
    Wing1Kind kind = Wing1Kind::A;
    double angle = 0.0;  // used when kind == Angle

    BlochVector direction() const;
    std::string name() const;
};

struct Component {
    enum class Kind { BS1, SpinFlipper, Mirror, PhaseShifter, BS2 };
    Kind kind;
    BlochVector axis{1.0, 0.0, 0.0};          // SpinFlipper
    double chi = 0.0;                          // PhaseShifter (arm psi1)
    BeamSplitterParams bs{1.0, 0.0};           // BS2
};

struct MeasurementBlock {
    std::vector<BlochVector> spin_dirs;        // default {z, x}
    std::vector<BeamSplitterParams> bs2_settings;  // path observables A1, A2
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
};

struct ApparatusSpec {
    Wing1Setting source;
    std::vector<Component> pipeline;
    MeasurementBlock measurement;

    /// Canonical text form; basis of the content hash embedded in reports.
    std::string canonical() const;
    std::uint64_t content_hash() const;  // FNV-1a 64 over canonical()
};

/// Pseudo-spin path observable A = P(psi3) - P(psi4) for BS2 parameters
/// (gamma, delta) and an optional arm-psi1 phase chi.
struct PathObservable {
    double gamma;
    double delta;
    double chi;
    std::array<cplx, 4> matrix;  // 2x2 row-major, Hermitian
    BlochVector bloch;           // unit pseudo-spin direction

    Operator to_operator(const std::string& label = "path") const;
};

PathObservable path_observable(double gamma, double delta, double chi = 0.0);

/// 50:50 splitter on the path space; the input mode is basis state 0 and is
/// mapped to (|psi1> + i|psi2>)/sqrt(2).
Operator bs1_unitary();

/// Spin rotation by pi about `axis` on arm psi1, identity on arm psi2:
/// P(psi1) (x) i(axis.sigma) + P(psi2) (x) I. The factor i is the precession
/// phase that makes the BS1+SF evolution land exactly on the printed
/// path-spin entangled states.
Operator sf_unitary(const BlochVector& axis);

Operator mirror_unitary();                   // identity on (path, spin)
Operator phase_unitary(double chi);          // diag(e^{i chi}, 1) on path
Operator bs2_unitary(const BeamSplitterParams& p);  // maps psi3/psi4 to outputs

/// Full BS1-then-SF evolution of a single-spin input (label "spin"); returns
/// a state on (path, spin).
StateVector prepare_bs1_sf(const StateVector& spin_in,
                           const BlochVector& axis = {1.0, 0.0, 0.0});

ApparatusSpec parse_apparatus(const std::string& text);
ApparatusSpec parse_apparatus_file(const std::string& path);

Operator component_unitary(const Component& c);  // on labels (path, spin)

/// Ordered product of component unitaries on (path, spin). Empty list gives
/// the identity.
Operator compile_pipeline(const std::vector<Component>& components);
Operator compile_pipeline(const ApparatusSpec& spec);

/// Product of the components before BS2 (the preparation stage; BS2 belongs
/// to the measurement arrangement).
Operator compile_preparation(const ApparatusSpec& spec);

}  // namespace pathspin
