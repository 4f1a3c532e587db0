#pragma once

#include <string>
#include <vector>

#include "pathspin/qcore.hpp"

namespace pathspin {

/// Outcome branch of a projective wing-1 spin measurement on the singlet.
struct MeasurementBranch {
    int outcome;             // +1 or -1
    double prob;             // each 1/2 for the singlet
    StateVector conditional; // wing-2 spin state, label "spin", canonical phase
};

struct Subensemble {
    double weight;
    StateVector state;
    std::string tag;  // e.g. "A/+1"
};

struct DensityMatrix {
    std::vector<std::string> labels;
    std::vector<cplx> matrix;  // row-major, dim = 2^labels

    std::size_t dim() const { return std::size_t{1} << labels.size(); }
    cplx at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }
    double trace_real() const;
};

/// (|up_z>|down_z> - |down_z>|up_z>)/sqrt(2) on labels (spin1, spin2).
StateVector make_singlet();

/// Projective measurement of n.sigma on spin1; conditional states are the
/// -outcome eigenstates of n.sigma on spin2, relabeled "spin".
std::vector<MeasurementBranch> measure_wing1(const StateVector& singlet,
                                             const BlochVector& n);

DensityMatrix reduced_density(const StateVector& s,
                              const std::vector<std::string>& keep);

double max_abs_entry_diff(const DensityMatrix& a, const DensityMatrix& b);

/// 2|ad - bc| for a pure state on exactly two two-level labels.
double concurrence(const StateVector& s);

}  // namespace pathspin
