#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pathspin/apparatus.hpp"
#include "pathspin/nri.hpp"
#include "pathspin/scenario.hpp"
#include "pathspin/shots.hpp"
#include "pathspin/states.hpp"

namespace py = pybind11;
using namespace pathspin;

namespace {

using Amps = std::vector<std::complex<double>>;
using Triple = std::array<double, 3>;

StateVector joint_state(const Amps& amps) {
    if (amps.size() != 4) {
        throw validation_error("expected 4 amplitudes for a (path, spin) state");
    }
    return StateVector({"path", "spin"}, {amps[0], amps[1], amps[2], amps[3]});
}

StateVector spin_state(const Amps& amps) {
    if (amps.size() != 2) {
        throw validation_error("expected 2 amplitudes for a spin state");
    }
    return StateVector({"spin"}, {amps[0], amps[1]});
}

BlochVector bloch(const Triple& v) { return {v[0], v[1], v[2]}; }

SettingFamily family_from_name(const std::string& name) {
    if (name == "paper-literal") return SettingFamily::PaperLiteral;
    if (name == "with-phase") return SettingFamily::WithPhase;
    if (name == "free-spin") return SettingFamily::FreeSpin;
    throw validation_error("unknown family '" + name + "'");
}

Overrides overrides_from(std::optional<std::uint64_t> seed,
                         std::optional<std::uint64_t> shots,
                         const std::optional<std::string>& wing1) {
    Overrides ov;
    ov.seed = seed;
    ov.shots = shots;
    if (wing1) {
        if (*wing1 == "A") {
            ov.wing1 = Wing1Setting{Wing1Kind::A, 0.0};
        } else if (*wing1 == "B") {
            ov.wing1 = Wing1Setting{Wing1Kind::B, 0.0};
        } else if (wing1->rfind("angle:", 0) == 0) {
            ov.wing1 = Wing1Setting{Wing1Kind::Angle, std::stod(wing1->substr(6))};
        } else {
            throw validation_error("wing1 must be A, B, or angle:<radians>");
        }
    }
    return ov;
}

py::dict settings_dict(const OptimalSettings& o) {
    py::dict d;
    d["theta1"] = o.theta1;
    d["theta2"] = o.theta2;
    d["chi1"] = o.chi1;
    d["chi2"] = o.chi2;
    d["b1"] = Triple{o.b1.x, o.b1.y, o.b1.z};
    d["b2"] = Triple{o.b2.x, o.b2.y, o.b2.z};
    d["s"] = o.s;
    return d;
}

}  // namespace

PYBIND11_MODULE(_pathspin, m) {
    m.doc() = "Path-spin interferometer simulator core";
    m.attr("__version__") = kVersion;

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<validation_error>(m, "ValidationError",
                                             PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError",
                                          PyExc_ArithmeticError);

    m.def("make_singlet", [] {
        return make_singlet().amps();
    }, "Two-spin singlet amplitudes in the (spin1, spin2) z basis.");

    m.def("prepare_bs1_sf",
          [](const Amps& spin, const Triple& axis) {
              return prepare_bs1_sf(spin_state(spin), bloch(axis)).amps();
          },
          py::arg("spin"), py::arg("axis") = Triple{1.0, 0.0, 0.0},
          "Send a spin state through BS1 and the arm-1 spin flipper; returns "
          "the 4 (path, spin) amplitudes.");

    m.def("concurrence",
          [](const Amps& amps) { return concurrence(joint_state(amps)); },
          py::arg("amps"));

    m.def("path_observable_bloch",
          [](double gamma, double delta, double chi) {
              const auto a = path_observable(gamma, delta, chi);
              return Triple{a.bloch.x, a.bloch.y, a.bloch.z};
          },
          py::arg("gamma"), py::arg("delta"), py::arg("chi") = 0.0,
          "Pseudo-spin direction of the analyzer A = P(psi3) - P(psi4).");

    m.def("correlation",
          [](const Amps& amps, double gamma, double delta, double chi,
             const Triple& spin) {
              return correlation(joint_state(amps),
                                 {path_observable(gamma, delta, chi), bloch(spin)});
          },
          py::arg("amps"), py::arg("gamma"), py::arg("delta"),
          py::arg("chi") = 0.0, py::arg("spin") = Triple{0.0, 0.0, 1.0});

    m.def("nri_value",
          [](const Amps& amps, const Triple& a1, const Triple& a2,
             const Triple& b1, const Triple& b2) {
              const NriValue v = nri_value(
                  joint_state(amps), path_observable(a1[0], a1[1], a1[2]),
                  path_observable(a2[0], a2[1], a2[2]), bloch(b1), bloch(b2));
              py::dict d;
              d["e11"] = v.e11;
              d["e12"] = v.e12;
              d["e21"] = v.e21;
              d["e22"] = v.e22;
              d["s"] = v.s;
              return d;
          },
          py::arg("amps"), py::arg("a1"), py::arg("a2"),
          py::arg("b1") = Triple{0.0, 0.0, 1.0},
          py::arg("b2") = Triple{1.0, 0.0, 0.0},
          "CHSH-form combination; a1/a2 are (gamma, delta, chi) triples.");

    m.def("enumerate_noncontextual", [] {
        py::list out;
        for (const auto& [h, v] : enumerate_noncontextual()) {
            out.append(py::make_tuple(
                py::make_tuple(h.a1, h.a2, h.sz, h.sx), v));
        }
        return out;
    });

    m.def("tsirelson_max",
          [](const Amps& amps) { return tsirelson_max(joint_state(amps)); },
          py::arg("amps"));

    m.def("optimize_settings",
          [](const Amps& amps, const std::string& family) {
              return settings_dict(
                  optimize_settings(joint_state(amps), family_from_name(family)));
          },
          py::arg("amps"), py::arg("family") = "free-spin");

    m.def("born_probabilities",
          [](const Amps& amps, double gamma, double delta, double chi,
             const Triple& spin) {
              return born_probabilities(
                  joint_state(amps),
                  {path_observable(gamma, delta, chi), bloch(spin)});
          },
          py::arg("amps"), py::arg("gamma"), py::arg("delta"),
          py::arg("chi") = 0.0, py::arg("spin") = Triple{0.0, 0.0, 1.0});

    m.def("sample_counts",
          [](const std::array<double, 4>& probs, std::uint64_t seed,
             std::uint64_t shots) {
              const CountTable t = sample_counts(probs, SamplerConfig{seed, shots});
              py::dict d;
              d["n3p"] = t.n3p;
              d["n3m"] = t.n3m;
              d["n4p"] = t.n4p;
              d["n4m"] = t.n4m;
              d["total"] = t.total;
              return d;
          },
          py::arg("probs"), py::arg("seed"), py::arg("shots"));

    m.def("estimate_correlation",
          [](std::uint64_t n3p, std::uint64_t n3m, std::uint64_t n4p,
             std::uint64_t n4m) {
              return estimate_correlation(
                  CountTable{n3p, n3m, n4p, n4m, n3p + n3m + n4p + n4m});
          },
          py::arg("n3p"), py::arg("n3m"), py::arg("n4p"), py::arg("n4m"));

    m.def("run_scenario",
          [](const std::string& path, std::optional<std::uint64_t> seed,
             std::optional<std::uint64_t> shots,
             const std::optional<std::string>& wing1) {
              return run_scenario(parse_apparatus_file(path),
                                  overrides_from(seed, shots, wing1))
                  .dump(2);
          },
          py::arg("path"), py::arg("seed") = py::none(),
          py::arg("shots") = py::none(), py::arg("wing1") = py::none(),
          "Full scenario report as a JSON string.");

    m.def("nosignal_check",
          [](const std::string& path, std::optional<std::uint64_t> seed,
             std::optional<std::uint64_t> shots) {
              return nosignal_check(parse_apparatus_file(path),
                                    overrides_from(seed, shots, std::nullopt))
                  .dump(2);
          },
          py::arg("path"), py::arg("seed") = py::none(),
          py::arg("shots") = py::none());
}
