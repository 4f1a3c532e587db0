#include "pathspin/apparatus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pathspin {

namespace {

const std::vector<std::string> kPipelineLabels = {"path", "spin"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
    return out;
}

double parse_real(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected a real number, got '" + s + "'", line);
    }
}

BlochVector parse_direction(const std::string& s, int line) {
    if (s == "x") return bloch_x();
    if (s == "y") return bloch_y();
    if (s == "z") return bloch_z();
    const auto parts = split(s, ':');
    if (parts.size() != 3) {
        throw parse_error("expected direction x|y|z or ux:uy:uz, got '" + s + "'",
                          line);
    }
    return BlochVector{parse_real(parts[0], line), parse_real(parts[1], line),
                       parse_real(parts[2], line)};
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void BeamSplitterParams::validate() const {
    const double s = gamma * gamma + delta * delta;
    if (std::abs(s - 1.0) > kStructuralTol) {
        throw validation_error("beam-splitter parameters violate gamma^2+delta^2=1 (" +
                               fmt_real(s) + ")");
    }
}

BlochVector Wing1Setting::direction() const {
    switch (kind) {
        case Wing1Kind::A: return bloch_z();
        case Wing1Kind::B: return bloch_x();
        case Wing1Kind::Angle: return {std::cos(angle), 0.0, std::sin(angle)};
    }
    throw validation_error("invalid wing-1 setting");
}

std::string Wing1Setting::name() const {
    switch (kind) {
        case Wing1Kind::A: return "A";
        case Wing1Kind::B: return "B";
        case Wing1Kind::Angle: return "angle:" + fmt_real(angle);
    }
    return "?";
}

PathObservable path_observable(double gamma, double delta, double chi) {
    BeamSplitterParams{gamma, delta}.validate();
    const double g2d = 2.0 * gamma * delta;
    const double dz = gamma * gamma - delta * delta;
    const double c = std::cos(chi);
    const double s = std::sin(chi);
    // conjugation of the chi=0 matrix by diag(e^{i chi}, 1)
    PathObservable a;
    a.gamma = gamma;
    a.delta = delta;
    a.chi = chi;
    a.matrix = {cplx{dz, 0.0}, cplx{g2d * s, -g2d * c},
                cplx{g2d * s, g2d * c}, cplx{-dz, 0.0}};
    a.bloch = BlochVector{g2d * s, g2d * c, dz};
    return a;
}

Operator PathObservable::to_operator(const std::string& label) const {
    return Operator({label}, {matrix[0], matrix[1], matrix[2], matrix[3]},
                    OpKind::hermitian);
}

Operator bs1_unitary() {
    const double r = 1.0 / std::sqrt(2.0);
    return Operator({"path"},
                    {cplx{r, 0.0}, cplx{0.0, r}, cplx{0.0, r}, cplx{r, 0.0}},
                    OpKind::unitary);
}

Operator sf_unitary(const BlochVector& axis) {
    if (!axis.is_unit()) throw validation_error("spin-flipper axis must be unit");
    const Operator rot = scale(cplx{0.0, 1.0}, pauli_along(axis, "spin"));
    const Operator p1 = Operator({"path"}, {1, 0, 0, 0}, OpKind::projector);
    const Operator p2 = Operator({"path"}, {0, 0, 0, 1}, OpKind::projector);
    const Operator u =
        add(tensor(p1, rot), tensor(p2, identity({"spin"})));
    return Operator(u.target(), u.matrix(), OpKind::unitary);
}

Operator mirror_unitary() { return identity(kPipelineLabels); }

Operator phase_unitary(double chi) {
    return Operator({"path"},
                    {std::polar(1.0, chi), cplx{0, 0}, cplx{0, 0}, cplx{1.0, 0.0}},
                    OpKind::unitary);
}

Operator bs2_unitary(const BeamSplitterParams& p) {
    p.validate();
    // rows are <psi3| and <psi4| so outputs land on the computational basis
    return Operator({"path"},
                    {cplx{0.0, p.gamma}, cplx{p.delta, 0.0},
                     cplx{p.delta, 0.0}, cplx{0.0, p.gamma}},
                    OpKind::unitary);
}

StateVector prepare_bs1_sf(const StateVector& spin_in, const BlochVector& axis) {
    if (spin_in.num_subsystems() != 1) {
        throw validation_error("prepare_bs1_sf expects a single-spin state");
    }
    StateVector spin = spin_in.labels()[0] == "spin"
                           ? spin_in
                           : spin_in.relabeled({"spin"});
    const double n = spin.norm();
    if (std::abs(n - 1.0) > 1e-9) {
        throw validation_error("input spin state must be normalized");
    }
    StateVector s = tensor(StateVector::basis({"path"}, 0), spin);
    s = apply(bs1_unitary(), s);
    s = apply(sf_unitary(axis), s);
    return s;
}

Operator component_unitary(const Component& c) {
    switch (c.kind) {
        case Component::Kind::BS1: return embed(bs1_unitary(), kPipelineLabels);
        case Component::Kind::SpinFlipper: return sf_unitary(c.axis);
        case Component::Kind::Mirror: return mirror_unitary();
        case Component::Kind::PhaseShifter:
            return embed(phase_unitary(c.chi), kPipelineLabels);
        case Component::Kind::BS2: return embed(bs2_unitary(c.bs), kPipelineLabels);
    }
    throw validation_error("invalid component kind");
}

Operator compile_pipeline(const std::vector<Component>& components) {
    Operator u = identity(kPipelineLabels);
    for (const Component& c : components) {
        u = compose(component_unitary(c), u);  // first component acts first
    }
    return u;
}

Operator compile_pipeline(const ApparatusSpec& spec) {
    return compile_pipeline(spec.pipeline);
}

Operator compile_preparation(const ApparatusSpec& spec) {
    std::vector<Component> prep;
    for (const Component& c : spec.pipeline) {
        if (c.kind == Component::Kind::BS2) break;
        prep.push_back(c);
    }
    return compile_pipeline(prep);
}

namespace {

void validate_spec(const ApparatusSpec& spec) {
    int bs1 = 0;
    int bs2 = 0;
    for (const Component& c : spec.pipeline) {
        if (c.kind == Component::Kind::BS1) ++bs1;
        if (c.kind == Component::Kind::BS2) ++bs2;
        if (c.kind == Component::Kind::SpinFlipper && !c.axis.is_unit()) {
            throw validation_error("spin-flipper axis must be a unit vector");
        }
        if (c.kind == Component::Kind::BS2) c.bs.validate();
    }
    if (bs1 != 1) throw validation_error("exactly one BS1 required");
    if (bs2 > 1) throw validation_error("at most one BS2 allowed");
    if (spec.measurement.shots < 1) {
        throw validation_error("shot count must be positive");
    }
    for (const auto& d : spec.measurement.spin_dirs) {
        if (!d.is_unit()) throw validation_error("spin direction must be unit");
    }
    for (const auto& p : spec.measurement.bs2_settings) p.validate();
    if (spec.measurement.spin_dirs.size() != 2) {
        throw validation_error("exactly two spin directions required");
    }
    if (spec.measurement.bs2_settings.size() != 2) {
        throw validation_error("exactly two BS2 settings required");
    }
}

}  // namespace

ApparatusSpec parse_apparatus(const std::string& text) {
    ApparatusSpec spec;
    spec.measurement.spin_dirs = {bloch_z(), bloch_x()};
    spec.measurement.bs2_settings = {
        {1.0, 0.0}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}};

    enum class Section { None, Source, Pipeline, Measurement };
    Section section = Section::None;

    std::stringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[source]") section = Section::Source;
            else if (line == "[pipeline]") section = Section::Pipeline;
            else if (line == "[measurement]") section = Section::Measurement;
            else throw parse_error("unknown section '" + line + "'", lineno);
            continue;
        }

        if (section == Section::Pipeline) {
            // allow spaces around '=' in component options
            std::string squeezed;
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (line[i] == '=') {
                    while (!squeezed.empty() && squeezed.back() == ' ') {
                        squeezed.pop_back();
                    }
                    squeezed += '=';
                    while (i + 1 < line.size() &&
                           (line[i + 1] == ' ' || line[i + 1] == '\t')) {
                        ++i;
                    }
                } else {
                    squeezed += line[i];
                }
            }
            std::stringstream ls(squeezed);
            std::string name;
            ls >> name;
            Component c{};
            if (name == "bs1") {
                c.kind = Component::Kind::BS1;
            } else if (name == "sf") {
                c.kind = Component::Kind::SpinFlipper;
            } else if (name == "mirror") {
                c.kind = Component::Kind::Mirror;
            } else if (name == "phase") {
                c.kind = Component::Kind::PhaseShifter;
            } else if (name == "bs2") {
                c.kind = Component::Kind::BS2;
            } else {
                throw parse_error("unknown component '" + name + "'", lineno);
            }
            std::string kv;
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw parse_error("expected key=value, got '" + kv + "'", lineno);
                }
                const std::string key = kv.substr(0, eq);
                const std::string val = kv.substr(eq + 1);
                if (key == "axis" && c.kind == Component::Kind::SpinFlipper) {
                    c.axis = parse_direction(val, lineno);
                } else if (key == "chi" && c.kind == Component::Kind::PhaseShifter) {
                    c.chi = parse_real(val, lineno);
                } else if (key == "arm" && c.kind == Component::Kind::PhaseShifter) {
                    if (val != "1") {
                        throw parse_error("phase shifter supports arm=1 only", lineno);
                    }
                } else if (key == "gamma" && c.kind == Component::Kind::BS2) {
                    c.bs.gamma = parse_real(val, lineno);
                } else if (key == "delta" && c.kind == Component::Kind::BS2) {
                    c.bs.delta = parse_real(val, lineno);
                } else {
                    throw parse_error("unexpected key '" + key + "' for component '" +
                                          name + "'",
                                      lineno);
                }
            }
            spec.pipeline.push_back(c);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error("expected key = value", lineno);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (section == Section::Source) {
            if (key != "wing1_setting") {
                throw parse_error("unknown source key '" + key + "'", lineno);
            }
            if (val == "A") {
                spec.source = {Wing1Kind::A, 0.0};
            } else if (val == "B") {
                spec.source = {Wing1Kind::B, 0.0};
            } else if (val.rfind("angle:", 0) == 0) {
                spec.source = {Wing1Kind::Angle, parse_real(val.substr(6), lineno)};
            } else {
                throw parse_error("wing1_setting must be A, B, or angle:<radians>",
                                  lineno);
            }
        } else if (section == Section::Measurement) {
            if (key == "spin_dirs") {
                spec.measurement.spin_dirs.clear();
                for (const auto& tok : split(val, ',')) {
                    spec.measurement.spin_dirs.push_back(parse_direction(tok, lineno));
                }
            } else if (key == "bs2_settings") {
                spec.measurement.bs2_settings.clear();
                for (const auto& tok : split(val, ',')) {
                    const auto parts = split(tok, ':');
                    if (parts.size() != 2) {
                        throw parse_error("expected gamma:delta pair, got '" + tok + "'",
                                          lineno);
                    }
                    spec.measurement.bs2_settings.push_back(
                        {parse_real(parts[0], lineno), parse_real(parts[1], lineno)});
                }
            } else if (key == "shots") {
                const double v = parse_real(val, lineno);
                if (v < 1 || v != std::floor(v)) {
                    throw parse_error("shots must be a positive integer", lineno);
                }
                spec.measurement.shots = static_cast<std::uint64_t>(v);
            } else if (key == "seed") {
                const double v = parse_real(val, lineno);
                if (v < 0 || v != std::floor(v)) {
                    throw parse_error("seed must be a non-negative integer", lineno);
                }
                spec.measurement.seed = static_cast<std::uint64_t>(v);
            } else {
                throw parse_error("unknown measurement key '" + key + "'", lineno);
            }
        } else {
            throw parse_error("content outside any section", lineno);
        }
    }

    validate_spec(spec);
    return spec;
}

ApparatusSpec parse_apparatus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open apparatus file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_apparatus(buf.str());
}

std::string ApparatusSpec::canonical() const {
    std::stringstream out;
    out << "[source]\nwing1_setting = " << source.name() << "\n[pipeline]\n";
    for (const Component& c : pipeline) {
        switch (c.kind) {
            case Component::Kind::BS1: out << "bs1\n"; break;
            case Component::Kind::SpinFlipper:
                out << "sf axis=" << fmt_real(c.axis.x) << ':' << fmt_real(c.axis.y)
                    << ':' << fmt_real(c.axis.z) << "\n";
                break;
            case Component::Kind::Mirror: out << "mirror\n"; break;
            case Component::Kind::PhaseShifter:
                out << "phase chi=" << fmt_real(c.chi) << " arm=1\n";
                break;
            case Component::Kind::BS2:
                out << "bs2 gamma=" << fmt_real(c.bs.gamma)
                    << " delta=" << fmt_real(c.bs.delta) << "\n";
                break;
        }
    }
    out << "[measurement]\nspin_dirs = ";
    for (std::size_t i = 0; i < measurement.spin_dirs.size(); ++i) {
        const auto& d = measurement.spin_dirs[i];
        if (i) out << ", ";
        out << fmt_real(d.x) << ':' << fmt_real(d.y) << ':' << fmt_real(d.z);
    }
    out << "\nbs2_settings = ";
    for (std::size_t i = 0; i < measurement.bs2_settings.size(); ++i) {
        const auto& p = measurement.bs2_settings[i];
        if (i) out << ", ";
        out << fmt_real(p.gamma) << ':' << fmt_real(p.delta);
    }
    out << "\nshots = " << measurement.shots << "\nseed = " << measurement.seed
        << "\n";
    return out.str();
}

std::uint64_t ApparatusSpec::content_hash() const {
    const std::string s = canonical();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace pathspin
