#include "pathspin/scenario.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace pathspin {

namespace {

std::string outcome_tag(const Wing1Setting& w, int outcome) {
    return w.name() + "/" + (outcome > 0 ? "+1" : "-1");
}

std::array<JointSetting, 4> joint_settings(const ApparatusSpec& spec) {
    const auto& m = spec.measurement;
    const PathObservable a1 =
        path_observable(m.bs2_settings[0].gamma, m.bs2_settings[0].delta);
    const PathObservable a2 =
        path_observable(m.bs2_settings[1].gamma, m.bs2_settings[1].delta);
    return {JointSetting{a1, m.spin_dirs[0]}, JointSetting{a1, m.spin_dirs[1]},
            JointSetting{a2, m.spin_dirs[0]}, JointSetting{a2, m.spin_dirs[1]}};
}

nlohmann::json bloch_json(const BlochVector& b) {
    return {{"x", b.x}, {"y", b.y}, {"z", b.z}};
}

nlohmann::json counts_json(const CountTable& t) {
    return {{"n3p", t.n3p}, {"n3m", t.n3m}, {"n4p", t.n4p},
            {"n4m", t.n4m}, {"total", t.total}};
}

const char* family_name(SettingFamily f) {
    switch (f) {
        case SettingFamily::PaperLiteral: return "paper-literal";
        case SettingFamily::WithPhase: return "with-phase";
        case SettingFamily::FreeSpin: return "free-spin";
    }
    return "?";
}

std::string hash_hex(std::uint64_t h) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

/// rho_2 of the wing-2 spin reconstructed from one setting's decomposition.
std::array<cplx, 4> mixture_density(const std::vector<MeasurementBranch>& branches) {
    std::array<cplx, 4> rho{};
    for (const auto& b : branches) {
        const auto& a = b.conditional.amps();
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                rho[r * 2 + c] += b.prob * a[r] * std::conj(a[c]);
            }
        }
    }
    return rho;
}

std::vector<Subensemble> subensembles_for(const ApparatusSpec& spec,
                                          const Wing1Setting& setting) {
    const StateVector singlet = make_singlet();
    const Operator prep = compile_preparation(spec);
    std::vector<Subensemble> out;
    for (const auto& branch : measure_wing1(singlet, setting.direction())) {
        StateVector in = tensor(StateVector::basis({"path"}, 0), branch.conditional);
        out.push_back({branch.prob, apply(prep, in),
                       outcome_tag(setting, branch.outcome)});
    }
    return out;
}

}  // namespace

ApparatusSpec with_overrides(ApparatusSpec spec, const Overrides& ov) {
    if (ov.seed) spec.measurement.seed = *ov.seed;
    if (ov.shots) {
        if (*ov.shots < 1) throw validation_error("shots must be positive");
        spec.measurement.shots = *ov.shots;
    }
    if (ov.wing1) spec.source = *ov.wing1;
    return spec;
}

std::vector<Subensemble> prepare_subensembles(const ApparatusSpec& spec) {
    return subensembles_for(spec, spec.source);
}

nlohmann::json run_scenario(const ApparatusSpec& spec_in, const Overrides& ov) {
    const ApparatusSpec spec = with_overrides(spec_in, ov);
    const auto subs = prepare_subensembles(spec);
    const auto settings = joint_settings(spec);
    const auto& m = spec.measurement;

    nlohmann::json report;
    report["version"] = kVersion;
    report["seed"] = m.seed;
    report["shots"] = m.shots;
    report["config_hash"] = hash_hex(spec.content_hash());
    report["wing1_setting"] = spec.source.name();

    double weight_sum = 0.0;
    nlohmann::json subs_json = nlohmann::json::array();
    std::size_t sub_index = 0;
    for (const auto& sub : subs) {
        weight_sum += sub.weight;
        const NriValue exact =
            nri_value(sub.state, settings[0].path, settings[2].path,
                      m.spin_dirs[0], m.spin_dirs[1]);

        NriValue sampled{};
        std::array<double, 4> est{};
        nlohmann::json counts = nlohmann::json::array();
        for (std::size_t k = 0; k < 4; ++k) {
            // independent deterministic stream per (subensemble, setting)
            const SamplerConfig cfg{counter_rng(m.seed, sub_index * 4 + k),
                                    m.shots};
            const CountTable t = sample_counts(sub.state, settings[k], cfg);
            est[k] = estimate_correlation(t);
            counts.push_back(counts_json(t));
        }
        sampled = {est[0], est[1], est[2], est[3],
                   est[0] + est[1] + est[2] - est[3]};

        for (double e : {exact.e11, exact.e12, exact.e21, exact.e22}) {
            if (std::abs(e) > 1.0 + kDerivedTol) {
                throw numeric_error("correlation magnitude exceeds 1");
            }
        }

        const OptimalSettings opt = optimize_settings(sub.state,
                                                      SettingFamily::FreeSpin);

        nlohmann::json sj;
        sj["tag"] = sub.tag;
        sj["weight"] = sub.weight;
        sj["concurrence"] = concurrence(sub.state);
        sj["exact"] = {{"e11", exact.e11}, {"e12", exact.e12},
                       {"e21", exact.e21}, {"e22", exact.e22}, {"s", exact.s}};
        sj["sampled"] = {{"e11", sampled.e11}, {"e12", sampled.e12},
                         {"e21", sampled.e21}, {"e22", sampled.e22},
                         {"s", sampled.s}, {"counts", counts}};
        sj["optimum"] = {{"family", family_name(opt.family)},
                         {"s", opt.s},
                         {"theta1", opt.theta1},
                         {"theta2", opt.theta2},
                         {"chi1", opt.chi1},
                         {"chi2", opt.chi2},
                         {"b1", bloch_json(opt.b1)},
                         {"b2", bloch_json(opt.b2)}};
        subs_json.push_back(sj);
        ++sub_index;
    }
    if (std::abs(weight_sum - 1.0) > kStructuralTol) {
        throw numeric_error("subensemble weights do not sum to 1");
    }
    report["subensembles"] = subs_json;

    // exact no-signaling residuals between the two canonical settings
    const auto branches_a = measure_wing1(make_singlet(), Wing1Setting{Wing1Kind::A}.direction());
    const auto branches_b = measure_wing1(make_singlet(), Wing1Setting{Wing1Kind::B}.direction());
    const auto rho_a = mixture_density(branches_a);
    const auto rho_b = mixture_density(branches_b);
    double rho_res = 0.0;
    for (int i = 0; i < 4; ++i) {
        rho_res = std::max(rho_res, std::abs(rho_a[i] - rho_b[i]));
    }
    double stat_res = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        std::array<double, 4> pa{};
        std::array<double, 4> pb{};
        for (const auto& sub : subensembles_for(spec, Wing1Setting{Wing1Kind::A})) {
            const auto p = born_probabilities(sub.state, settings[k]);
            for (int d = 0; d < 4; ++d) pa[d] += sub.weight * p[d];
        }
        for (const auto& sub : subensembles_for(spec, Wing1Setting{Wing1Kind::B})) {
            const auto p = born_probabilities(sub.state, settings[k]);
            for (int d = 0; d < 4; ++d) pb[d] += sub.weight * p[d];
        }
        for (int d = 0; d < 4; ++d) {
            stat_res = std::max(stat_res, std::abs(pa[d] - pb[d]));
        }
    }
    report["nosignaling"] = {{"rho_residual", rho_res},
                             {"stats_residual", stat_res}};
    return report;
}

nlohmann::json nosignal_check(const ApparatusSpec& spec_in, const Overrides& ov) {
    const ApparatusSpec spec = with_overrides(spec_in, ov);
    const auto settings = joint_settings(spec);
    const auto& m = spec.measurement;

    const auto subs_a = subensembles_for(spec, Wing1Setting{Wing1Kind::A});
    const auto subs_b = subensembles_for(spec, Wing1Setting{Wing1Kind::B});

    const auto rho_a =
        mixture_density(measure_wing1(make_singlet(), bloch_z()));
    const auto rho_b =
        mixture_density(measure_wing1(make_singlet(), bloch_x()));
    double rho_res = 0.0;
    for (int i = 0; i < 4; ++i) {
        rho_res = std::max(rho_res, std::abs(rho_a[i] - rho_b[i]));
    }

    double stat_res = 0.0;
    double max_z = 0.0;
    nlohmann::json per_setting = nlohmann::json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        std::array<double, 4> pa{};
        std::array<double, 4> pb{};
        for (const auto& sub : subs_a) {
            const auto p = born_probabilities(sub.state, settings[k]);
            for (int d = 0; d < 4; ++d) pa[d] += sub.weight * p[d];
        }
        for (const auto& sub : subs_b) {
            const auto p = born_probabilities(sub.state, settings[k]);
            for (int d = 0; d < 4; ++d) pb[d] += sub.weight * p[d];
        }
        double exact_res = 0.0;
        for (int d = 0; d < 4; ++d) {
            exact_res = std::max(exact_res, std::abs(pa[d] - pb[d]));
        }
        stat_res = std::max(stat_res, exact_res);

        // sampled unconditional frequencies, one stream per setting and side
        const CountTable ta = sample_counts(
            pa, SamplerConfig{counter_rng(m.seed, 100 + k), m.shots});
        const CountTable tb = sample_counts(
            pb, SamplerConfig{counter_rng(m.seed, 200 + k), m.shots});
        const std::array<std::uint64_t, 4> ca = {ta.n3p, ta.n3m, ta.n4p, ta.n4m};
        const std::array<std::uint64_t, 4> cb = {tb.n3p, tb.n3m, tb.n4p, tb.n4m};
        double setting_z = 0.0;
        for (int d = 0; d < 4; ++d) {
            const double fa = static_cast<double>(ca[d]) / m.shots;
            const double fb = static_cast<double>(cb[d]) / m.shots;
            const double pool = 0.5 * (fa + fb);
            const double se =
                std::sqrt(std::max(pool * (1.0 - pool) * 2.0 / m.shots, 1e-300));
            setting_z = std::max(setting_z, std::abs(fa - fb) / se);
        }
        max_z = std::max(max_z, setting_z);
        per_setting.push_back({{"setting", static_cast<int>(k)},
                               {"exact_residual", exact_res},
                               {"sampled_z", setting_z}});
    }

    nlohmann::json report;
    report["version"] = kVersion;
    report["seed"] = m.seed;
    report["shots"] = m.shots;
    report["config_hash"] = hash_hex(spec.content_hash());
    report["rho_residual"] = rho_res;
    report["stats_residual"] = stat_res;
    report["max_sampled_z"] = max_z;
    report["per_setting"] = per_setting;
    return report;
}

std::vector<SweepRow> sweep_wing1_angle(const ApparatusSpec& spec,
                                        const std::vector<double>& alphas) {
    constexpr double kPi = 3.14159265358979323846;
    std::vector<SweepRow> rows;
    for (double alpha : alphas) {
        if (alpha < -1e-12 || alpha > kPi + 1e-12) {
            throw validation_error("sweep angles must lie in [0, pi]");
        }
        const auto subs =
            subensembles_for(spec, Wing1Setting{Wing1Kind::Angle, alpha});
        SweepRow row{};
        row.alpha = alpha;
        row.weight_plus = subs[0].weight;
        row.concurrence_plus = concurrence(subs[0].state);
        row.smax_plus =
            optimize_settings(subs[0].state, SettingFamily::FreeSpin).s;
        row.weight_minus = subs[1].weight;
        row.concurrence_minus = concurrence(subs[1].state);
        row.smax_minus =
            optimize_settings(subs[1].state, SettingFamily::FreeSpin).s;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "alpha,weight_plus,concurrence_plus,smax_plus,weight_minus,"
           "concurrence_minus,smax_minus\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.alpha << ',' << r.weight_plus << ',' << r.concurrence_plus << ','
            << r.smax_plus << ',' << r.weight_minus << ',' << r.concurrence_minus
            << ',' << r.smax_minus << '\n';
    }
    return out.str();
}

std::string enumerate_hv_table() {
    std::ostringstream out;
    out << "v(A1),v(A2),v(sz),v(sx),value\n";
    double max_abs = 0.0;
    for (const auto& [h, v] : enumerate_noncontextual()) {
        out << std::showpos << h.a1 << ',' << h.a2 << ',' << h.sz << ','
            << h.sx << ',' << v << std::noshowpos << '\n';
        max_abs = std::max(max_abs, static_cast<double>(std::abs(v)));
    }
    out << "max |S| over noncontextual models = " << max_abs << '\n';
    return out.str();
}

nlohmann::json optimize_report(const ApparatusSpec& spec, SettingFamily family) {
    nlohmann::json report;
    report["version"] = kVersion;
    report["config_hash"] = hash_hex(spec.content_hash());
    report["family"] = family_name(family);
    report["wing1_setting"] = spec.source.name();
    nlohmann::json subs_json = nlohmann::json::array();
    for (const auto& sub : prepare_subensembles(spec)) {
        const OptimalSettings opt = optimize_settings(sub.state, family);
        subs_json.push_back({{"tag", sub.tag},
                             {"concurrence", concurrence(sub.state)},
                             {"s", opt.s},
                             {"theta1", opt.theta1},
                             {"theta2", opt.theta2},
                             {"chi1", opt.chi1},
                             {"chi2", opt.chi2},
                             {"b1", bloch_json(opt.b1)},
                             {"b2", bloch_json(opt.b2)}});
    }
    report["subensembles"] = subs_json;
    return report;
}

std::string scenario_csv(const nlohmann::json& report) {
    std::ostringstream out;
    out << "wing1_setting,tag,weight,concurrence,e11,e12,e21,e22,s,s_sampled,"
           "smax_free\n";
    out << std::setprecision(17);
    for (const auto& sub : report.at("subensembles")) {
        out << report.at("wing1_setting").get<std::string>() << ','
            << sub.at("tag").get<std::string>() << ','
            << sub.at("weight").get<double>() << ','
            << sub.at("concurrence").get<double>() << ','
            << sub.at("exact").at("e11").get<double>() << ','
            << sub.at("exact").at("e12").get<double>() << ','
            << sub.at("exact").at("e21").get<double>() << ','
            << sub.at("exact").at("e22").get<double>() << ','
            << sub.at("exact").at("s").get<double>() << ','
            << sub.at("sampled").at("s").get<double>() << ','
            << sub.at("optimum").at("s").get<double>() << '\n';
    }
    return out.str();
}

}  // namespace pathspin
