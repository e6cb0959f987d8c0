#include "vs/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vs {

using nlohmann::json;

json to_json(const SineFunction& f) {
    json coeffs = json::array();
    for (const auto& [w, c] : f.coeff) coeffs.push_back(json::array({json(w), c}));
    return json{{"d", f.dim}, {"W", f.bandlimit}, {"coeffs", coeffs}};
}

SineFunction sine_from_json(const json& j) {
    SineFunction f(j.at("d").get<int>(), j.at("W").get<int>());
    for (const auto& entry : j.at("coeffs")) {
        MultiIndex w = entry.at(0).get<MultiIndex>();
        set_coeff(f, w, entry.at(1).get<double>());
    }
    return f;
}

json to_json(const GridFunction& g) {
    std::vector<double> vals(g.values.data(), g.values.data() + g.values.size());
    return json{{"d", g.dim}, {"M", g.pointsPerAxis}, {"values", vals}};
}

GridFunction grid_from_json(const json& j) {
    GridFunction g(j.at("d").get<int>(), j.at("M").get<int>());
    auto vals = j.at("values").get<std::vector<double>>();
    if (Eigen::Index(vals.size()) != g.values.size())
        throw std::invalid_argument("grid_from_json: value count does not match M^d");
    for (size_t i = 0; i < vals.size(); ++i) g.values(Eigen::Index(i)) = vals[i];
    return g;
}

json to_json(const BarronCertificate& c) {
    json trail = json::array();
    for (const auto& e : c.trail) trail.push_back(json{{"rule", e.rule}, {"inputs", e.inputs}});
    return json{{"value", c.value}, {"W", c.bandlimit}, {"trail", trail}};
}

json to_json(const TwoLayerNetwork& net) {
    json units = json::array();
    for (const auto& u : net.units) {
        std::vector<double> a(u.a.data(), u.a.data() + u.a.size());
        units.push_back(json{{"a", a}, {"b", u.b}, {"c", u.c}});
    }
    const char* act = net.activation == TwoLayerNetwork::Activation::cosine ? "cosine"
                      : net.activation == TwoLayerNetwork::Activation::sigmoid ? "sigmoid"
                                                                               : "relu-sigmoidal";
    return json{{"k", net.k},
                {"activation", act},
                {"units", units},
                {"source_norm", net.sourceNorm},
                {"stencil_sup_error", net.stencilSupError}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_csv(const ConvergenceReport& rep) {
    std::string out =
        "t,energy,gap,h1_error,contraction,barron_computed,barron_bound,W,"
        "truncation_residual,drift,drift_bound\n";
    for (const auto& r : rep.rows) {
        out += std::to_string(r.t);
        for (double v : {r.energy, r.gap, r.h1Error, r.contraction, r.barronComputed,
                         r.barronBound}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += std::to_string(r.W);
        for (double v : {r.truncationResidual, r.drift, r.driftBound}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

json report_summary(const ConvergenceReport& rep) {
    return json{{"iterations", rep.iterationsUsed},
                {"eta", rep.etaUsed},
                {"theoretical_rate", rep.theoreticalRate},
                {"final_energy", rep.finalEnergy},
                {"final_gap", rep.finalGap},
                {"final_h1_error", rep.finalH1Error},
                {"h1_error_bound_from_gap", rep.h1ErrorBoundFromGap},
                {"ledger_final_bound", rep.ledgerFinalBound},
                {"ledger_verified", rep.ledgerVerified},
                {"stopped_by_tolerance", rep.stoppedByTolerance}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << contents;
}

}  // namespace vs
