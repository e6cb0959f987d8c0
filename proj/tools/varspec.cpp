// Batch experiment runner: resolves a JSON config to solver / oracle /
// network runs and writes CSV/JSON reports.
//
// Exit codes: 0 all runs completed and runtime invariants held,
//             1 an asserted invariant failed, 2 config error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "vs/network.hpp"
#include "vs/oracle.hpp"
#include "vs/serialize.hpp"
#include "vs/solver.hpp"

using namespace vs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ResolvedProblem {
    LagrangianSpec spec;
    SineFunction f;
    SineFunction u0;
    std::optional<LagrangianSpec> approx;  // for drift studies
    std::optional<double> EStar;
    std::optional<SineFunction> uStar;
    std::string name;
};

SineFunction parse_source(const json& j, int d) {
    if (j.contains("f")) {
        const json& jf = j.at("f");
        if (jf.contains("coeffs")) return sine_from_json(jf);
        MultiIndex mode = jf.at("mode").get<MultiIndex>();
        double amp = jf.value("amplitude", 1.0);
        if (int(mode.size()) != d) throw std::invalid_argument("source mode has wrong dimension");
        return sine_mode(mode, amp);
    }
    return sine_mode(MultiIndex(d, 1));
}

ResolvedProblem resolve_problem(const json& cfg) {
    ResolvedProblem out;
    const json& pr = cfg.at("problem");
    if (pr.is_string()) {
        const std::string name = pr.get<std::string>();
        auto names = golden_names();
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            GoldenProblem g = golden(name);
            out.spec = g.spec;
            out.f = g.f;
            out.EStar = g.EStar;
            out.uStar = g.uStar;
            out.name = name;
        } else if (name == "quartic_1d") {
            out.spec = quartic_lagrangian(1, {1.0, 10.0}, double(cfg.value("W", 8)));
            out.f = sine_mode({1});
            out.name = name;
        } else {
            throw std::invalid_argument("unknown problem '" + name + "'");
        }
        out.u0 = SineFunction(out.spec.dim, 1);
        return out;
    }
    // inline family
    const std::string family = pr.at("family").get<std::string>();
    const int d = pr.at("d").get<int>();
    ValueBox box{pr.value("y_box", 1.0), pr.value("z_box", 10.0)};
    const double wRef = double(cfg.value("W", 8));
    if (family == "quartic") {
        out.spec = quartic_lagrangian(d, box, wRef);
        if (pr.value("pair", false)) out.approx = quartic_truncation(d, box, wRef);
    } else if (family == "linear_elliptic") {
        const double a = pr.value("a", 1.0);
        const double c = pr.value("c", 0.0);
        out.spec = linear_elliptic(a * Eigen::MatrixXd::Identity(d, d), c);
    } else {
        throw std::invalid_argument("unknown family '" + family + "'");
    }
    out.f = parse_source(pr, d);
    out.u0 = SineFunction(d, 1);
    out.name = pr.value("name", family);
    return out;
}

SolverConfig solver_config(const json& cfg) {
    SolverConfig sc;
    sc.Wmax = cfg.value("W", 8);
    if (cfg.contains("M")) sc.gridM = cfg.at("M").get<int>();
    if (cfg.contains("eta")) sc.eta = cfg.at("eta").get<double>();
    sc.epsilon = cfg.value("epsilon", 1e-3);
    if (!(sc.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (cfg.contains("T")) sc.T = cfg.at("T").get<int>();
    const std::string stop = cfg.value("stop", "tolerance");
    if (stop == "fixed")
        sc.stop = SolverConfig::Stop::fixedT;
    else if (stop == "tolerance")
        sc.stop = SolverConfig::Stop::tolerance;
    else
        throw std::invalid_argument("stop must be 'fixed' or 'tolerance'");
    if (sc.stop == SolverConfig::Stop::tolerance && !sc.T) sc.T = cfg.value("max_iterations", 2000);
    return sc;
}

// Post-run invariants the CLI asserts before reporting success.
void assert_invariants(const ConvergenceReport& rep) {
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].energy > rep.rows[i - 1].energy + 1e-12 * (1.0 + std::abs(rep.rows[i - 1].energy)))
            throw std::runtime_error("invariant: energy increased");
    for (const auto& row : rep.rows)
        if (std::isfinite(row.barronBound) &&
            row.barronComputed > row.barronBound * (1.0 + 1e-12) + 1e-12)
            throw std::runtime_error("invariant: ledger dominance violated at t=" +
                                     std::to_string(row.t));
}

std::string network_rates_csv(const SineFunction& uT, const json& netCfg, std::uint64_t seed) {
    TrigPolynomial target = embed_sine_to_trig(uT);
    const double C = barron_norm(target);
    std::vector<int> ks = netCfg.value("ks", std::vector<int>{16, 64, 256});
    const int nSeeds = netCfg.value("seeds", 8);
    const int quad = netCfg.value("quadrature", 64);
    std::string csv = "k,median_mse,max_weight_budget,two_c\n";
    for (int k : ks) {
        std::vector<double> errs;
        double worstBudget = 0.0;
        for (int s = 0; s < nSeeds; ++s) {
            TwoLayerNetwork net = extract(target, k, seed + s);
            worstBudget = std::max(worstBudget, weight_budget(net));
            errs.push_back(mse(net, target, quad));
        }
        std::sort(errs.begin(), errs.end());
        if (worstBudget > 2.0 * C + 1e-12)
            throw std::runtime_error("invariant: network weight budget exceeded");
        csv += std::to_string(k) + "," + format_double(errs[errs.size() / 2]) + "," +
               format_double(worstBudget) + "," + format_double(2.0 * C) + "\n";
    }
    return csv;
}

int run_experiment(const json& cfg, const fs::path& outDir, std::uint64_t seed) {
    ResolvedProblem prob = resolve_problem(cfg);
    SolverConfig sc = solver_config(cfg);
    sc.referenceEnergy = prob.EStar;
    if (prob.uStar) sc.referenceSolution = prob.uStar;
    const std::string prefix = cfg.value("name", prob.name);

    if (prob.approx) {
        PairReport pr = solve_pair(prob.spec, *prob.approx, prob.f, prob.u0, sc);
        assert_invariants(pr.exact);
        assert_invariants(pr.approx);
        for (size_t t = 0; t < pr.drift.size(); ++t)
            if (pr.drift[t] > pr.driftBounds[t] + 1e-12)
                throw std::runtime_error("invariant: drift bound violated at t=" + std::to_string(t));
        write_file((outDir / (prefix + "_report.csv")).string(), report_csv(pr.exact));
        json summary = report_summary(pr.exact);
        summary["eps_hat"] = pr.epsHat;
        summary["R"] = pr.R;
        summary["approx_final_energy"] = pr.approx.finalEnergy;
        write_file((outDir / (prefix + "_summary.json")).string(), summary.dump(2) + "\n");
    } else {
        auto [uT, rep] = solve(prob.spec, prob.f, prob.u0, sc);
        assert_invariants(rep);
        write_file((outDir / (prefix + "_report.csv")).string(), report_csv(rep));
        json summary = report_summary(rep);
        summary["problem"] = prob.name;
        summary["solution"] = to_json(uT);
        write_file((outDir / (prefix + "_summary.json")).string(), summary.dump(2) + "\n");
        if (rep.ledger)
            write_file((outDir / (prefix + "_ledger.json")).string(),
                       to_json(*rep.ledger).dump(2) + "\n");
        if (cfg.contains("network") && !uT.coeff.empty())
            write_file((outDir / (prefix + "_network.csv")).string(),
                       network_rates_csv(uT, cfg.at("network"), seed));
    }
    return 0;
}

int self_check() {
    // Small built-in invariant sweep; used by --check.
    std::mt19937 rng(1);
    for (int rep = 0; rep < 10; ++rep) {
        SineFunction f(2, 3);
        for_each_index(2, 1, 3, [&](const MultiIndex& w) {
            f.coeff[w] = std::uniform_real_distribution<double>(-1, 1)(rng);
        });
        if (max_coeff_diff(from_grid(to_grid(f, 9), 3), f) > 1e-12) return 1;
        TrigPolynomial a = embed_sine_to_trig(f);
        if (barron_norm(trig_multiply(a, a)) > barron_norm(a) * barron_norm(a) + 1e-10) return 1;
    }
    GoldenProblem g = golden("poisson_2d");
    SineFunction grad = functional_gradient(g.spec, g.uStar, g.f, 16, 4);
    for (const auto& [w, c] : grad.coeff)
        if (std::abs(c) > 1e-10) return 1;
    SolverConfig cfg;
    cfg.Wmax = 4;
    cfg.T = 8;
    cfg.referenceEnergy = g.EStar;
    SineFunction u0(2, 1);
    auto [uT, repo] = solve(g.spec, g.f, u0, cfg);
    (void)uT;
    try {
        assert_invariants(repo);
    } catch (const std::exception&) {
        return 1;
    }
    return 0;
}

unsigned worker_cap() {
    if (const char* env = std::getenv("VS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral variational solver experiment runner"};
    std::string configPath, outDir = ".";
    std::uint64_t seed = 1;
    bool list = false, check = false;
    app.add_option("--config", configPath, "experiment config (JSON)");
    app.add_option("--out-dir", outDir, "output directory");
    app.add_option("--seed", seed, "base seed for randomized studies");
    app.add_flag("--list", list, "list registered problems");
    app.add_flag("--check", check, "run the built-in invariant suite and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& n : golden_names()) std::cout << n << "\n";
        std::cout << "quartic_1d\n";
        return 0;
    }
    if (check) {
        int rc = self_check();
        std::cout << (rc == 0 ? "check: ok" : "check: FAILED") << "\n";
        return rc;
    }
    if (configPath.empty()) {
        std::cerr << json{{"error", "config"}, {"what", "--config is required"}}.dump() << "\n";
        return 2;
    }

    json cfg;
    try {
        std::ifstream is(configPath);
        if (!is) throw std::runtime_error("cannot open " + configPath);
        is >> cfg;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "config"}, {"what", e.what()}}.dump() << "\n";
        return 2;
    }

    std::vector<json> experiments;
    if (cfg.contains("experiments"))
        for (const auto& e : cfg.at("experiments")) experiments.push_back(e);
    else
        experiments.push_back(cfg);

    std::error_code ec;
    fs::create_directories(outDir, ec);

    // Validate everything up front so config errors beat invariant errors.
    try {
        for (const auto& e : experiments) {
            resolve_problem(e);
            solver_config(e);
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "config"}, {"what", e.what()}}.dump() << "\n";
        return 2;
    }

    std::atomic<int> failures{0};
    std::vector<std::string> messages(experiments.size());
    const unsigned cap = std::min<unsigned>(worker_cap(), unsigned(experiments.size()));
    std::atomic<size_t> nextIdx{0};
    auto worker = [&]() {
        for (size_t i = nextIdx.fetch_add(1); i < experiments.size(); i = nextIdx.fetch_add(1)) {
            try {
                run_experiment(experiments[i], outDir, seed);
            } catch (const std::exception& e) {
                ++failures;
                messages[i] = e.what();
            }
        }
    };
    if (cap <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < cap; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (failures > 0) {
        for (size_t i = 0; i < messages.size(); ++i)
            if (!messages[i].empty())
                std::cerr << json{{"error", "invariant"},
                                  {"experiment", experiments[i].value("name", std::to_string(i))},
                                  {"what", messages[i]}}
                                 .dump()
                          << "\n";
        return 1;
    }
    return 0;
}
