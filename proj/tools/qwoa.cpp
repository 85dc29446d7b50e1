// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: runs, parameter optimisation, analyses, oracle
// verification and instance export.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qwoa.hpp"
#include "qwoa/oracles.hpp"

namespace fs = std::filesystem;
using namespace qwoa;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Global {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output_dir = ".";
};

struct InstanceArgs {
    std::string ref;
    std::string variant = "default";
    std::vector<double> lambda;
    std::string mixer = "auto";
};

struct ScheduleArgs {
    int p = 10;
    double gamma = 1.0;
    double t = 0.1;
    std::optional<double> beta;
    std::optional<double> sigma;
    double alpha = 0.1;
};

// A resolved problem: the phase objective and the objective used for metrics.
struct Loaded {
    std::string name;
    ProblemInstance problem;
    SolutionSpace space;
    Sense sense;
    PenaltyVector penalty;
    std::vector<double> phase;
    ObjectiveTable metric;
    ObjectiveKernel kernel;
    std::optional<Mixer> mixer;
};

ProblemInstance load_ref(const std::string &ref) {
    constexpr std::string_view prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        return load_builtin(ref.substr(prefix.size()));
    }
    return load_instance_file(ref);
}

PenaltyVector default_penalty(const ProblemInstance &p) {
    if (std::holds_alternative<MisInstance>(p)) {
        return {{1.5, 0.0}, {}};
    }
    if (std::holds_alternative<CflpInstance>(p)) {
        return {{1.0, 1.0, 0.0}, {}};
    }
    return {};
}

MixerKind parse_mixer(const std::string &s) {
    if (s == "hypercube") {
        return MixerKind::Hypercube;
    }
    if (s == "hamming") {
        return MixerKind::Hamming;
    }
    if (s == "transposition") {
        return MixerKind::Transposition;
    }
    throw ConfigError("unknown mixer '" + s + "'");
}

Loaded resolve(const InstanceArgs &a) {
    if (a.ref.empty()) {
        throw ConfigError("--instance is required");
    }
    auto problem = load_ref(a.ref);
    const auto space = space_of(problem);
    const auto sense = sense_of(problem);
    PenaltyVector penalty = default_penalty(problem);
    ObjectiveKernel phase_kernel;
    if (a.variant == "unconstrained") {
        if (!uses_penalty(problem)) {
            throw ConfigError("variant 'unconstrained' applies to penalised problems only");
        }
        std::fill(penalty.lambda.begin(), penalty.lambda.end(), 0.0);
    } else if (a.variant == "transformed") {
        const auto *km = std::get_if<KMeansInstance>(&problem);
        if (km == nullptr) {
            throw ConfigError("variant 'transformed' applies to k-means only");
        }
        phase_kernel = make_transformed_kmeans_kernel(*km, estimate_cluster_means(*km).means);
    } else if (a.variant != "default") {
        throw ConfigError("unknown variant '" + a.variant + "'");
    }
    if (!a.lambda.empty()) {
        if (!uses_penalty(problem)) {
            throw ConfigError("--lambda given for a problem without penalty terms");
        }
        penalty.lambda = a.lambda;
    }
    if (const auto *cflp = std::get_if<CflpInstance>(&problem)) {
        penalty.reference = cflp_reference_solution(*cflp);
    }
    auto kernel = make_kernel(problem, penalty);
    ObjectiveTable metric(space, kernel, sense);
    std::vector<double> phase = phase_kernel ? tabulate(space, phase_kernel)
                                             : std::vector<double>(metric.values().begin(), metric.values().end());
    Loaded out{a.ref, std::move(problem), space, sense, penalty, std::move(phase), std::move(metric), kernel, {}};
    out.mixer.emplace(a.mixer == "auto" ? default_mixer(space) : parse_mixer(a.mixer), space);
    return out;
}

RunParams make_params(const ScheduleArgs &s, const Loaded &l) {
    RunParams rp;
    rp.p = s.p;
    rp.gamma = s.gamma;
    rp.t = s.t;
    rp.beta = s.beta.value_or(s.p > 0 ? 1.0 / s.p : 1.0);
    rp.sense = l.sense;
    rp.sigma = s.sigma.value_or(table_stats(l.phase).stddev);
    validate(rp);
    return rp;
}

fs::path output_path(const Global &g, const std::string &name) {
    fs::create_directories(g.output_dir);
    return fs::path(g.output_dir) / name;
}

void write_json(const fs::path &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    out << j.dump(2) << '\n';
}

void write_csv_file(const fs::path &path, const std::vector<CsvRow> &rows) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    write_csv(out, rows);
}

void add_instance_options(CLI::App *cmd, InstanceArgs &a) {
    cmd->add_option("--instance", a.ref, "builtin:NAME or path to an instance JSON file")->required();
    cmd->add_option("--variant", a.variant, "default, unconstrained (penalties off) or transformed (k-means)")
        ->capture_default_str();
    cmd->add_option("--lambda", a.lambda, "penalty coefficients")->delimiter(',');
    cmd->add_option("--mixer", a.mixer, "auto, hypercube, hamming or transposition")->capture_default_str();
}

void add_schedule_options(CLI::App *cmd, ScheduleArgs &s) {
    cmd->add_option("--p", s.p, "iterations")->capture_default_str();
    cmd->add_option("--gamma", s.gamma, "final phase strength")->capture_default_str();
    cmd->add_option("--t", s.t, "first walk time")->capture_default_str();
    cmd->add_option("--beta", s.beta, "schedule ratio (default 1/p)");
    cmd->add_option("--sigma", s.sigma, "objective scale (default: standard deviation of the phase objective)");
    cmd->add_option("--alpha", s.alpha, "CVaR fraction")->capture_default_str();
}

std::vector<int> parse_h_list(const std::string &spec, int diameter) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(part));
            } else {
                const int lo = std::stoi(part.substr(0, dots));
                const int hi = std::stoi(part.substr(dots + 2));
                for (int h = lo; h <= hi; ++h) {
                    out.push_back(h);
                }
            }
        } catch (const std::logic_error &) {
            throw ConfigError("cannot parse distance list '" + spec + "'");
        }
    }
    for (int h : out) {
        if (h < 0 || h > diameter) {
            throw ConfigError("distance " + std::to_string(h) + " outside [0, " + std::to_string(diameter) + "]");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

int cmd_run(const Global &g, const InstanceArgs &ia, const ScheduleArgs &sa, const std::string &prefix) {
    const auto l = resolve(ia);
    const auto rp = make_params(sa, l);
    RunOptions opts;
    opts.cvar_alpha = sa.alpha;
    const auto trace = prepare_amplified(*l.mixer, l.phase, l.metric, rp, opts);
    Json j = run_trace_to_json(trace, l.metric);
    j["instance"] = l.name;
    j["variant"] = ia.variant;
    j["mixer"] = to_string(l.mixer->kind());
    if (!l.penalty.lambda.empty()) {
        j["lambda"] = l.penalty.lambda;
    }
    write_json(output_path(g, prefix + ".json"), j);

    std::vector<CsvRow> rows;
    ProfileOptions po;
    po.seed = g.seed;
    for (const auto &p : amplification_profile(*trace.final_state, l.metric.values(), po)) {
        rows.push_back({p.f, "a2", p.a2, 0.0});
    }
    write_csv_file(output_path(g, prefix + "_profile.csv"), rows);

    const auto &last = trace.per_iteration.back();
    std::cout << "instance " << l.name << " (" << kind_name(l.problem) << ", N=" << l.space.size() << ")\n";
    for (const auto &m : trace.per_iteration) {
        std::cout << "  iter " << m.iter << "  optimal probability " << m.optimal_probability << '\n';
    }
    std::cout << "final optimal probability " << last.optimal_probability << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

int cmd_optimize(const Global &g, const InstanceArgs &ia, const ScheduleArgs &sa, const std::string &metric,
                 int max_evals, bool tune, const std::string &prefix) {
    const auto l = resolve(ia);
    const auto init = make_params(sa, l);
    OptimizeOptions oo;
    if (metric == "expectation") {
        oo.metric = Metric::Expectation;
    } else if (metric == "cvar") {
        oo.metric = Metric::CVaR;
    } else {
        throw ConfigError("unknown metric '" + metric + "'");
    }
    oo.cvar_alpha = sa.alpha;
    oo.max_evaluations = max_evals;
    OptimizeResult res;
    std::vector<double> phase = l.phase;
    if (tune) {
        if (!uses_penalty(l.problem)) {
            throw ConfigError("--tune-penalty needs a penalised problem");
        }
        TuneOptions to;
        to.optimize = oo;
        const auto tables = tabulate_penalties(l.problem, l.penalty.reference);
        res = tune_penalty(*l.mixer, tables, l.metric, l.penalty, init, to);
        tables.evaluate(*res.lambda_t, phase);
    } else {
        // The search follows the objective used for phase separation.
        res = optimize_params(*l.mixer, ObjectiveTable(phase, l.sense), init, oo);
    }
    RunOptions ro;
    ro.cvar_alpha = sa.alpha;
    ro.keep_final = false;
    const auto trace = prepare_amplified(*l.mixer, phase, l.metric, res.params, ro);

    Json j;
    j["instance"] = l.name;
    j["variant"] = ia.variant;
    j["mixer"] = to_string(l.mixer->kind());
    j["metric"] = metric;
    j["alpha"] = sa.alpha;
    j["init"] = params_to_json(init);
    j["params"] = params_to_json(res.params);
    if (res.lambda_t) {
        j["lambda_t"] = res.lambda_t->lambda;
    }
    if (!l.penalty.lambda.empty()) {
        j["lambda_f"] = l.penalty.lambda;
    }
    j["metric_value"] = res.metric;
    j["converged"] = res.converged;
    j["evaluations"] = res.evaluations;
    j["gradient_norm"] = res.gradient_norm;
    j["optimal_probability"] = trace.per_iteration.back().optimal_probability;
    j["trajectory"] = Json::array();
    for (const auto &tp : res.trajectory) {
        j["trajectory"].push_back({{"evaluation", tp.evaluation}, {"x", tp.x}, {"metric", tp.metric}});
    }
    write_json(output_path(g, prefix + ".json"), j);

    std::cout << "gamma " << res.params.gamma << "  t " << res.params.t << "  beta " << res.params.beta << '\n';
    if (res.lambda_t) {
        std::cout << "lambda_t";
        for (double v : res.lambda_t->lambda) {
            std::cout << ' ' << v;
        }
        std::cout << '\n';
    }
    std::cout << metric << " " << res.metric << (res.converged ? "  (converged" : "  (not converged") << ", "
              << res.evaluations << " evaluations)\n";
    std::cout << "final optimal probability " << trace.per_iteration.back().optimal_probability << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
    int bins = 100;
    int per_bin = 200;
    int draws = 200;
    std::string h = "";
    std::vector<int> iterations;
    int samples_u = 200;
    int max_h = -1;
    bool equal = false;
    int trials = 10000;
    int terms = 1000;
    std::vector<double> sigmas;
    std::string prefix;
};

int analyze_subset_means(const Global &g, const InstanceArgs &ia, const AnalyzeArgs &aa) {
    const auto l = resolve(ia);
    const int d = l.space.diameter();
    const auto hs = parse_h_list(aa.h.empty() ? "1.." + std::to_string(d) : aa.h, d);
    SubsetMeansOptions o;
    o.bins = aa.bins;
    o.per_bin = aa.per_bin;
    o.draws = aa.draws;
    o.seed = g.seed;
    const auto rows = subset_means_sampled(l.space, l.kernel, hs, o);
    std::vector<CsvRow> out;
    for (const auto &r : rows) {
        out.push_back({r.f_mean, "h=" + std::to_string(r.h), r.mean, r.stddev});
    }
    const auto path = output_path(g, (aa.prefix.empty() ? "subset_means" : aa.prefix) + ".csv");
    write_csv_file(path, out);
    std::cout << rows.size() << " rows written to " << path.string() << '\n';
    return kOk;
}

int analyze_weighted(const Global &g, const InstanceArgs &ia, const ScheduleArgs &sa, const AnalyzeArgs &aa) {
    const auto l = resolve(ia);
    const auto rp = make_params(sa, l);
    std::vector<int> iters = aa.iterations;
    if (iters.empty()) {
        iters.push_back(rp.p);
    }
    for (int i : iters) {
        if (i < 1 || i > rp.p) {
            throw ConfigError("--iteration values must lie in [1, p]");
        }
    }
    std::mt19937_64 rng(g.seed);
    std::vector<Index> us;
    for (int i = 0; i < aa.samples_u; ++i) {
        us.push_back(sample_index(l.space, rng));
    }
    WeightedStatsOptions wo;
    wo.seed = g.seed;
    const int max_h = aa.max_h < 0 ? l.space.diameter() / 2 : aa.max_h;
    std::vector<CsvRow> out;
    if (l.mixer->kind() == MixerKind::Transposition) {
        // Reject before spending time on the run.
        const auto s = equal_superposition(l.space);
        weighted_subset_stats(s, *l.mixer, l.phase, 1.0, us, wo);
    }
    amplified_state(*l.mixer, l.phase, rp, [&](int i, const Statevector &s) {
        if (std::find(iters.begin(), iters.end(), i + 1) == iters.end()) {
            return;
        }
        const double gi = schedule(rp, i).first / rp.sigma;
        const auto rows = weighted_subset_stats(s, *l.mixer, l.phase, gi, us, wo);
        const std::string tag = ":iter=" + std::to_string(i + 1) + ":h=";
        for (const auto &r : rows) {
            const auto series = [&](const char *stat) { return stat + tag + std::to_string(r.h); };
            out.push_back({r.f_u, series("E_f"), r.E_f, std::sqrt(r.V_f)});
            out.push_back({r.f_u, series("E_phi"), r.E_phi, std::sqrt(r.V_phi)});
            out.push_back({r.f_u, series("C"), r.C, 0.0});
            out.push_back({r.f_u, series("E"), r.E, std::sqrt(std::max(0.0, r.V))});
        }
        std::cout << "iteration " << i + 1 << "  E_f transition point " << ef_transition_point(rows, max_h)
                  << '\n';
    });
    const auto path = output_path(g, (aa.prefix.empty() ? "weighted_stats" : aa.prefix) + ".csv");
    write_csv_file(path, out);
    std::cout << out.size() << " rows written to " << path.string() << '\n';
    return kOk;
}

int analyze_amplification(const Global &g, const InstanceArgs &ia, const ScheduleArgs &sa,
                          const AnalyzeArgs &aa) {
    const auto l = resolve(ia);
    Statevector psi = equal_superposition(l.space);
    if (!aa.equal) {
        psi = amplified_state(*l.mixer, l.phase, make_params(sa, l));
    }
    ProfileOptions po;
    po.seed = g.seed;
    const auto prof = amplification_profile(psi, l.metric.values(), po);
    const auto ph = relative_phases(psi);
    std::vector<CsvRow> out;
    for (const auto &p : prof) {
        out.push_back({p.f, "a2", p.a2, 0.0});
        out.push_back({p.f, "phase", ph[p.index], 0.0});
    }
    std::vector<double> f;
    std::vector<double> a2;
    for (const auto &p : prof) {
        f.push_back(p.f);
        a2.push_back(p.a2);
    }
    const auto path = output_path(g, (aa.prefix.empty() ? "amplification" : aa.prefix) + ".csv");
    write_csv_file(path, out);
    std::cout << prof.size() << " solutions written to " << path.string() << '\n';
    const auto [lo, hi] = std::minmax_element(a2.begin(), a2.end());
    if (prof.size() >= 2 && *hi - *lo > 1e-12) {
        std::cout << "spearman(f, a2) " << spearman(f, a2) << '\n';
    }
    std::cout << "phase circular stddev " << circular_stddev(ph) << '\n';
    return kOk;
}

int analyze_approx_error(const Global &g, const AnalyzeArgs &aa) {
    std::vector<double> grid = aa.sigmas;
    if (grid.empty()) {
        for (int i = 0; i <= 20; ++i) {
            grid.push_back(0.05 * i);
        }
    }
    const auto pts = approx_error_experiment(grid, aa.terms, aa.trials, g.seed);
    std::vector<CsvRow> out;
    for (const auto &p : pts) {
        const std::string name = std::string(to_string(p.phases)) + "-" + to_string(p.weights);
        out.push_back({p.sigma, name + ":phase", p.phase_error_mean, p.phase_error_std});
        out.push_back({p.sigma, name + ":magnitude", p.magnitude_error_mean, p.magnitude_error_std});
    }
    const auto path = output_path(g, (aa.prefix.empty() ? "approx_error" : aa.prefix) + ".csv");
    write_csv_file(path, out);
    std::cout << pts.size() << " cells written to " << path.string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckTable {
    int failures = 0;

    void row(const std::string &name, double error, double tolerance) {
        const bool ok = error <= tolerance;
        failures += ok ? 0 : 1;
        std::cout << (ok ? "PASS  " : "FAIL  ") << name << "  max error " << error << " (tolerance " << tolerance
                  << ")\n";
    }
};

void verify_mixers(CheckTable &tab) {
    const std::vector<std::pair<std::string, SolutionSpace>> spaces{
        {"hypercube n=8", SolutionSpace::binary(8)},       {"hamming n=3 k=3", SolutionSpace::integer(3, 3)},
        {"hamming n=2 k=5", SolutionSpace::integer(2, 5)}, {"hamming n=4 k=4", SolutionSpace::integer(4, 4)},
        {"transposition n=4", SolutionSpace::permutation(4)}, {"transposition n=6", SolutionSpace::permutation(6)}};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (const auto &[name, space] : spaces) {
        const Mixer m(space);
        double worst = 0.0;
        for (double t : {0.05, 0.2, 0.37}) {
            Statevector psi(space.size());
            for (Index i = 0; i < space.size(); ++i) {
                psi[i] = Complex(gauss(rng), gauss(rng));
            }
            psi.scale(1.0 / std::sqrt(psi.norm_squared()));
            auto want = oracle::apply_dense(oracle::dense_walk(space, t), psi);
            const Complex ph = std::exp(Complex(0.0, m.global_phase(t)));
            auto got = psi;
            m.apply(t, got);
            for (Index i = 0; i < space.size(); ++i) {
                worst = std::max(worst, std::abs(got[i] * std::conj(ph) - want[i]));
            }
        }
        tab.row("mixer " + name + " vs dense exponential", worst, 1e-9);

        const double t = 0.3;
        auto s = equal_superposition(space);
        const auto s0 = s;
        m.apply(t, s);
        const double d = space.degree();
        const Complex ev = std::exp(Complex(0.0, m.global_phase(t) - d * t));
        double eig = 0.0;
        for (Index i = 0; i < s.size(); ++i) {
            eig = std::max(eig, std::abs(s[i] - ev * s0[i]));
        }
        tab.row("mixer " + name + " equal superposition eigenstate", eig, 1e-10);
    }
    const Mixer cube(SolutionSpace::binary(6));
    const Mixer ham(MixerKind::Hamming, SolutionSpace::integer(6, 2));
    auto a = equal_superposition(cube.space());
    a[5] = Complex(0.3, 0.1);
    a.scale(1.0 / std::sqrt(a.norm_squared()));
    auto b = a;
    cube.apply(0.41, a);
    ham.apply(0.41, b);
    const Complex rel = std::exp(Complex(0.0, ham.global_phase(0.41) - cube.global_phase(0.41)));
    double hc = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        hc = std::max(hc, std::abs(a[i] * rel - b[i]));
    }
    tab.row("hamming k=2 vs hypercube", hc, 1e-12);
}

void verify_circuits(CheckTable &tab) {
    double worst = 0.0;
    for (int k = 2; k <= 64; ++k) {
        const auto c = build_uk_binary(k);
        const auto s = simulate_circuit(c, QubitState::zero(c.qubits));
        for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
            const double want = i < static_cast<std::size_t>(k) ? 1.0 / std::sqrt(k) : 0.0;
            worst = std::max(worst, std::abs(s.amplitudes[i] - want));
        }
    }
    tab.row("U_k binary, k = 2..64", worst, 1e-10);
    worst = 0.0;
    for (int k = 2; k <= 12; ++k) {
        const auto s = simulate_circuit(build_uk_onehot(k), QubitState::zero(k));
        for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
            const double want = std::popcount(i) == 1 ? 1.0 / std::sqrt(k) : 0.0;
            worst = std::max(worst, std::abs(s.amplitudes[i] - want));
        }
    }
    tab.row("U_k one-hot, k = 2..12", worst, 1e-10);
    for (auto e : {Encoding::Binary, Encoding::OneHot}) {
        worst = 0.0;
        for (int k = 2; k <= 4; ++k) {
            for (double t : {0.0, 0.4, 1.3}) {
                const auto u = circuit_unitary(build_hamming_mixer_circuit(k, t, e));
                Eigen::MatrixXd kk = Eigen::MatrixXd::Ones(k, k);
                kk.diagonal().setZero();
                const auto want = oracle::expm_hermitian(kk, t);
                std::vector<std::vector<Complex>> got(k, std::vector<Complex>(k));
                std::vector<std::vector<Complex>> ref(k, std::vector<Complex>(k));
                for (int j = 0; j < k; ++j) {
                    for (int i = 0; i < k; ++i) {
                        got[j][i] = u[encode_value(j, e)][encode_value(i, e)];
                        ref[j][i] = want(i, j);
                    }
                }
                worst = std::max(worst, phase_aligned_distance(got, ref));
            }
        }
        tab.row(std::string("mixer circuit (") + to_string(e) + "), k = 2..4", worst, 1e-9);
    }
    worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
        const auto s = simulate_circuit(build_permutation_superposition(n), QubitState::zero(n * n));
        const auto space = SolutionSpace::permutation(n);
        std::vector<double> target(s.amplitudes.size(), 0.0);
        for (Index r = 0; r < space.size(); ++r) {
            const auto perm = index_to_solution(space, r);
            std::uint64_t idx = 0;
            for (int j = 0; j < n; ++j) {
                idx |= std::uint64_t{1} << (j * n + perm[j]);
            }
            target[idx] = 1.0 / std::sqrt(static_cast<double>(space.size()));
        }
        for (std::size_t i = 0; i < target.size(); ++i) {
            worst = std::max(worst, std::abs(s.amplitudes[i] - target[i]));
        }
    }
    tab.row("permutation preparation, n = 2..4", worst, 1e-9);
}

int cmd_verify(const std::string &scope) {
    CheckTable tab;
    if (scope == "mixers" || scope == "all") {
        verify_mixers(tab);
    }
    if (scope == "circuits" || scope == "all") {
        verify_circuits(tab);
    }
    std::cout << (tab.failures == 0 ? "all checks passed" : std::to_string(tab.failures) + " check(s) failed")
              << '\n';
    return tab.failures == 0 ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// instance
// ---------------------------------------------------------------------------

int cmd_instance_export(const Global &g, const std::string &ref, const std::string &file) {
    const Json j = instance_to_json(load_ref(ref));
    if (file.empty() || file == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(output_path(g, file), j);
    }
    return kOk;
}

int cmd_instance_generate(const Global &g, const std::string &kind, const GenerateParams &gp,
                          const std::string &file) {
    const Json j = instance_to_json(generate(kind, gp, g.seed));
    if (file.empty() || file == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(output_path(g, file), j);
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Statevector simulator for the non-variational quantum walk optimisation algorithm"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0: all)")->capture_default_str();
    app.add_option("--output-dir", g.output_dir, "directory for JSON and CSV output")->capture_default_str();

    InstanceArgs ia;
    ScheduleArgs sa;
    std::string run_prefix = "run";
    std::string opt_prefix = "optimize";

    auto *run = app.add_subcommand("run", "simulate the amplified state and write its trace");
    add_instance_options(run, ia);
    add_schedule_options(run, sa);
    run->add_option("--output", run_prefix, "output file prefix")->capture_default_str();

    std::string metric = "expectation";
    int max_evals = 500;
    bool tune = false;
    auto *opt = app.add_subcommand("optimize", "fit (gamma, t, beta) by local search");
    add_instance_options(opt, ia);
    add_schedule_options(opt, sa);
    opt->add_option("--metric", metric, "expectation or cvar")->capture_default_str();
    opt->add_option("--max-evals", max_evals, "objective evaluation budget")->capture_default_str();
    opt->add_flag("--tune-penalty", tune, "tune the phase-separation penalty coefficients as well");
    opt->add_option("--output", opt_prefix, "output file prefix")->capture_default_str();

    AnalyzeArgs aa;
    auto *analyze = app.add_subcommand("analyze", "statistics behind the interference process");
    analyze->require_subcommand(1);
    auto *sm = analyze->add_subcommand("subset-means", "binned subset means over distance");
    sm->set_help_flag("--help", "Print this help message and exit");
    add_instance_options(sm, ia);
    sm->add_option("--bins", aa.bins)->capture_default_str();
    sm->add_option("--per-bin", aa.per_bin)->capture_default_str();
    sm->add_option("--draws", aa.draws)->capture_default_str();
    sm->add_option("--h", aa.h, "distances, e.g. 1..8 or 1,3,5 (default 1..D)");
    sm->add_option("--output", aa.prefix, "output file prefix");
    auto *ws = analyze->add_subcommand("weighted-stats", "weighted subset statistics along a run");
    add_instance_options(ws, ia);
    add_schedule_options(ws, sa);
    ws->add_option("--iteration", aa.iterations, "1-based iterations to analyse (default p)")->delimiter(',');
    ws->add_option("--samples", aa.samples_u, "number of sampled centre solutions")->capture_default_str();
    ws->add_option("--max-h", aa.max_h, "largest distance used for the transition point (default D/2)");
    ws->add_option("--output", aa.prefix, "output file prefix");
    auto *am = analyze->add_subcommand("amplification", "amplification profile of a state");
    add_instance_options(am, ia);
    add_schedule_options(am, sa);
    am->add_flag("--equal-superposition", aa.equal, "profile the initial state instead of the amplified one");
    am->add_option("--output", aa.prefix, "output file prefix");
    auto *ae = analyze->add_subcommand("approx-error", "error of the coherent-sum approximation");
    ae->add_option("--trials", aa.trials)->capture_default_str();
    ae->add_option("--terms", aa.terms)->capture_default_str();
    ae->add_option("--sigma", aa.sigmas, "phase standard deviations (default 0..1 step 0.05)")->delimiter(',');
    ae->add_option("--output", aa.prefix, "output file prefix");

    std::string scope = "all";
    auto *verify = app.add_subcommand("verify", "oracle checks for mixers and circuits");
    verify->add_option("scope", scope, "mixers, circuits or all")
        ->check(CLI::IsMember({"mixers", "circuits", "all"}))
        ->capture_default_str();

    auto *inst = app.add_subcommand("instance", "instance export and generation");
    inst->require_subcommand(1);
    std::string ref;
    std::string file;
    auto *exp = inst->add_subcommand("export", "write an instance as JSON");
    exp->add_option("--instance", ref, "builtin:NAME or file")->required();
    exp->add_option("--output", file, "output file inside --output-dir (default stdout)");
    std::string kind;
    GenerateParams gp;
    auto *gen = inst->add_subcommand("generate", "draw a random instance");
    gen->add_option("--kind", kind, "maxcut, kmeans, qap, mis or cflp")->required();
    gen->add_option("--n", gp.n)->required();
    gen->add_option("--k", gp.k);
    gen->add_option("--edge-probability", gp.edge_probability);
    gen->add_option("--output", file, "output file inside --output-dir (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        set_thread_count(g.threads);
        if (run->parsed()) {
            return cmd_run(g, ia, sa, run_prefix);
        }
        if (opt->parsed()) {
            return cmd_optimize(g, ia, sa, metric, max_evals, tune, opt_prefix);
        }
        if (sm->parsed()) {
            return analyze_subset_means(g, ia, aa);
        }
        if (ws->parsed()) {
            return analyze_weighted(g, ia, sa, aa);
        }
        if (am->parsed()) {
            return analyze_amplification(g, ia, sa, aa);
        }
        if (ae->parsed()) {
            return analyze_approx_error(g, aa);
        }
        if (verify->parsed()) {
            return cmd_verify(scope);
        }
        if (exp->parsed()) {
            return cmd_instance_export(g, ref, file);
        }
        if (gen->parsed()) {
            return cmd_instance_generate(g, kind, gp, file);
        }
    } catch (const NumericError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
