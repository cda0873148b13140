// Command-line front end: fit control points to sampled data, diagnose the
// spectrum of the configured system, or generate synthetic sample sets.
//
// Exit codes: 0 fit converged (or command succeeded), 2 iteration cap hit,
// 3 residual stagnated, 4 empty index group under the strict policy,
// 5 unreadable or malformed files, 6 bad configuration, 1 numerical failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "lspia/errors.hpp"
#include "lspia/io.hpp"
#include "lspia/oracle.hpp"
#include "lspia/solver.hpp"
#include "lspia/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitStagnated = 3;
constexpr int kExitAssembly = 4;
constexpr int kExitIo = 5;
constexpr int kExitConfig = 6;

struct BasisOptions {
    int dim = 1;
    std::vector<int> degree = {3};
    std::vector<int> controls = {8};
    std::string param = "given";
};

struct FitOptions {
    BasisOptions basis;
    std::string input;
    std::string out_prefix = "fit";
    std::string variant = "weighted";
    std::string alpha = "auto";
    std::string p0 = "zero";
    std::string empty_group = "freeze";
    double tol_delta = 1e-10;
    double tol_residual_change = 1e-12;
    long max_iters = 100000;
};

struct DiagnoseOptions {
    BasisOptions basis;
    std::string input;
    std::string out_prefix = "diagnose";
    long dense_limit = 2000;
    bool emit_pinv = false;
};

struct SynthOptions {
    std::string kind = "curve";
    int dim = 1;
    int data_dim = 3;
    std::vector<int> samples = {40};
    std::vector<double> hole;
    int distinct = 8;
    int multiplicity = 5;
    double noise = 0.0;
    std::uint64_t seed = 1;
    std::string out = "points.csv";
};

void add_basis_options(CLI::App* cmd, BasisOptions& b) {
    cmd->add_option("--basis-dim", b.dim, "Parametric dimensionality (1 curve, 2 patch, 3 solid)")
        ->check(CLI::Range(1, 3));
    cmd->add_option("--degree", b.degree,
                    "Basis degree per direction (one value broadcasts to all)")
        ->delimiter(',');
    cmd->add_option("--controls", b.controls,
                    "Control-point count per direction (one value broadcasts)")
        ->delimiter(',');
    cmd->add_option("--param", b.param, "Parameterization: chord, uniform or given")
        ->check(CLI::IsMember({"chord", "uniform", "given"}));
}

std::vector<int> broadcast(std::vector<int> v, int dim, const char* what) {
    if (v.size() == 1) v.resize(dim, v[0]);
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument(std::string(what) + ": expected 1 or " +
                                    std::to_string(dim) + " values, got " +
                                    std::to_string(v.size()));
    return v;
}

lspia::BasisSpace build_space(const BasisOptions& b) {
    const std::vector<int> degree = broadcast(b.degree, b.dim, "--degree");
    const std::vector<int> controls = broadcast(b.controls, b.dim, "--controls");
    if (b.dim >= 2 && controls[0] != controls[1])
        throw std::invalid_argument(
            "--controls: the flat index layout requires equal u and v counts");
    std::vector<lspia::KnotVector> dirs;
    dirs.reserve(b.dim);
    for (int d = 0; d < b.dim; ++d)
        dirs.push_back(lspia::KnotVector::clamped_uniform(controls[d], degree[d]));
    return lspia::BasisSpace(std::move(dirs));
}

lspia::ParamMode parse_param_mode(const std::string& s) {
    if (s == "chord") return lspia::ParamMode::chord;
    if (s == "uniform") return lspia::ParamMode::uniform;
    return lspia::ParamMode::given;
}

void ensure_parent_dir(const std::string& prefix) {
    const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

lspia::FitProblem load_problem(const BasisOptions& basis, const std::string& input,
                               lspia::EmptyGroupPolicy policy) {
    lspia::BasisSpace space = build_space(basis);
    lspia::DataSet data = lspia::io::load_points(input);
    data = lspia::parameterize(std::move(data), parse_param_mode(basis.param), space);
    return lspia::make_problem(std::move(space), std::move(data), policy);
}

int run_fit(const FitOptions& opt) {
    using namespace lspia;

    SolverConfig cfg;
    cfg.variant = opt.variant == "uniform" ? Variant::uniform : Variant::weighted;
    cfg.tol_delta = opt.tol_delta;
    cfg.tol_residual_change = opt.tol_residual_change;
    cfg.max_iters = opt.max_iters;
    cfg.empty_group = opt.empty_group == "strict" ? EmptyGroupPolicy::strict
                                                  : EmptyGroupPolicy::freeze;
    if (opt.alpha != "auto") {
        cfg.alpha_auto = false;
        try {
            std::size_t used = 0;
            cfg.alpha = std::stod(opt.alpha, &used);
            if (used != opt.alpha.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("--alpha: expected 'auto' or a number, got '" +
                                        opt.alpha + "'");
        }
    }

    FitProblem problem = load_problem(opt.basis, opt.input, cfg.empty_group);

    const auto start = std::chrono::steady_clock::now();
    FitResult result;
    if (opt.p0 == "zero" || opt.p0 == "subset") {
        result = fit(problem, cfg,
                     opt.p0 == "zero" ? InitPolicy::zero : InitPolicy::subset);
    } else {
        Mat P0 = io::load_controls(opt.p0);
        result = fit(problem, cfg, std::move(P0));
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    const char* reason = result.termination == Termination::converged   ? "converged"
                         : result.termination == Termination::max_iters ? "max_iters"
                                                                        : "stagnated";

    ensure_parent_dir(opt.out_prefix);
    io::save_controls(opt.out_prefix + ".controls.csv", result.P_final);
    io::save_trace(opt.out_prefix + ".trace.csv", result.trace);
    io::FitSummary summary;
    summary.variant = opt.variant;
    summary.termination = reason;
    summary.iterations = result.iterations_used;
    summary.final_residual = result.final_residual;
    summary.final_delta = result.final_delta;
    summary.alpha = result.alpha_used;
    summary.wall_ms = wall_ms;
    io::save_summary(opt.out_prefix + ".summary.json", summary);

    std::printf("%s after %ld iterations: residual %.6e, max update %.6e\n", reason,
                result.iterations_used, result.final_residual, result.final_delta);

    switch (result.termination) {
        case Termination::converged: return kExitOk;
        case Termination::max_iters: return kExitMaxIters;
        case Termination::stagnated: return kExitStagnated;
    }
    return kExitNumerical;
}

int run_diagnose(const DiagnoseOptions& opt) {
    using namespace lspia;

    FitProblem problem = load_problem(opt.basis, opt.input, EmptyGroupPolicy::freeze);

    oracle::SpectralOptions sopt;
    sopt.dense_limit = opt.dense_limit;
    const oracle::SpectralReport spectral = oracle::spectral_report(problem.A, problem.weights, sopt);

    const Mat G = oracle::normal_matrix(problem.A);
    const Mat Gp = oracle::pinv(G);
    const auto penrose = oracle::penrose_residuals(G, Gp);
    const oracle::ProjectorReport projector = oracle::projector_check(problem.A);

    Mat pinv_reference;
    const Mat* pinv_ptr = nullptr;
    if (opt.emit_pinv) {
        const Mat dense = oracle::densify(problem.A, opt.dense_limit);
        const Mat zero(problem.A.cols, problem.data.points.cols());
        pinv_reference = oracle::pinv_solution(dense, problem.data.points, zero);
        pinv_ptr = &pinv_reference;
    }

    ensure_parent_dir(opt.out_prefix);
    io::save_report(opt.out_prefix + ".report.json", spectral, penrose, &projector, pinv_ptr);

    std::printf("rank %d of %d (n0 = %d), eigenvalues in [%.3e, %.3e], flags %s\n",
                spectral.rank_ata, spectral.size, spectral.n0, spectral.eig_min,
                spectral.eig_max, spectral.all_flags() ? "ok" : "VIOLATED");
    return spectral.all_flags() ? kExitOk : kExitNumerical;
}

int run_synth(const SynthOptions& opt) {
    using namespace lspia;

    synth::SyntheticSpec spec;
    if (opt.kind == "curve")
        spec.kind = synth::Kind::curve_samples;
    else if (opt.kind == "grid")
        spec.kind = synth::Kind::grid_samples;
    else if (opt.kind == "solid")
        spec.kind = synth::Kind::solid_samples;
    else if (opt.kind == "hole")
        spec.kind = synth::Kind::hole_punched;
    else
        spec.kind = synth::Kind::clustered_params;
    spec.dim = opt.dim;
    spec.data_dim = opt.data_dim;
    for (std::size_t d = 0; d < 3 && d < opt.samples.size(); ++d)
        spec.samples[d] = opt.samples[d];
    if (!opt.hole.empty()) {
        if (opt.hole.size() % 2 != 0 || opt.hole.size() > 6)
            throw std::invalid_argument("--hole: expected lo,hi pairs, at most one per direction");
        for (std::size_t d = 0; d * 2 + 1 < opt.hole.size(); ++d)
            spec.hole[d] = {opt.hole[d * 2], opt.hole[d * 2 + 1]};
    }
    spec.distinct = opt.distinct;
    spec.multiplicity = opt.multiplicity;
    spec.noise = opt.noise;
    spec.seed = opt.seed;

    const DataSet data = synth::synthesize(spec);
    ensure_parent_dir(opt.out);
    io::save_points(opt.out, data);
    std::printf("wrote %d points to %s\n", data.count(), opt.out.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Progressive least-squares fitting of B-spline forms"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML config file; fit options go in a [fit] section");

    FitOptions fit_opt;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit control points to sampled data");
    fit_cmd->fallthrough(true);
    add_basis_options(fit_cmd, fit_opt.basis);
    fit_cmd->add_option("--input", fit_opt.input, "Input points CSV")->required();
    fit_cmd->add_option("--out-prefix", fit_opt.out_prefix,
                        "Prefix for .controls.csv, .trace.csv and .summary.json");
    fit_cmd->add_option("--variant", fit_opt.variant, "Iteration variant")
        ->check(CLI::IsMember({"weighted", "uniform"}));
    fit_cmd->add_option("--alpha", fit_opt.alpha,
                        "Step size for the uniform variant: 'auto' or a number");
    fit_cmd->add_option("--p0", fit_opt.p0,
                        "Start controls: 'zero', 'subset' or a controls CSV path");
    fit_cmd->add_option("--empty-group", fit_opt.empty_group,
                        "Empty index group policy")
        ->check(CLI::IsMember({"freeze", "strict"}));
    fit_cmd->add_option("--tol-delta", fit_opt.tol_delta,
                        "Convergence bound on the largest control update");
    fit_cmd->add_option("--tol-residual-change", fit_opt.tol_residual_change,
                        "Stagnation bound on the relative residual change");
    fit_cmd->add_option("--max-iters", fit_opt.max_iters, "Iteration cap");

    DiagnoseOptions diag_opt;
    CLI::App* diag_cmd =
        app.add_subcommand("diagnose", "Spectral and projector diagnostics of the system");
    add_basis_options(diag_cmd, diag_opt.basis);
    diag_cmd->add_option("--input", diag_opt.input, "Input points CSV")->required();
    diag_cmd->add_option("--out-prefix", diag_opt.out_prefix, "Prefix for .report.json");
    diag_cmd->add_option("--dense-limit", diag_opt.dense_limit,
                         "Refuse to densify systems larger than this");
    diag_cmd->add_flag("--emit-pinv", diag_opt.emit_pinv,
                       "Include the dense reference solution in the report");

    SynthOptions synth_opt;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic sample set");
    synth_cmd->add_option("--kind", synth_opt.kind, "curve, grid, solid, hole or clustered")
        ->check(CLI::IsMember({"curve", "grid", "solid", "hole", "clustered"}));
    synth_cmd->add_option("--dim", synth_opt.dim, "Parameter dimensionality for hole/clustered")
        ->check(CLI::Range(1, 3));
    synth_cmd->add_option("--data-dim", synth_opt.data_dim, "Point dimensionality")
        ->check(CLI::Range(1, 3));
    synth_cmd->add_option("--samples", synth_opt.samples, "Samples per direction")
        ->delimiter(',');
    synth_cmd->add_option("--hole", synth_opt.hole, "Hole box as lo,hi per direction")
        ->delimiter(',');
    synth_cmd->add_option("--distinct", synth_opt.distinct, "Distinct parameters (clustered)");
    synth_cmd->add_option("--multiplicity", synth_opt.multiplicity,
                          "Copies of each parameter (clustered)");
    synth_cmd->add_option("--noise", synth_opt.noise, "Uniform noise amplitude");
    synth_cmd->add_option("--seed", synth_opt.seed, "Noise seed");
    synth_cmd->add_option("--out", synth_opt.out, "Output points CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (fit_cmd->parsed()) return run_fit(fit_opt);
        if (diag_cmd->parsed()) return run_diagnose(diag_opt);
        return run_synth(synth_opt);
    } catch (const lspia::AssemblyError& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitAssembly;
    } catch (const lspia::ParseError& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitIo;
    } catch (const lspia::IoError& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitIo;
    } catch (const lspia::SizeError& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitConfig;
    } catch (const lspia::NumericalError& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {  // ShapeError, DegenerateInput, bad flags
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "lspia: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "lspia: unexpected error: %s\n", e.what());
        return kExitNumerical;
    }
}
