#include "lspia/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lspia/errors.hpp"
#include "lspia/kernels.hpp"

namespace lspia {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void check_finite(double residual_norm, double delta_norm, long k) {
    if (!std::isfinite(residual_norm) || !std::isfinite(delta_norm))
        throw NumericalError("iteration diverged: non-finite norms at iteration " +
                             std::to_string(k));
}

void validate(const SolverConfig& cfg) {
    if (cfg.variant == Variant::uniform && !cfg.alpha_auto && !(cfg.alpha > 0.0))
        throw std::invalid_argument("solver config: explicit alpha must be positive");
    if (cfg.variant == Variant::weighted && !cfg.alpha_auto)
        throw std::invalid_argument("solver config: alpha applies to the uniform variant only");
    if (cfg.max_iters < 0) throw std::invalid_argument("solver config: negative max_iters");
    if (!(cfg.tol_delta > 0.0) || !(cfg.tol_residual_change > 0.0))
        throw std::invalid_argument("solver config: tolerances must be positive");
}

}  // namespace

Mat compute_dvd(const CollocationMatrix& A, const Mat& Q, const Mat& P) {
    Mat out(A.rows, Q.cols());
    kernels::residual(A, Q, P, out);
    return out;
}

Mat compute_dvc(const Mat& dvd, const GroupTable& groups, const WeightMatrix& weights) {
    Mat out(static_cast<int>(groups.group_count()), dvd.cols());
    kernels::gather_dvc(groups, weights, dvd, out);
    return out;
}

void step_weighted(IterationState& state, const FitProblem& problem) {
    Mat dvd = compute_dvd(problem.A, problem.data.points, state.P);
    Mat dvc = compute_dvc(dvd, problem.groups, problem.weights);
    state.delta_norm = kernels::serial::max_abs(dvc);
    kernels::add_scaled(state.P, dvc, 1.0);
    state.k += 1;
    kernels::residual(problem.A, problem.data.points, state.P, dvd);
    state.residual_norm = kernels::serial::frobenius_norm(dvd);
    check_finite(state.residual_norm, state.delta_norm, state.k);
}

void step_uniform(IterationState& state, const FitProblem& problem, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("step_uniform: alpha must be positive");
    Mat dvd = compute_dvd(problem.A, problem.data.points, state.P);
    Mat dvc(problem.A.cols, dvd.cols());
    kernels::apply_transpose(problem.A, dvd, dvc);
    state.delta_norm = alpha * kernels::serial::max_abs(dvc);
    kernels::add_scaled(state.P, dvc, alpha);
    state.k += 1;
    kernels::residual(problem.A, problem.data.points, state.P, dvd);
    state.residual_norm = kernels::serial::frobenius_norm(dvd);
    check_finite(state.residual_norm, state.delta_norm, state.k);
}

double estimate_lambda_max(const CollocationMatrix& A) {
    if (A.nnz() == 0) throw DegenerateInput("power iteration: zero collocation matrix");
    const int n1 = A.cols;
    Mat v(n1, 1), w(A.rows, 1), z(n1, 1);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double lambda = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        for (int i = 0; i < n1; ++i) v(i, 0) = unit(rng);
        double nv = kernels::serial::frobenius_norm(v);
        if (nv == 0.0) continue;
        for (int i = 0; i < n1; ++i) v(i, 0) /= nv;

        lambda = 0.0;
        bool grew = false;
        for (int iter = 0; iter < 500; ++iter) {
            kernels::apply(A, v, w);
            kernels::apply_transpose(A, w, z);
            double rayleigh = 0.0;
            for (int i = 0; i < n1; ++i) rayleigh += v(i, 0) * z(i, 0);
            const double nz = kernels::serial::frobenius_norm(z);
            if (nz == 0.0) break;  // v landed in the null space; try a fresh start
            grew = true;
            for (int i = 0; i < n1; ++i) v(i, 0) = z(i, 0) / nz;
            if (std::abs(rayleigh - lambda) <= 1e-12 * std::max(std::abs(rayleigh), 1e-300)) {
                lambda = rayleigh;
                break;
            }
            lambda = rayleigh;
        }
        if (grew && lambda > 0.0) return lambda;
    }
    throw DegenerateInput("power iteration: products never grew (A^T A is zero)");
}

double choose_alpha(const CollocationMatrix& A) {
    return 1.0 / (1.01 * estimate_lambda_max(A));
}

Mat initial_controls(const FitProblem& problem, InitPolicy init) {
    const int n1 = static_cast<int>(problem.space.total());
    const int dim = problem.data.points.cols();
    Mat P(n1, dim, 0.0);
    if (init == InitPolicy::zero) return P;

    // subset: copy the data point whose parameter is nearest to each
    // control's Greville parameter (greedy, duplicates allowed)
    const int m1 = problem.data.count();
    for (int i = 0; i < n1; ++i) {
        const ParamPoint g = greville_param(problem.space, i);
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m1; ++j) {
            double s = 0.0;
            for (int d = 0; d < problem.space.dim(); ++d) {
                const double diff = problem.data.params[j][d] - g[d];
                s += diff * diff;
            }
            if (s < best_d) {
                best_d = s;
                best = j;
            }
        }
        for (int c = 0; c < dim; ++c) P(i, c) = problem.data.points(best, c);
    }
    return P;
}

namespace {

FitResult run_fit(const FitProblem& problem, const SolverConfig& cfg, Mat P) {
    validate(cfg);
    if (cfg.empty_group == EmptyGroupPolicy::strict && problem.weights.any_empty()) {
        std::vector<long> empties;
        for (long i = 0; i < problem.weights.count(); ++i)
            if (problem.weights.empty_group[i]) empties.push_back(i);
        std::string msg = "fit: empty groups under the strict policy for control indices";
        for (long i : empties) msg += " " + std::to_string(i);
        throw AssemblyError(msg, std::move(empties));
    }
    if (P.rows() != problem.A.cols || P.cols() != problem.data.points.cols())
        throw ShapeError("fit: initial control matrix has the wrong shape");

    const bool uniform = cfg.variant == Variant::uniform;
    double alpha = 0.0;
    if (uniform) {
        alpha = cfg.alpha_auto ? choose_alpha(problem.A) : cfg.alpha;
        if (!cfg.alpha_auto) {
            const double lambda = estimate_lambda_max(problem.A);
            if (alpha * lambda > 1.0 + 1e-9)
                warn("fit: alpha * lambda_max == " + std::to_string(alpha * lambda) +
                     " exceeds 1; convergence is not guaranteed");
        }
    }

    const auto start = std::chrono::steady_clock::now();
    FitResult result;
    result.alpha_used = alpha;
    result.trace.reserve(256);

    Mat dvd(problem.A.rows, P.cols());
    Mat dvc(problem.A.cols, P.cols());
    double prev_res = 0.0;
    long k = 0;
    for (;; ++k) {
        kernels::residual(problem.A, problem.data.points, P, dvd);
        const double res = kernels::serial::frobenius_norm(dvd);
        if (uniform)
            kernels::apply_transpose(problem.A, dvd, dvc);
        else
            kernels::gather_dvc(problem.groups, problem.weights, dvd, dvc);
        const double scale = uniform ? alpha : 1.0;
        const double dnorm = scale * kernels::serial::max_abs(dvc);
        check_finite(res, dnorm, k);
        result.trace.push_back({k, res, dnorm, elapsed_ms(start)});

        if (dnorm <= cfg.tol_delta) {
            result.termination = Termination::converged;
            break;
        }
        if (k > 0 && std::abs(res - prev_res) <= cfg.tol_residual_change * res) {
            result.termination = Termination::stagnated;
            break;
        }
        if (k >= cfg.max_iters) {
            result.termination = Termination::max_iters;
            break;
        }
        prev_res = res;
        kernels::add_scaled(P, dvc, scale);
    }

    result.iterations_used = k;
    result.final_residual = result.trace.back().residual_norm;
    result.final_delta = result.trace.back().delta_norm;
    result.P_final = std::move(P);
    return result;
}

}  // namespace

FitResult fit(const FitProblem& problem, const SolverConfig& config, InitPolicy init) {
    return run_fit(problem, config, initial_controls(problem, init));
}

FitResult fit(const FitProblem& problem, const SolverConfig& config, Mat P0) {
    return run_fit(problem, config, std::move(P0));
}

}  // namespace lspia
