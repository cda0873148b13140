#pragma once

#include <vector>

#include "lspia/collocation.hpp"
#include "lspia/types.hpp"

namespace lspia {

/// weighted: P += Lambda A^T (Q - A P), step weights 1 / column sum.
/// uniform:  P += alpha A^T (Q - A P), one global step size.
enum class Variant { weighted, uniform };

enum class InitPolicy { zero, subset };

enum class Termination { converged, max_iters, stagnated };

struct SolverConfig {
    Variant variant = Variant::weighted;
    bool alpha_auto = true;     // uniform variant: pick alpha from choose_alpha
    double alpha = 0.0;         // explicit step size; must be > 0 when used
    long max_iters = 100000;
    double tol_delta = 1e-10;            // max_i ||Delta_i||_inf
    double tol_residual_change = 1e-12;  // |res_k - res_{k-1}| / res_k
    EmptyGroupPolicy empty_group = EmptyGroupPolicy::freeze;
};

struct TraceRecord {
    long iter;
    double residual_norm;
    double delta_norm;
    double wall_ms;
};

struct IterationState {
    Mat P;
    long k = 0;
    double residual_norm = 0.0;  // ||Q - A P|| (Frobenius) at the current P
    double delta_norm = 0.0;     // max_i ||Delta_i||_inf of the last update
};

struct FitResult {
    Mat P_final;
    std::vector<TraceRecord> trace;  // one row per iterate, k = 0 included
    Termination termination = Termination::max_iters;
    long iterations_used = 0;
    double alpha_used = 0.0;  // 0 for the weighted variant
    double final_residual = 0.0;
    double final_delta = 0.0;
};

/// Difference vectors of the data points: Q - A P.
Mat compute_dvd(const CollocationMatrix& A, const Mat& Q, const Mat& P);

/// Difference vectors of the control points: the group-weighted averages of
/// the data difference vectors (zero for frozen indices).
Mat compute_dvc(const Mat& dvd, const GroupTable& groups, const WeightMatrix& weights);

/// One iteration in place; refreshes k and both norms (the residual is
/// measured at the updated P). Throws NumericalError on non-finite values.
void step_weighted(IterationState& state, const FitProblem& problem);
void step_uniform(IterationState& state, const FitProblem& problem, double alpha);

/// Power-iteration estimate of lambda_max(A^T A). Deterministic start vector;
/// throws DegenerateInput when the product never grows (zero matrix).
double estimate_lambda_max(const CollocationMatrix& A);

/// 1 / (1.01 * estimate_lambda_max), so alpha * lambda_max <= 1 holds with a
/// 1% safety margin over the estimation error.
double choose_alpha(const CollocationMatrix& A);

/// zero: all-zero controls. subset: each control point copies the data point
/// whose parameter is nearest to the control's Greville parameter.
Mat initial_controls(const FitProblem& problem, InitPolicy init);

/// Runs the configured variant until the control updates drop below
/// tol_delta (converged), the relative residual change drops below
/// tol_residual_change while updates are still large (stagnated), or
/// max_iters is reached. The trace holds one record per iterate including
/// the start state.
FitResult fit(const FitProblem& problem, const SolverConfig& config,
              InitPolicy init = InitPolicy::zero);
FitResult fit(const FitProblem& problem, const SolverConfig& config, Mat P0);

}  // namespace lspia
