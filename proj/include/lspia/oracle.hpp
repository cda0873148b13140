#pragma once

#include <array>
#include <complex>
#include <vector>

#include "lspia/collocation.hpp"
#include "lspia/types.hpp"

namespace lspia::oracle {

// Dense reference routines used to cross-check the sparse iteration: SVD,
// Moore-Penrose pseudo-inverse, spectral and projector diagnostics. Small
// systems only; everything here densifies.

using DenseMatrix = Mat;

struct SvdResult {
    DenseMatrix U;                        // rows x k, orthonormal columns
    std::vector<double> singular_values;  // k = min(rows, cols), nonincreasing
    DenseMatrix V;                        // cols x k, orthonormal columns
};

SvdResult svd(const DenseMatrix& M);

/// Conventional numerical-rank threshold: eps * max(rows, cols) * sigma_max.
double default_rank_tol(const DenseMatrix& M, const std::vector<double>& sigma);

/// Count of singular values above the threshold (rank_tol <= 0 selects the
/// conventional default).
int numerical_rank(const DenseMatrix& M, double rank_tol = 0.0);

/// Moore-Penrose pseudo-inverse via SVD truncation.
DenseMatrix pinv(const DenseMatrix& M, double rank_tol = 0.0);

/// Residuals of the four Penrose identities for the pair (M, Mp), each a
/// Frobenius norm scaled by the norm of its left-hand side's factor.
std::array<double, 4> penrose_residuals(const DenseMatrix& M, const DenseMatrix& Mp);

/// Limit of the uniform iteration started at P0:
///   (A^T A)^+ A^T Q + (I - (A^T A)^+ A^T A) P0.
/// With P0 = 0 this is the minimum-norm least-squares solution.
DenseMatrix pinv_solution(const DenseMatrix& A, const DenseMatrix& Q, const DenseMatrix& P0);

struct SpectralOptions {
    long dense_limit = 2000;       // refuse larger systems
    double tol = 1e-8;             // flag tolerances (realness, [0,1] range)
    double zero_tol_factor = 1e-8; // zero eigenvalue cutoff, times lambda_max
};

/// Eigenvalue diagnostics of the weighted iteration matrix Lambda A^T A.
/// Eigenvalues come from the symmetric similarity transform
/// Lambda^{1/2} A^T A Lambda^{1/2} (same spectrum, guaranteed real); the
/// general nonsymmetric solve is kept as a cross-check and feeds max_imag.
struct SpectralReport {
    int size = 0;
    std::vector<double> eigenvalues;                    // symmetric path, ascending
    std::vector<std::complex<double>> eigenvalues_raw;  // nonsymmetric path
    std::vector<double> singular_values;                // of A^T A
    int rank_ata = 0;
    int rank_weighted = 0;  // rank of Lambda A^T A
    int n0 = 0;             // size - rank_ata
    int zero_count = 0;     // eigenvalues with |l| <= zero_tol
    double zero_tol = 0.0;
    double eig_min = 0.0;
    double eig_max = 0.0;
    double max_imag = 0.0;
    bool flag_real = false;        // max_imag <= tol
    bool flag_range = false;       // eigenvalues within [-tol, 1 + tol]
    bool flag_zero_count = false;  // zero_count == n0
    bool flag_rank_match = false;  // rank_weighted == rank_ata

    bool all_flags() const {
        return flag_real && flag_range && flag_zero_count && flag_rank_match;
    }
};

SpectralReport spectral_report(const CollocationMatrix& A, const WeightMatrix& weights,
                               const SpectralOptions& options = {});
SpectralReport spectral_report(const DenseMatrix& A, const std::vector<double>& d,
                               const SpectralOptions& options = {});

/// The orthogonal projector (A^T A)^+ (A^T A) with its sanity numbers:
/// idempotency and symmetry residuals (Frobenius), the largest deviation of
/// any eigenvalue from {0, 1}, and the count of eigenvalues near 1 (which
/// must equal rank(A^T A); the trace equals it up to roundoff).
struct ProjectorReport {
    DenseMatrix projector;
    double idempotency_residual = 0.0;
    double symmetry_residual = 0.0;
    double eigenvalue_deviation = 0.0;
    int ones_count = 0;
    double trace = 0.0;
    int rank_ata = 0;

    bool ok(double tol = 1e-8) const {
        return idempotency_residual <= tol && symmetry_residual <= tol &&
               eigenvalue_deviation <= tol && ones_count == rank_ata;
    }
};

ProjectorReport projector_check(const DenseMatrix& A);
ProjectorReport projector_check(const CollocationMatrix& A);

/// Dense copy of the sparse collocation matrix (both dimensions limited).
DenseMatrix densify(const CollocationMatrix& A, long dense_limit = 2000);

/// A^T A and A^T Q accumulated directly from the sparse rows.
DenseMatrix normal_matrix(const CollocationMatrix& A);
DenseMatrix normal_rhs(const CollocationMatrix& A, const Mat& Q);

/// Unique least-squares solution of a full-rank system via a dense
/// normal-equation solve (Cholesky-type factorization, no SVD).
DenseMatrix normal_solve(const CollocationMatrix& A, const Mat& Q);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);

/// Orthonormal basis of the column space (left singular vectors above the
/// rank threshold), for subspace-membership checks.
DenseMatrix column_space_basis(const DenseMatrix& M, double rank_tol = 0.0);

}  // namespace lspia::oracle
