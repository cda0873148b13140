#pragma once

#include <cstdint>
#include <vector>

#include "lspia/collocation.hpp"
#include "lspia/types.hpp"

namespace lspia::kernels {

// OpenMP-parallel kernels for the iteration's inner loops. In the matrix
// kernels each output element is accumulated by a single thread in the same
// order as the serial reference below, so those agree bitwise and tests rely
// on that. The norm reductions may reassociate across threads; the solver
// uses the serial norms so trace files do not depend on the thread count.

/// Y = A X (CSR, parallel over rows). X is (cols x d), Y is (rows x d).
void apply(const CollocationMatrix& A, const Mat& X, Mat& Y);

/// Z = A^T R (CSC, parallel over columns). R is (rows x d), Z is (cols x d).
void apply_transpose(const CollocationMatrix& A, const Mat& R, Mat& Z);

/// out = Q - A P, the per-point difference vectors.
void residual(const CollocationMatrix& A, const Mat& Q, const Mat& P, Mat& out);

/// Group-averaged difference vectors: for each control index i,
/// out(i,:) = sum_{j in I_i} B_i(t_j) dvd(j,:) / sum_{j in I_i} B_i(t_j),
/// and exactly zero for frozen (empty-group) indices. The divisor is
/// re-accumulated from the group values, not taken from the stored weights.
void gather_dvc(const GroupTable& groups, const WeightMatrix& weights,
                const Mat& dvd, Mat& out);

/// Matrix-form counterpart: out = Lambda A^T dvd with frozen rows zeroed.
/// Multiplies by the stored reciprocal column sums; kept as the second route
/// for the path-equivalence checks.
void gather_dvc_matrix(const CollocationMatrix& A, const WeightMatrix& weights,
                       const Mat& dvd, Mat& out);

/// P += s * D.
void add_scaled(Mat& P, const Mat& D, double s);

double frobenius_norm(const Mat& M);
double max_abs(const Mat& M);
bool all_finite(const Mat& M);
double dot(const std::vector<double>& a, const std::vector<double>& b);

namespace serial {

void apply(const CollocationMatrix& A, const Mat& X, Mat& Y);
void apply_transpose(const CollocationMatrix& A, const Mat& R, Mat& Z);
void residual(const CollocationMatrix& A, const Mat& Q, const Mat& P, Mat& out);
void gather_dvc(const GroupTable& groups, const WeightMatrix& weights,
                const Mat& dvd, Mat& out);
void gather_dvc_matrix(const CollocationMatrix& A, const WeightMatrix& weights,
                       const Mat& dvd, Mat& out);
void add_scaled(Mat& P, const Mat& D, double s);
double frobenius_norm(const Mat& M);
double max_abs(const Mat& M);

}  // namespace serial

}  // namespace lspia::kernels
