#include "lspia/kernels.hpp"

#include <cmath>

#include "lspia/errors.hpp"

namespace lspia::kernels {

namespace {

void check_apply(const CollocationMatrix& A, const Mat& X, const Mat& Y) {
    if (X.rows() != A.cols || Y.rows() != A.rows || X.cols() != Y.cols())
        throw ShapeError("kernels: shape mismatch in A * X");
}

void check_transpose(const CollocationMatrix& A, const Mat& R, const Mat& Z) {
    if (R.rows() != A.rows || Z.rows() != A.cols || R.cols() != Z.cols())
        throw ShapeError("kernels: shape mismatch in A^T * R");
}

inline void row_product(const CollocationMatrix& A, const Mat& X, Mat& Y, int j) {
    const int d = X.cols();
    double* y = Y.row(j);
    for (int c = 0; c < d; ++c) y[c] = 0.0;
    for (long k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k) {
        const double a = A.row_val[k];
        const double* x = X.row(A.row_col[k]);
        for (int c = 0; c < d; ++c) y[c] += a * x[c];
    }
}

inline void col_product(const CollocationMatrix& A, const Mat& R, Mat& Z, int i) {
    const int d = R.cols();
    double* z = Z.row(i);
    for (int c = 0; c < d; ++c) z[c] = 0.0;
    for (long k = A.col_ptr[i]; k < A.col_ptr[i + 1]; ++k) {
        const double a = A.col_val[k];
        const double* r = R.row(A.col_row[k]);
        for (int c = 0; c < d; ++c) z[c] += a * r[c];
    }
}

inline void residual_row(const CollocationMatrix& A, const Mat& Q, const Mat& P, Mat& out,
                         int j) {
    const int d = Q.cols();
    double* o = out.row(j);
    const double* q = Q.row(j);
    for (int c = 0; c < d; ++c) o[c] = q[c];
    for (long k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k) {
        const double a = A.row_val[k];
        const double* p = P.row(A.row_col[k]);
        for (int c = 0; c < d; ++c) o[c] -= a * p[c];
    }
}

inline void dvc_row(const GroupTable& groups, const WeightMatrix& weights, const Mat& dvd,
                    Mat& out, long i) {
    const int d = dvd.cols();
    double* o = out.row(static_cast<int>(i));
    for (int c = 0; c < d; ++c) o[c] = 0.0;
    if (weights.empty_group[i]) return;
    const std::vector<int>& mem = groups.members[i];
    const std::vector<double>& val = groups.values[i];
    double den = 0.0;
    for (std::size_t k = 0; k < mem.size(); ++k) {
        const double b = val[k];
        den += b;
        const double* dv = dvd.row(mem[k]);
        for (int c = 0; c < d; ++c) o[c] += b * dv[c];
    }
    for (int c = 0; c < d; ++c) o[c] /= den;
}

inline void dvc_matrix_row(const CollocationMatrix& A, const WeightMatrix& weights,
                           const Mat& dvd, Mat& out, int i) {
    col_product(A, dvd, out, i);
    const int d = dvd.cols();
    double* o = out.row(i);
    if (weights.empty_group[i]) {
        for (int c = 0; c < d; ++c) o[c] = 0.0;
        return;
    }
    const double di = weights.d[i];
    for (int c = 0; c < d; ++c) o[c] *= di;
}

}  // namespace

void apply(const CollocationMatrix& A, const Mat& X, Mat& Y) {
    check_apply(A, X, Y);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < A.rows; ++j) row_product(A, X, Y, j);
}

void apply_transpose(const CollocationMatrix& A, const Mat& R, Mat& Z) {
    check_transpose(A, R, Z);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < A.cols; ++i) col_product(A, R, Z, i);
}

void residual(const CollocationMatrix& A, const Mat& Q, const Mat& P, Mat& out) {
    check_apply(A, P, Q);
    check_apply(A, P, out);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < A.rows; ++j) residual_row(A, Q, P, out, j);
}

void gather_dvc(const GroupTable& groups, const WeightMatrix& weights, const Mat& dvd,
                Mat& out) {
    const long n1 = groups.group_count();
    if (out.rows() != n1 || out.cols() != dvd.cols())
        throw ShapeError("kernels: shape mismatch in gather_dvc");
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n1; ++i) dvc_row(groups, weights, dvd, out, i);
}

void gather_dvc_matrix(const CollocationMatrix& A, const WeightMatrix& weights, const Mat& dvd,
                       Mat& out) {
    check_transpose(A, dvd, out);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < A.cols; ++i) dvc_matrix_row(A, weights, dvd, out, i);
}

void add_scaled(Mat& P, const Mat& D, double s) {
    if (!P.same_shape(D)) throw ShapeError("kernels: shape mismatch in add_scaled");
    double* p = P.data();
    const double* d = D.data();
    const long n = static_cast<long>(P.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) p[k] += s * d[k];
}

double frobenius_norm(const Mat& M) {
    const double* m = M.data();
    const long n = static_cast<long>(M.size());
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (long k = 0; k < n; ++k) s += m[k] * m[k];
    return std::sqrt(s);
}

double max_abs(const Mat& M) {
    const double* m = M.data();
    const long n = static_cast<long>(M.size());
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(max : s)
    for (long k = 0; k < n; ++k) s = std::max(s, std::abs(m[k]));
    return s;
}

bool all_finite(const Mat& M) {
    const double* m = M.data();
    const long n = static_cast<long>(M.size());
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long k = 0; k < n; ++k) ok = ok && std::isfinite(m[k]);
    return ok;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

namespace serial {

void apply(const CollocationMatrix& A, const Mat& X, Mat& Y) {
    check_apply(A, X, Y);
    for (int j = 0; j < A.rows; ++j) row_product(A, X, Y, j);
}

void apply_transpose(const CollocationMatrix& A, const Mat& R, Mat& Z) {
    check_transpose(A, R, Z);
    for (int i = 0; i < A.cols; ++i) col_product(A, R, Z, i);
}

void residual(const CollocationMatrix& A, const Mat& Q, const Mat& P, Mat& out) {
    check_apply(A, P, Q);
    check_apply(A, P, out);
    for (int j = 0; j < A.rows; ++j) residual_row(A, Q, P, out, j);
}

void gather_dvc(const GroupTable& groups, const WeightMatrix& weights, const Mat& dvd,
                Mat& out) {
    const long n1 = groups.group_count();
    if (out.rows() != n1 || out.cols() != dvd.cols())
        throw ShapeError("kernels: shape mismatch in gather_dvc");
    for (long i = 0; i < n1; ++i) dvc_row(groups, weights, dvd, out, i);
}

void gather_dvc_matrix(const CollocationMatrix& A, const WeightMatrix& weights, const Mat& dvd,
                       Mat& out) {
    check_transpose(A, dvd, out);
    for (int i = 0; i < A.cols; ++i) dvc_matrix_row(A, weights, dvd, out, i);
}

void add_scaled(Mat& P, const Mat& D, double s) {
    if (!P.same_shape(D)) throw ShapeError("kernels: shape mismatch in add_scaled");
    double* p = P.data();
    const double* d = D.data();
    const long n = static_cast<long>(P.size());
    for (long k = 0; k < n; ++k) p[k] += s * d[k];
}

double frobenius_norm(const Mat& M) {
    const double* m = M.data();
    double s = 0.0;
    for (long k = 0; k < static_cast<long>(M.size()); ++k) s += m[k] * m[k];
    return std::sqrt(s);
}

double max_abs(const Mat& M) {
    const double* m = M.data();
    double s = 0.0;
    for (long k = 0; k < static_cast<long>(M.size()); ++k) s = std::max(s, std::abs(m[k]));
    return s;
}

}  // namespace serial

}  // namespace lspia::kernels
