#include "lspia/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lspia/errors.hpp"

namespace lspia::oracle {

namespace {

using ERow = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const ERow>;

EMap view(const DenseMatrix& M) { return EMap(M.data(), M.rows(), M.cols()); }

DenseMatrix from_eigen(const ERow& E) {
    DenseMatrix M(static_cast<int>(E.rows()), static_cast<int>(E.cols()));
    ERow::Map(M.data(), E.rows(), E.cols()) = E;
    return M;
}

/// SVD with thin U/V. Jacobi for small matrices, divide-and-conquer above.
void svd_eigen(const ERow& M, ERow& U, Eigen::VectorXd& S, ERow& V) {
    if (std::min(M.rows(), M.cols()) < 32) {
        Eigen::JacobiSVD<ERow> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        U = svd.matrixU();
        S = svd.singularValues();
        V = svd.matrixV();
    } else {
        Eigen::BDCSVD<ERow> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        U = svd.matrixU();
        S = svd.singularValues();
        V = svd.matrixV();
    }
}

double rank_threshold(long rows, long cols, double sigma_max) {
    return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols)) *
           sigma_max;
}

int rank_from_sigma(const Eigen::VectorXd& S, long rows, long cols, double rank_tol) {
    if (S.size() == 0) return 0;
    const double tol = rank_tol > 0.0 ? rank_tol : rank_threshold(rows, cols, S(0));
    int r = 0;
    for (Eigen::Index i = 0; i < S.size(); ++i)
        if (S(i) > tol) ++r;
    return r;
}

ERow pinv_eigen(const ERow& M, double rank_tol) {
    ERow U, V;
    Eigen::VectorXd S;
    svd_eigen(M, U, S, V);
    const int r = rank_from_sigma(S, M.rows(), M.cols(), rank_tol);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(S.size());
    for (int i = 0; i < r; ++i) inv(i) = 1.0 / S(i);
    return V * inv.asDiagonal() * U.transpose();
}

ERow normal_matrix_eigen(const CollocationMatrix& A) {
    ERow G = ERow::Zero(A.cols, A.cols);
    for (int j = 0; j < A.rows; ++j)
        for (long k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k)
            for (long l = A.row_ptr[j]; l < A.row_ptr[j + 1]; ++l)
                G(A.row_col[k], A.row_col[l]) += A.row_val[k] * A.row_val[l];
    return G;
}

SpectralReport spectral_from_normal(const ERow& G, const std::vector<double>& d,
                                    const SpectralOptions& options) {
    const long n1 = G.rows();
    if (n1 > options.dense_limit)
        throw SizeError("spectral diagnostics: system order " + std::to_string(n1) +
                        " exceeds the dense limit " + std::to_string(options.dense_limit) +
                        "; diagnose a subsampled system instead");
    if (static_cast<long>(d.size()) != n1)
        throw ShapeError("spectral diagnostics: weight count does not match system order");

    SpectralReport rep;
    rep.size = static_cast<int>(n1);

    Eigen::VectorXd sqrt_d(n1);
    for (long i = 0; i < n1; ++i) {
        if (!(d[i] > 0.0))
            throw DegenerateInput("spectral diagnostics: nonpositive step weight");
        sqrt_d(i) = std::sqrt(d[i]);
    }

    // Symmetric similarity transform: same spectrum as Lambda A^T A, real by
    // construction.
    ERow S = sqrt_d.asDiagonal() * G * sqrt_d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<ERow> sym(S);
    if (sym.info() != Eigen::Success)
        throw NumericalError("spectral diagnostics: symmetric eigensolve failed");
    rep.eigenvalues.assign(sym.eigenvalues().data(), sym.eigenvalues().data() + n1);

    // Nonsymmetric cross-check on Lambda A^T A itself.
    ERow M = ERow(G);
    for (long i = 0; i < n1; ++i) M.row(i) *= d[i];
    Eigen::EigenSolver<ERow> gen(M, false);
    if (gen.info() != Eigen::Success)
        throw NumericalError("spectral diagnostics: nonsymmetric eigensolve failed");
    rep.eigenvalues_raw.resize(n1);
    for (long i = 0; i < n1; ++i) rep.eigenvalues_raw[i] = gen.eigenvalues()(i);

    ERow U, V;
    Eigen::VectorXd sigma_g, sigma_m;
    svd_eigen(G, U, sigma_g, V);
    rep.singular_values.assign(sigma_g.data(), sigma_g.data() + sigma_g.size());
    rep.rank_ata = rank_from_sigma(sigma_g, n1, n1, 0.0);
    svd_eigen(M, U, sigma_m, V);
    rep.rank_weighted = rank_from_sigma(sigma_m, n1, n1, 0.0);
    rep.n0 = rep.size - rep.rank_ata;

    rep.eig_min = rep.eigenvalues.front();
    rep.eig_max = rep.eigenvalues.back();
    rep.zero_tol = options.zero_tol_factor * std::max(rep.eig_max, 0.0);
    rep.zero_count = static_cast<int>(std::count_if(
        rep.eigenvalues.begin(), rep.eigenvalues.end(),
        [&](double l) { return std::abs(l) <= rep.zero_tol; }));
    rep.max_imag = 0.0;
    for (const std::complex<double>& l : rep.eigenvalues_raw)
        rep.max_imag = std::max(rep.max_imag, std::abs(l.imag()));

    rep.flag_real = rep.max_imag <= options.tol;
    rep.flag_range = rep.eig_min >= -options.tol && rep.eig_max <= 1.0 + options.tol;
    rep.flag_zero_count = rep.zero_count == rep.n0;
    rep.flag_rank_match = rep.rank_weighted == rep.rank_ata;
    return rep;
}

ProjectorReport projector_from_normal(const ERow& G) {
    ProjectorReport rep;
    const long n1 = G.rows();
    ERow Gp = pinv_eigen(G, 0.0);
    ERow P = Gp * G;
    rep.projector = from_eigen(P);
    rep.idempotency_residual = (P * P - P).norm();
    rep.symmetry_residual = (P - P.transpose()).norm();
    rep.trace = P.trace();

    ERow sym = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<ERow> eig(sym);
    if (eig.info() != Eigen::Success)
        throw NumericalError("projector check: eigensolve failed");
    rep.eigenvalue_deviation = 0.0;
    rep.ones_count = 0;
    for (long i = 0; i < n1; ++i) {
        const double l = eig.eigenvalues()(i);
        rep.eigenvalue_deviation =
            std::max(rep.eigenvalue_deviation, std::min(std::abs(l), std::abs(l - 1.0)));
        if (l > 0.5) ++rep.ones_count;
    }

    ERow U, V;
    Eigen::VectorXd sigma;
    svd_eigen(G, U, sigma, V);
    rep.rank_ata = rank_from_sigma(sigma, n1, n1, 0.0);
    return rep;
}

}  // namespace

SvdResult svd(const DenseMatrix& M) {
    ERow U, V;
    Eigen::VectorXd S;
    svd_eigen(view(M), U, S, V);
    SvdResult out;
    out.U = from_eigen(U);
    out.V = from_eigen(V);
    out.singular_values.assign(S.data(), S.data() + S.size());
    return out;
}

double default_rank_tol(const DenseMatrix& M, const std::vector<double>& sigma) {
    return rank_threshold(M.rows(), M.cols(), sigma.empty() ? 0.0 : sigma.front());
}

int numerical_rank(const DenseMatrix& M, double rank_tol) {
    ERow U, V;
    Eigen::VectorXd S;
    svd_eigen(view(M), U, S, V);
    return rank_from_sigma(S, M.rows(), M.cols(), rank_tol);
}

DenseMatrix pinv(const DenseMatrix& M, double rank_tol) {
    return from_eigen(pinv_eigen(view(M), rank_tol));
}

std::array<double, 4> penrose_residuals(const DenseMatrix& M, const DenseMatrix& Mp) {
    const EMap A = view(M);
    const EMap P = view(Mp);
    const double na = std::max(A.norm(), 1e-300);
    const double np = std::max(P.norm(), 1e-300);
    return {
        (A * P * A - A).norm() / na,
        (P * A * P - P).norm() / np,
        ((A * P).transpose() - A * P).norm() / std::max((A * P).norm(), 1e-300),
        ((P * A).transpose() - P * A).norm() / std::max((P * A).norm(), 1e-300),
    };
}

DenseMatrix pinv_solution(const DenseMatrix& A, const DenseMatrix& Q, const DenseMatrix& P0) {
    if (Q.rows() != A.rows() || P0.rows() != A.cols() || Q.cols() != P0.cols())
        throw ShapeError("pinv_solution: shape mismatch");
    const EMap Ae = view(A);
    ERow G = Ae.transpose() * Ae;
    ERow Gp = pinv_eigen(G, 0.0);
    ERow X = Gp * (Ae.transpose() * view(Q)) +
             (ERow::Identity(G.rows(), G.cols()) - Gp * G) * view(P0);
    return from_eigen(X);
}

SpectralReport spectral_report(const CollocationMatrix& A, const WeightMatrix& weights,
                               const SpectralOptions& options) {
    if (A.cols > options.dense_limit)
        throw SizeError("spectral diagnostics: system order " + std::to_string(A.cols) +
                        " exceeds the dense limit " + std::to_string(options.dense_limit) +
                        "; diagnose a subsampled system instead");
    std::vector<double> d(weights.d.begin(), weights.d.end());
    for (long i = 0; i < weights.count(); ++i)
        if (weights.empty_group[i]) d[i] = 1.0;  // zero column: the weight is immaterial
    return spectral_from_normal(normal_matrix_eigen(A), d, options);
}

SpectralReport spectral_report(const DenseMatrix& A, const std::vector<double>& d,
                               const SpectralOptions& options) {
    const EMap Ae = view(A);
    ERow G = Ae.transpose() * Ae;
    return spectral_from_normal(G, d, options);
}

ProjectorReport projector_check(const DenseMatrix& A) {
    const EMap Ae = view(A);
    ERow G = Ae.transpose() * Ae;
    return projector_from_normal(G);
}

ProjectorReport projector_check(const CollocationMatrix& A) {
    return projector_from_normal(normal_matrix_eigen(A));
}

DenseMatrix densify(const CollocationMatrix& A, long dense_limit) {
    if (A.rows > dense_limit || A.cols > dense_limit)
        throw SizeError("densify: matrix " + std::to_string(A.rows) + "x" +
                        std::to_string(A.cols) + " exceeds the dense limit " +
                        std::to_string(dense_limit));
    DenseMatrix M(A.rows, A.cols, 0.0);
    for (int j = 0; j < A.rows; ++j)
        for (long k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k)
            M(j, A.row_col[k]) = A.row_val[k];
    return M;
}

DenseMatrix normal_matrix(const CollocationMatrix& A) {
    return from_eigen(normal_matrix_eigen(A));
}

DenseMatrix normal_rhs(const CollocationMatrix& A, const Mat& Q) {
    if (Q.rows() != A.rows) throw ShapeError("normal_rhs: shape mismatch");
    DenseMatrix out(A.cols, Q.cols(), 0.0);
    for (int j = 0; j < A.rows; ++j)
        for (long k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k) {
            const double a = A.row_val[k];
            for (int c = 0; c < Q.cols(); ++c) out(A.row_col[k], c) += a * Q(j, c);
        }
    return out;
}

DenseMatrix normal_solve(const CollocationMatrix& A, const Mat& Q) {
    ERow G = normal_matrix_eigen(A);
    const DenseMatrix rhs = normal_rhs(A, Q);
    Eigen::LDLT<ERow> ldlt(G);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("normal_solve: factorization failed");
    ERow X = ldlt.solve(ERow(view(rhs)));
    return from_eigen(X);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: shape mismatch");
    return from_eigen(view(a) * view(b));
}

DenseMatrix transpose(const DenseMatrix& a) { return from_eigen(view(a).transpose()); }

DenseMatrix column_space_basis(const DenseMatrix& M, double rank_tol) {
    ERow U, V;
    Eigen::VectorXd S;
    svd_eigen(view(M), U, S, V);
    const int r = rank_from_sigma(S, M.rows(), M.cols(), rank_tol);
    return from_eigen(ERow(U.leftCols(r)));
}

}  // namespace lspia::oracle
