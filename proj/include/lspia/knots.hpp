#pragma once

#include <vector>

namespace lspia {

/// Nondecreasing knot sequence plus polynomial degree for one parametric
/// direction. The evaluation domain is [knots[degree], knots[size-1-degree]];
/// clamped sequences repeat each end knot degree+1 times so the basis
/// interpolates the end control points.
class KnotVector {
public:
    KnotVector(std::vector<double> knots, int degree);

    /// Clamped sequence with uniformly spaced interior knots on [lo, hi].
    static KnotVector clamped_uniform(int control_count, int degree,
                                      double lo = 0.0, double hi = 1.0);

    int degree() const { return degree_; }
    int control_count() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
    double domain_min() const { return knots_[degree_]; }
    double domain_max() const { return knots_[knots_.size() - 1 - degree_]; }
    const std::vector<double>& knots() const { return knots_; }
    bool is_clamped() const;

    /// Index s with knots[s] <= u < knots[s+1]. The right domain endpoint
    /// maps to the last nondegenerate span, i.e. basis values there are the
    /// left-sided limits, which keeps clamped bases summing to 1 at u = max.
    /// Throws std::domain_error when u is outside the domain.
    int find_span(double u) const;

private:
    std::vector<double> knots_;
    int degree_;
};

/// All degree+1 basis values that may be nonzero on `span` at u:
/// out[r] = N_{span-degree+r}(u). `out` must hold degree+1 doubles.
void basis_span_eval(const KnotVector& kv, int span, double u, double* out);

/// Single basis value N_i(u) via the Cox-de Boor recursion. Returns an exact
/// zero outside the support of N_i. Throws std::out_of_range for a bad index
/// and std::domain_error for u outside the evaluation domain.
double basis_eval(const KnotVector& kv, int i, double u);

/// Greville abscissa of basis i: the mean of knots i+1 .. i+degree (midpoint
/// of the support interval for degree 0).
double greville(const KnotVector& kv, int i);

}  // namespace lspia
