#pragma once

#include <array>
#include <vector>

#include "lspia/knots.hpp"
#include "lspia/types.hpp"

namespace lspia {

/// Tensor-product B-spline space of dimensionality 1, 2 or 3 with one knot
/// vector per direction (u, v, w).
///
/// Control points carry a single flat index. With per-direction counts
/// n_u, n_v, n_w the layout is
///
///   curve:  i = u
///   patch:  i = u * n_u + v
///   solid:  i = (w * n_v + u) * n_u + v
///
/// so the v digit has radix n_u and the u digit radix n_v. The mapping is a
/// bijection for any counts, but tensor evaluation indexes each direction's
/// basis with its own digit, which stays in range only when n_u == n_v.
/// Spaces with unequal u/v counts can still be constructed and used for
/// index bookkeeping; evaluation on them reports an error.
class BasisSpace {
public:
    explicit BasisSpace(std::vector<KnotVector> directions);

    int dim() const { return static_cast<int>(dirs_.size()); }
    const KnotVector& direction(int d) const { return dirs_[d]; }
    int count(int d) const { return dirs_[d].control_count(); }
    long total() const;

    /// True when tensor evaluation is well defined (see class comment).
    bool evaluable() const { return dim() < 2 || count(0) == count(1); }

    /// True when every coordinate of t lies in that direction's domain.
    bool contains(const ParamPoint& t) const;

    /// Digits {u, v, w} for a flat index (unused digits are 0).
    std::array<int, 3> unflatten_index(long i) const;

    /// Inverse of unflatten_index. Digit bounds are v < n_u, u < n_v
    /// (u < n_u for curves), w < n_w; throws std::out_of_range otherwise.
    long flatten_index(const std::array<int, 3>& digits) const;

private:
    std::vector<KnotVector> dirs_;
};

/// Tensor-product basis value B_i(t): the product of per-direction basis
/// values at the unflattened digits of i. Errors propagate from basis_eval.
double unified_basis_eval(const BasisSpace& space, long i, const ParamPoint& t);

struct ActiveBasis {
    long index;
    double value;
};

/// The nonzero tensor-product basis values at t, as (flat index, value)
/// pairs with exact zeros dropped. Requires an evaluable space and t inside
/// the domain.
std::vector<ActiveBasis> active_basis(const BasisSpace& space, const ParamPoint& t);

/// Point on the fitted form: sum_i P(i,:) B_i(t). P must have total() rows.
std::vector<double> evaluate_form(const BasisSpace& space, const Mat& P, const ParamPoint& t);

/// Parameter location associated with control index i: the per-direction
/// Greville abscissae at i's digits. Requires an evaluable space.
ParamPoint greville_param(const BasisSpace& space, long i);

}  // namespace lspia
