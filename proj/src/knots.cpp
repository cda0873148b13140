#include "lspia/knots.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lspia/errors.hpp"

namespace lspia {

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
    if (degree_ < 0) throw ShapeError("knot vector: degree must be nonnegative");
    if (static_cast<int>(knots_.size()) < 2 * (degree_ + 1))
        throw ShapeError("knot vector: need at least 2*(degree+1) knots, got " +
                         std::to_string(knots_.size()));
    if (!std::is_sorted(knots_.begin(), knots_.end()))
        throw ShapeError("knot vector: knots must be nondecreasing");
    if (!(domain_min() < domain_max()))
        throw DegenerateInput("knot vector: empty evaluation domain");
}

KnotVector KnotVector::clamped_uniform(int control_count, int degree, double lo, double hi) {
    if (control_count < degree + 1)
        throw ShapeError("clamped knot vector: need at least degree+1 control points");
    if (!(lo < hi)) throw DegenerateInput("clamped knot vector: empty interval");
    const int segments = control_count - degree;  // interior spans
    std::vector<double> t;
    t.reserve(control_count + degree + 1);
    for (int i = 0; i <= degree; ++i) t.push_back(lo);
    for (int i = 1; i < segments; ++i)
        t.push_back(lo + (hi - lo) * static_cast<double>(i) / segments);
    for (int i = 0; i <= degree; ++i) t.push_back(hi);
    return KnotVector(std::move(t), degree);
}

bool KnotVector::is_clamped() const {
    const std::size_t n = knots_.size();
    for (int i = 0; i <= degree_; ++i)
        if (knots_[i] != knots_[0] || knots_[n - 1 - i] != knots_[n - 1]) return false;
    return true;
}

int KnotVector::find_span(double u) const {
    const double lo = domain_min();
    const double hi = domain_max();
    if (!(u >= lo && u <= hi))
        throw std::domain_error("parameter " + std::to_string(u) + " outside domain [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const int last = static_cast<int>(knots_.size()) - degree_ - 2;
    if (u >= knots_[last]) return last;
    auto it = std::upper_bound(knots_.begin() + degree_, knots_.begin() + last + 1, u);
    return static_cast<int>(it - knots_.begin()) - 1;
}

void basis_span_eval(const KnotVector& kv, int span, double u, double* out) {
    const int p = kv.degree();
    const std::vector<double>& t = kv.knots();
    out[0] = 1.0;
    std::vector<double> left(p + 1), right(p + 1);
    for (int j = 1; j <= p; ++j) {
        left[j] = u - t[span + 1 - j];
        right[j] = t[span + j] - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double temp = out[r] / (right[r + 1] + left[j - r]);
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

double basis_eval(const KnotVector& kv, int i, double u) {
    if (i < 0 || i >= kv.control_count())
        throw std::out_of_range("basis index " + std::to_string(i) + " outside 0.." +
                                std::to_string(kv.control_count() - 1));
    const int p = kv.degree();
    const int span = kv.find_span(u);
    if (i < span - p || i > span) return 0.0;  // outside the active span block
    std::vector<double> vals(p + 1);
    basis_span_eval(kv, span, u, vals.data());
    return vals[i - (span - p)];
}

double greville(const KnotVector& kv, int i) {
    if (i < 0 || i >= kv.control_count())
        throw std::out_of_range("basis index " + std::to_string(i) + " outside 0.." +
                                std::to_string(kv.control_count() - 1));
    const int p = kv.degree();
    const std::vector<double>& t = kv.knots();
    if (p == 0) return 0.5 * (t[i] + t[i + 1]);
    double s = 0.0;
    for (int k = 1; k <= p; ++k) s += t[i + k];
    return s / p;
}

}  // namespace lspia
