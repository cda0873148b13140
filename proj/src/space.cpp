#include "lspia/space.hpp"

#include <stdexcept>
#include <string>

#include "lspia/errors.hpp"

namespace lspia {

BasisSpace::BasisSpace(std::vector<KnotVector> directions) : dirs_(std::move(directions)) {
    if (dirs_.empty() || dirs_.size() > 3)
        throw ShapeError("basis space: dimensionality must be 1, 2 or 3");
}

long BasisSpace::total() const {
    long t = 1;
    for (const KnotVector& kv : dirs_) t *= kv.control_count();
    return t;
}

bool BasisSpace::contains(const ParamPoint& t) const {
    for (int d = 0; d < dim(); ++d)
        if (!(t[d] >= dirs_[d].domain_min() && t[d] <= dirs_[d].domain_max())) return false;
    return true;
}

std::array<int, 3> BasisSpace::unflatten_index(long i) const {
    if (i < 0 || i >= total())
        throw std::out_of_range("flat index " + std::to_string(i) + " outside 0.." +
                                std::to_string(total() - 1));
    const int nu = count(0);
    switch (dim()) {
        case 1:
            return {static_cast<int>(i), 0, 0};
        case 2:
            return {static_cast<int>(i / nu), static_cast<int>(i % nu), 0};
        default: {
            const long block = static_cast<long>(nu) * count(1);
            const long r = i % block;
            return {static_cast<int>(r / nu), static_cast<int>(r % nu),
                    static_cast<int>(i / block)};
        }
    }
}

long BasisSpace::flatten_index(const std::array<int, 3>& digits) const {
    const int nu = count(0);
    auto check = [](int value, int radix, const char* name) {
        if (value < 0 || value >= radix)
            throw std::out_of_range(std::string(name) + " digit " + std::to_string(value) +
                                    " outside 0.." + std::to_string(radix - 1));
    };
    switch (dim()) {
        case 1:
            check(digits[0], nu, "u");
            check(digits[1], 1, "v");
            check(digits[2], 1, "w");
            return digits[0];
        case 2:
            check(digits[0], count(1), "u");
            check(digits[1], nu, "v");
            check(digits[2], 1, "w");
            return static_cast<long>(digits[0]) * nu + digits[1];
        default:
            check(digits[0], count(1), "u");
            check(digits[1], nu, "v");
            check(digits[2], count(2), "w");
            return (static_cast<long>(digits[2]) * count(1) + digits[0]) * nu + digits[1];
    }
}

double unified_basis_eval(const BasisSpace& space, long i, const ParamPoint& t) {
    const std::array<int, 3> digits = space.unflatten_index(i);
    double value = 1.0;
    for (int d = 0; d < space.dim(); ++d) value *= basis_eval(space.direction(d), digits[d], t[d]);
    return value;
}

std::vector<ActiveBasis> active_basis(const BasisSpace& space, const ParamPoint& t) {
    if (!space.evaluable())
        throw ShapeError("basis space: tensor evaluation needs matching u/v control counts "
                         "under the flat-index layout");
    const int dim = space.dim();
    int span[3];
    std::vector<double> vals[3];
    for (int d = 0; d < dim; ++d) {
        const KnotVector& kv = space.direction(d);
        span[d] = kv.find_span(t[d]);
        vals[d].resize(kv.degree() + 1);
        basis_span_eval(kv, span[d], t[d], vals[d].data());
    }
    auto first = [&](int d) { return span[d] - space.direction(d).degree(); };

    std::vector<ActiveBasis> out;
    const int nu = space.count(0);
    if (dim == 1) {
        out.reserve(vals[0].size());
        for (std::size_t a = 0; a < vals[0].size(); ++a)
            if (vals[0][a] != 0.0) out.push_back({static_cast<long>(first(0) + a), vals[0][a]});
        return out;
    }
    if (dim == 2) {
        out.reserve(vals[0].size() * vals[1].size());
        for (std::size_t a = 0; a < vals[0].size(); ++a) {
            if (vals[0][a] == 0.0) continue;
            const long base = static_cast<long>(first(0) + a) * nu;
            for (std::size_t b = 0; b < vals[1].size(); ++b) {
                const double v = vals[0][a] * vals[1][b];
                if (v != 0.0) out.push_back({base + first(1) + static_cast<long>(b), v});
            }
        }
        return out;
    }
    const int nv = space.count(1);
    out.reserve(vals[0].size() * vals[1].size() * vals[2].size());
    for (std::size_t c = 0; c < vals[2].size(); ++c) {
        if (vals[2][c] == 0.0) continue;
        for (std::size_t a = 0; a < vals[0].size(); ++a) {
            const double vw = vals[2][c] * vals[0][a];
            if (vw == 0.0) continue;
            const long base =
                (static_cast<long>(first(2) + c) * nv + (first(0) + static_cast<long>(a))) * nu;
            for (std::size_t b = 0; b < vals[1].size(); ++b) {
                const double v = vw * vals[1][b];
                if (v != 0.0) out.push_back({base + first(1) + static_cast<long>(b), v});
            }
        }
    }
    return out;
}

std::vector<double> evaluate_form(const BasisSpace& space, const Mat& P, const ParamPoint& t) {
    if (P.rows() != space.total())
        throw ShapeError("evaluate_form: control matrix has " + std::to_string(P.rows()) +
                         " rows, space expects " + std::to_string(space.total()));
    std::vector<double> point(P.cols(), 0.0);
    for (const ActiveBasis& ab : active_basis(space, t)) {
        const double* row = P.row(static_cast<int>(ab.index));
        for (int c = 0; c < P.cols(); ++c) point[c] += ab.value * row[c];
    }
    return point;
}

ParamPoint greville_param(const BasisSpace& space, long i) {
    if (!space.evaluable())
        throw ShapeError("basis space: Greville parameters need matching u/v control counts");
    const std::array<int, 3> digits = space.unflatten_index(i);
    ParamPoint t{0.0, 0.0, 0.0};
    for (int d = 0; d < space.dim(); ++d) t[d] = greville(space.direction(d), digits[d]);
    return t;
}

}  // namespace lspia
