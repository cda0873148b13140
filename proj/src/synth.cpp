#include "lspia/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lspia/errors.hpp"

namespace lspia::synth {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double bump(double x) { return 4.0 * x * (1.0 - x); }  // quadratic bump, 0 at the ends

double grid_coord(int j, int count) {
    return count == 1 ? 0.5 : static_cast<double>(j) / (count - 1);
}

void validate_common(const SyntheticSpec& spec) {
    if (spec.dim < 1 || spec.dim > 3)
        throw ShapeError("synthesize: parameter dimensionality must be 1, 2 or 3");
    if (spec.data_dim < 1 || spec.data_dim > 3)
        throw ShapeError("synthesize: data dimensionality must be 1, 2 or 3");
    if (spec.noise < 0.0) throw ShapeError("synthesize: negative noise amplitude");
}

int base_dim(const SyntheticSpec& spec) {
    switch (spec.kind) {
        case Kind::curve_samples: return 1;
        case Kind::grid_samples: return 2;
        case Kind::solid_samples: return 3;
        default: return spec.dim;
    }
}

std::vector<ParamPoint> grid_params(const SyntheticSpec& spec, int dim) {
    for (int d = 0; d < dim; ++d)
        if (spec.samples[d] < 1)
            throw ShapeError("synthesize: need at least one sample per direction");
    std::vector<ParamPoint> params;
    const int mu = spec.samples[0];
    const int mv = dim > 1 ? spec.samples[1] : 1;
    const int mw = dim > 2 ? spec.samples[2] : 1;
    params.reserve(static_cast<std::size_t>(mu) * mv * mw);
    for (int a = 0; a < mu; ++a)
        for (int b = 0; b < mv; ++b)
            for (int c = 0; c < mw; ++c) {
                ParamPoint t{grid_coord(a, mu), 0.0, 0.0};
                if (dim > 1) t[1] = grid_coord(b, mv);
                if (dim > 2) t[2] = grid_coord(c, mw);
                params.push_back(t);
            }
    return params;
}

std::vector<ParamPoint> clustered_params(const SyntheticSpec& spec) {
    if (spec.distinct < 1) throw ShapeError("synthesize: need at least one distinct parameter");
    if (spec.multiplicity < 1) throw ShapeError("synthesize: multiplicity must be positive");
    std::vector<double> values(spec.distinct);
    for (int i = 0; i < spec.distinct; ++i) values[i] = grid_coord(i, spec.distinct);

    std::vector<ParamPoint> distinct;
    const int dv = spec.dim > 1 ? spec.distinct : 1;
    const int dw = spec.dim > 2 ? spec.distinct : 1;
    for (int a = 0; a < spec.distinct; ++a)
        for (int b = 0; b < dv; ++b)
            for (int c = 0; c < dw; ++c) {
                ParamPoint t{values[a], 0.0, 0.0};
                if (spec.dim > 1) t[1] = values[b];
                if (spec.dim > 2) t[2] = values[c];
                distinct.push_back(t);
            }

    std::vector<ParamPoint> params;
    params.reserve(distinct.size() * spec.multiplicity);
    for (const ParamPoint& t : distinct)
        for (int r = 0; r < spec.multiplicity; ++r) params.push_back(t);
    return params;
}

std::vector<ParamPoint> punch_hole(std::vector<ParamPoint> params, const SyntheticSpec& spec) {
    bool covers_domain = true;
    for (int d = 0; d < spec.dim; ++d) {
        const Interval& h = spec.hole[d];
        if (!(h.lo < h.hi))
            throw ShapeError("synthesize: hole interval " + std::to_string(d) + " is empty");
        covers_domain = covers_domain && h.lo <= 0.0 && h.hi >= 1.0;
    }
    if (covers_domain) throw DegenerateInput("synthesize: hole covers the whole domain");

    std::vector<ParamPoint> kept;
    kept.reserve(params.size());
    for (const ParamPoint& t : params) {
        bool inside = true;
        for (int d = 0; d < spec.dim; ++d)
            inside = inside && t[d] > spec.hole[d].lo && t[d] < spec.hole[d].hi;
        if (!inside) kept.push_back(t);
    }
    if (kept.empty()) throw DegenerateInput("synthesize: hole removed every sample");
    return kept;
}

}  // namespace

std::array<double, 3> field_value(int dim, int data_dim, const ParamPoint& t) {
    std::array<double, 3> full{0.0, 0.0, 0.0};
    const double u = t[0], v = t[1], w = t[2];
    switch (dim) {
        case 1:
            full = {u, 0.4 * std::sin(kTau * u), 0.4 * std::cos(kTau * u)};
            break;
        case 2:
            // height field representable exactly by any basis of degree >= 2
            full = {u, v, bump(u) * bump(v) * 0.25};
            break;
        default:
            // gently warped identity map with a small non-polynomial ripple
            full = {u + 0.05 * bump(v) * bump(w) + 0.002 * std::sin(kTau * u),
                    v + 0.05 * bump(w) * bump(u) + 0.002 * std::sin(kTau * v),
                    w + 0.05 * bump(u) * bump(v) + 0.002 * std::sin(kTau * w)};
            break;
    }
    for (int c = data_dim; c < 3; ++c) full[c] = 0.0;
    return full;
}

DataSet synthesize(const SyntheticSpec& spec) {
    validate_common(spec);
    const int dim = base_dim(spec);

    std::vector<ParamPoint> params;
    switch (spec.kind) {
        case Kind::curve_samples:
        case Kind::grid_samples:
        case Kind::solid_samples:
            params = grid_params(spec, dim);
            break;
        case Kind::hole_punched:
            params = punch_hole(grid_params(spec, dim), spec);
            break;
        case Kind::clustered_params:
            params = clustered_params(spec);
            break;
    }

    DataSet data;
    data.param_dim = dim;
    data.params = params;
    data.points = Mat(static_cast<int>(params.size()), spec.data_dim);

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> offset(-spec.noise, spec.noise);
    for (std::size_t j = 0; j < params.size(); ++j) {
        const std::array<double, 3> p = field_value(dim, spec.data_dim, params[j]);
        for (int c = 0; c < spec.data_dim; ++c) {
            double value = p[c];
            if (spec.noise > 0.0) value += offset(rng);
            data.points(static_cast<int>(j), c) = value;
        }
    }
    return data;
}

}  // namespace lspia::synth
