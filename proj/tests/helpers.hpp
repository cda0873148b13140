#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lspia/collocation.hpp"
#include "lspia/solver.hpp"
#include "lspia/synth.hpp"

namespace testutil {

using namespace lspia;

inline double max_abs_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

inline bool exactly_equal(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a(r, c) != b(r, c)) return false;
    return true;
}

inline Mat random_mat(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

/// Cubic-curve problem with uniform parameters (full rank for m1 >= controls).
inline FitProblem curve_problem(int controls, int m1, int degree = 3, double noise = 0.0,
                                std::uint64_t seed = 7) {
    synth::SyntheticSpec spec;
    spec.kind = synth::Kind::curve_samples;
    spec.samples = {m1, 0, 0};
    spec.noise = noise;
    spec.seed = seed;
    DataSet data = synth::synthesize(spec);
    BasisSpace space({KnotVector::clamped_uniform(controls, degree)});
    data = parameterize(std::move(data), ParamMode::given, space);
    return make_problem(std::move(space), std::move(data));
}

/// Rank-deficient curve problem: `distinct` distinct parameters, each
/// repeated `multiplicity` times.
inline FitProblem clustered_problem(int controls, int distinct, int multiplicity,
                                    int degree = 3, double noise = 0.0,
                                    std::uint64_t seed = 7) {
    synth::SyntheticSpec spec;
    spec.kind = synth::Kind::clustered_params;
    spec.dim = 1;
    spec.distinct = distinct;
    spec.multiplicity = multiplicity;
    spec.noise = noise;
    spec.seed = seed;
    DataSet data = synth::synthesize(spec);
    BasisSpace space({KnotVector::clamped_uniform(controls, degree)});
    data = parameterize(std::move(data), ParamMode::given, space);
    return make_problem(std::move(space), std::move(data));
}

/// 1-D system with two data points sharing one parameter: A = [[.5,.5],[.5,.5]]
/// when built on a 2-control linear basis at u = 0.5 with values y0, y1.
inline FitProblem coincident_pair_problem(double y0, double y1) {
    DataSet data;
    data.points = Mat(2, 1);
    data.points(0, 0) = y0;
    data.points(1, 0) = y1;
    data.params = {ParamPoint{0.5, 0.0, 0.0}, ParamPoint{0.5, 0.0, 0.0}};
    data.param_dim = 1;
    BasisSpace space({KnotVector::clamped_uniform(2, 1)});
    return make_problem(std::move(space), std::move(data));
}

}  // namespace testutil
