#pragma once

#include <vector>

#include "lspia/space.hpp"
#include "lspia/types.hpp"

namespace lspia {

enum class ParamMode { chord, uniform, given };

/// Fitting inputs: one data point per row of `points`, with an optional
/// parameter per point. param_dim is 0 while unparameterized and matches the
/// basis-space dimensionality afterwards.
struct DataSet {
    Mat points;
    std::vector<ParamPoint> params;
    int param_dim = 0;

    int count() const { return points.rows(); }
    bool has_params() const { return param_dim > 0; }
};

/// Assigns parameters on the domain of `space`.
///
///   chord    1-D only: normalized cumulative chord length.
///   uniform  1-D only: equally spaced over the domain.
///   given    keeps the parameters already present and validates them.
///
/// Throws ShapeError for dimension mismatches, DegenerateInput when the total
/// chord length is zero, std::domain_error for parameters outside the domain.
DataSet parameterize(DataSet data, ParamMode mode, const BasisSpace& space);

}  // namespace lspia
