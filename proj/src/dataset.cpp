#include "lspia/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lspia/errors.hpp"

namespace lspia {

namespace {

double point_distance(const Mat& pts, int a, int b) {
    double s = 0.0;
    for (int c = 0; c < pts.cols(); ++c) {
        const double d = pts(a, c) - pts(b, c);
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

DataSet parameterize(DataSet data, ParamMode mode, const BasisSpace& space) {
    const int m1 = data.count();
    if (m1 == 0) throw DegenerateInput("parameterize: empty data set");

    if (mode == ParamMode::given) {
        if (!data.has_params())
            throw ShapeError("parameterize: given mode needs parameters in the data set");
        if (data.param_dim != space.dim())
            throw ShapeError("parameterize: parameter dimensionality " +
                             std::to_string(data.param_dim) + " does not match basis space " +
                             std::to_string(space.dim()));
        for (int j = 0; j < m1; ++j)
            for (int d = 0; d < space.dim(); ++d) {
                const double t = data.params[j][d];
                if (!(t >= space.direction(d).domain_min() &&
                      t <= space.direction(d).domain_max()))
                    throw std::domain_error("parameterize: parameter " + std::to_string(t) +
                                            " of point " + std::to_string(j) +
                                            " outside the basis domain");
            }
        return data;
    }

    if (space.dim() != 1)
        throw ShapeError("parameterize: chord/uniform modes assign 1-D parameters only");
    const double lo = space.direction(0).domain_min();
    const double hi = space.direction(0).domain_max();

    data.params.assign(m1, ParamPoint{0.0, 0.0, 0.0});
    data.param_dim = 1;

    if (mode == ParamMode::uniform) {
        for (int j = 0; j < m1; ++j)
            data.params[j][0] = m1 == 1 ? lo : lo + (hi - lo) * j / (m1 - 1);
        return data;
    }

    // chord: normalized cumulative chord length
    std::vector<double> cum(m1, 0.0);
    for (int j = 1; j < m1; ++j) cum[j] = cum[j - 1] + point_distance(data.points, j, j - 1);
    const double total = cum[m1 - 1];
    if (total == 0.0)
        throw DegenerateInput("parameterize: zero total chord length (coincident points)");
    for (int j = 0; j < m1; ++j) data.params[j][0] = lo + (hi - lo) * cum[j] / total;
    return data;
}

}  // namespace lspia
