#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <vector>

namespace lspia {

/// Dense row-major matrix of doubles. Rows index points (data or control),
/// columns index spatial coordinates.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols),
          v_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return v_.empty(); }
    std::size_t size() const { return v_.size(); }

    double& operator()(int r, int c) { return v_[idx(r, c)]; }
    double operator()(int r, int c) const { return v_[idx(r, c)]; }

    double* row(int r) { return v_.data() + static_cast<std::size_t>(r) * cols_; }
    const double* row(int r) const { return v_.data() + static_cast<std::size_t>(r) * cols_; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    std::size_t idx(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> v_;
};

/// Parameter location. Only the first `dim` coordinates of the surrounding
/// context (basis space or data set) are meaningful; the rest stay zero.
using ParamPoint = std::array<double, 3>;

}  // namespace lspia
