#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lspia/dataset.hpp"
#include "lspia/oracle.hpp"
#include "lspia/solver.hpp"

namespace lspia::io {

// CSV point files carry a header naming coordinate columns x[,y[,z]] followed
// by optional parameter columns u[,v[,w]]. Numbers are written with 17
// significant digits so values round-trip exactly.

DataSet load_points(const std::string& path);
void save_points(const std::string& path, const DataSet& data);

/// Control-point files: the same CSV shape without parameter columns, rows
/// ordered by flat control index.
Mat load_controls(const std::string& path);
void save_controls(const std::string& path, const Mat& P);

/// Convergence trace: iter,residual_norm,delta_norm,wall_ms.
void save_trace(const std::string& path, const std::vector<TraceRecord>& trace);

struct FitSummary {
    std::string variant;
    std::string termination;
    long iterations = 0;
    double final_residual = 0.0;
    double final_delta = 0.0;
    double alpha = 0.0;  // 0 when not applicable
    double wall_ms = 0.0;
};

void save_summary(const std::string& path, const FitSummary& summary);

/// Diagnostics report: rank/n0/eigenvalue extremes, boolean flags with their
/// numeric evidence, Penrose identity residuals, and optionally the dense
/// reference solution.
void save_report(const std::string& path, const oracle::SpectralReport& spectral,
                 const std::array<double, 4>& penrose_residuals,
                 const oracle::ProjectorReport* projector = nullptr,
                 const Mat* pinv_reference = nullptr);

std::string format_double(double v);  // %.17g

}  // namespace lspia::io
