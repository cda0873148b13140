#pragma once

#include <cstdint>
#include <vector>

#include "lspia/dataset.hpp"

namespace lspia {

/// Per-control-point index groups: members[i] lists the data rows whose
/// parameters fall inside basis i's support (nonzero basis value), values[i]
/// holds the matching basis values. Both are ordered by data row.
struct GroupTable {
    std::vector<std::vector<int>> members;
    std::vector<std::vector<double>> values;

    long group_count() const { return static_cast<long>(members.size()); }
};

/// Sparse collocation matrix A with A(j,i) = B_i(t_j), stored both row-wise
/// (CSR) and column-wise (CSC). The iteration needs fast products with A and
/// with A^T, one per view. Entries are exact-nonzero basis values; zeros
/// produced by the recursion are dropped, not epsilon-pruned.
struct CollocationMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<long> row_ptr;
    std::vector<int> row_col;
    std::vector<double> row_val;
    std::vector<long> col_ptr;
    std::vector<int> col_row;
    std::vector<double> col_val;

    long nnz() const { return static_cast<long>(row_val.size()); }
};

/// Diagonal step weights d_i = 1 / (column sum of A). Indices with an empty
/// group are flagged; their d entry is a placeholder 1 and is never used by
/// the iteration.
struct WeightMatrix {
    std::vector<double> d;
    std::vector<double> column_sum;
    std::vector<std::uint8_t> empty_group;

    long count() const { return static_cast<long>(d.size()); }
    bool any_empty() const;
};

enum class EmptyGroupPolicy { freeze, strict };

struct Assembly {
    CollocationMatrix A;
    WeightMatrix weights;
    GroupTable groups;
};

/// Index groups only (no matrix, no weights).
GroupTable build_groups(const BasisSpace& space, const DataSet& data);

/// Builds A, the weights and the groups in one pass over the data. Requires
/// parameterized data inside the domain. Under the strict policy an empty
/// group raises AssemblyError naming the offending indices; under freeze it
/// is flagged and the corresponding control point will not move. Warns when
/// there are fewer data points than control points.
Assembly assemble(const BasisSpace& space, const DataSet& data,
                  EmptyGroupPolicy policy = EmptyGroupPolicy::freeze);

/// Everything the solver consumes, immutable once assembled.
struct FitProblem {
    BasisSpace space;
    DataSet data;
    CollocationMatrix A;
    WeightMatrix weights;
    GroupTable groups;
};

FitProblem make_problem(BasisSpace space, DataSet data,
                        EmptyGroupPolicy policy = EmptyGroupPolicy::freeze);

}  // namespace lspia
