#include "lspia/collocation.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "lspia/errors.hpp"

namespace lspia {

bool WeightMatrix::any_empty() const {
    for (std::uint8_t f : empty_group)
        if (f) return true;
    return false;
}

namespace {

void validate_inputs(const BasisSpace& space, const DataSet& data) {
    if (!data.has_params())
        throw ShapeError("assemble: data set has no parameters; run parameterize first");
    if (data.param_dim != space.dim())
        throw ShapeError("assemble: parameter dimensionality " + std::to_string(data.param_dim) +
                         " does not match basis space " + std::to_string(space.dim()));
    if (data.count() == 0) throw DegenerateInput("assemble: empty data set");
    if (!space.evaluable())
        throw ShapeError("assemble: tensor evaluation needs matching u/v control counts");
    for (int j = 0; j < data.count(); ++j)
        if (!space.contains(data.params[j]))
            throw std::domain_error("assemble: parameter of point " + std::to_string(j) +
                                    " outside the basis domain");
}

/// Nonzero basis values per data row. Inputs are prevalidated so the
/// parallel loop cannot throw.
std::vector<std::vector<ActiveBasis>> evaluate_rows(const BasisSpace& space,
                                                    const DataSet& data) {
    const int m1 = data.count();
    std::vector<std::vector<ActiveBasis>> rows(m1);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < m1; ++j) rows[j] = active_basis(space, data.params[j]);
    return rows;
}

}  // namespace

GroupTable build_groups(const BasisSpace& space, const DataSet& data) {
    validate_inputs(space, data);
    const std::vector<std::vector<ActiveBasis>> rows = evaluate_rows(space, data);
    GroupTable groups;
    groups.members.resize(space.total());
    groups.values.resize(space.total());
    for (int j = 0; j < data.count(); ++j)
        for (const ActiveBasis& ab : rows[j]) {
            groups.members[ab.index].push_back(j);
            groups.values[ab.index].push_back(ab.value);
        }
    return groups;
}

Assembly assemble(const BasisSpace& space, const DataSet& data, EmptyGroupPolicy policy) {
    validate_inputs(space, data);
    const int m1 = data.count();
    const long n1 = space.total();
    if (m1 < n1)
        warn("assemble: " + std::to_string(m1) + " data points for " + std::to_string(n1) +
             " control points; the least-squares setting expects at least as many points as "
             "controls");

    const std::vector<std::vector<ActiveBasis>> rows = evaluate_rows(space, data);

    Assembly out;
    CollocationMatrix& A = out.A;
    A.rows = m1;
    A.cols = static_cast<int>(n1);
    A.row_ptr.resize(m1 + 1, 0);
    for (int j = 0; j < m1; ++j) A.row_ptr[j + 1] = A.row_ptr[j] + rows[j].size();
    const long nnz = A.row_ptr[m1];
    A.row_col.resize(nnz);
    A.row_val.resize(nnz);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < m1; ++j) {
        long at = A.row_ptr[j];
        for (const ActiveBasis& ab : rows[j]) {
            A.row_col[at] = static_cast<int>(ab.index);
            A.row_val[at] = ab.value;
            ++at;
        }
    }

    GroupTable& groups = out.groups;
    groups.members.resize(n1);
    groups.values.resize(n1);
    for (int j = 0; j < m1; ++j)
        for (const ActiveBasis& ab : rows[j]) {
            groups.members[ab.index].push_back(j);
            groups.values[ab.index].push_back(ab.value);
        }

    A.col_ptr.resize(n1 + 1, 0);
    for (long i = 0; i < n1; ++i) A.col_ptr[i + 1] = A.col_ptr[i] + groups.members[i].size();
    A.col_row.resize(nnz);
    A.col_val.resize(nnz);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n1; ++i) {
        long at = A.col_ptr[i];
        const std::vector<int>& mem = groups.members[i];
        const std::vector<double>& val = groups.values[i];
        for (std::size_t k = 0; k < mem.size(); ++k) {
            A.col_row[at] = mem[k];
            A.col_val[at] = val[k];
            ++at;
        }
    }

    WeightMatrix& w = out.weights;
    w.d.resize(n1);
    w.column_sum.resize(n1);
    w.empty_group.resize(n1);
    std::vector<long> empties;
    for (long i = 0; i < n1; ++i) {
        const std::vector<double>& val = groups.values[i];
        const double sum = std::accumulate(val.begin(), val.end(), 0.0);
        w.column_sum[i] = sum;
        if (val.empty()) {
            w.empty_group[i] = 1;
            w.d[i] = 1.0;  // placeholder, never used by the iteration
            empties.push_back(i);
        } else {
            w.empty_group[i] = 0;
            w.d[i] = 1.0 / sum;
        }
    }

    if (!empties.empty() && policy == EmptyGroupPolicy::strict) {
        std::string msg = "assemble: empty groups for control indices";
        for (long i : empties) msg += " " + std::to_string(i);
        throw AssemblyError(msg, std::move(empties));
    }
    return out;
}

FitProblem make_problem(BasisSpace space, DataSet data, EmptyGroupPolicy policy) {
    Assembly a = assemble(space, data, policy);
    return FitProblem{std::move(space), std::move(data), std::move(a.A), std::move(a.weights),
                      std::move(a.groups)};
}

}  // namespace lspia
