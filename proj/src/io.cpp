#include "lspia/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lspia/errors.hpp"

namespace lspia::io {

namespace {

using json = nlohmann::ordered_json;

const char* kCoordNames[3] = {"x", "y", "z"};
const char* kParamNames[3] = {"u", "v", "w"};

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, const std::string& path, long line_no) {
    if (field.empty()) throw ParseError(path, line_no, "empty field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        throw ParseError(path, line_no, "not a number: '" + field + "'");
    return v;
}

/// Counts the coordinate and parameter columns of a point-file header, or
/// throws. Accepted shapes: x[,y[,z]] then optionally u[,v[,w]].
std::pair<int, int> parse_header(const std::vector<std::string>& fields, const std::string& path,
                                 bool allow_params) {
    std::size_t at = 0;
    int coords = 0;
    while (at < fields.size() && coords < 3 && fields[at] == kCoordNames[coords]) {
        ++at;
        ++coords;
    }
    int params = 0;
    if (allow_params)
        while (at < fields.size() && params < 3 && fields[at] == kParamNames[params]) {
            ++at;
            ++params;
        }
    if (coords == 0 || at != fields.size())
        throw ParseError(path, 1,
                         "bad header; expected x[,y[,z]]" +
                             std::string(allow_params ? "[,u[,v[,w]]]" : "") + " columns");
    return {coords, params};
}

struct Table {
    int coords = 0;
    int params = 0;
    std::vector<std::vector<double>> rows;
};

Table load_table(const std::string& path, bool allow_params) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Table table;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::vector<std::string> fields = split_csv(stripped);
        if (!have_header) {
            const auto [coords, params] = parse_header(fields, path, allow_params);
            table.coords = coords;
            table.params = params;
            have_header = true;
            continue;
        }
        const std::size_t expected = static_cast<std::size_t>(table.coords + table.params);
        if (fields.size() != expected)
            throw ParseError(path, line_no,
                             "expected " + std::to_string(expected) + " fields, got " +
                                 std::to_string(fields.size()));
        std::vector<double> row(expected);
        for (std::size_t c = 0; c < expected; ++c) row[c] = parse_number(fields[c], path, line_no);
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError(path, 1, "empty file");
    if (table.rows.empty()) throw ParseError(path, line_no, "no data rows");
    return table;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << contents;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DataSet load_points(const std::string& path) {
    const Table table = load_table(path, true);
    DataSet data;
    data.param_dim = table.params;
    data.points = Mat(static_cast<int>(table.rows.size()), table.coords);
    if (table.params > 0) data.params.resize(table.rows.size(), ParamPoint{0.0, 0.0, 0.0});
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
        for (int c = 0; c < table.coords; ++c)
            data.points(static_cast<int>(j), c) = table.rows[j][c];
        for (int d = 0; d < table.params; ++d) data.params[j][d] = table.rows[j][table.coords + d];
    }
    return data;
}

void save_points(const std::string& path, const DataSet& data) {
    std::ostringstream out;
    for (int c = 0; c < data.points.cols(); ++c) out << (c ? "," : "") << kCoordNames[c];
    for (int d = 0; d < data.param_dim; ++d) out << "," << kParamNames[d];
    out << "\n";
    for (int j = 0; j < data.count(); ++j) {
        for (int c = 0; c < data.points.cols(); ++c)
            out << (c ? "," : "") << format_double(data.points(j, c));
        for (int d = 0; d < data.param_dim; ++d) out << "," << format_double(data.params[j][d]);
        out << "\n";
    }
    write_file(path, out.str());
}

Mat load_controls(const std::string& path) {
    const Table table = load_table(path, false);
    Mat P(static_cast<int>(table.rows.size()), table.coords);
    for (std::size_t j = 0; j < table.rows.size(); ++j)
        for (int c = 0; c < table.coords; ++c) P(static_cast<int>(j), c) = table.rows[j][c];
    return P;
}

void save_controls(const std::string& path, const Mat& P) {
    std::ostringstream out;
    for (int c = 0; c < P.cols(); ++c) out << (c ? "," : "") << kCoordNames[c];
    out << "\n";
    for (int j = 0; j < P.rows(); ++j) {
        for (int c = 0; c < P.cols(); ++c) out << (c ? "," : "") << format_double(P(j, c));
        out << "\n";
    }
    write_file(path, out.str());
}

void save_trace(const std::string& path, const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    out << "iter,residual_norm,delta_norm,wall_ms\n";
    char wall[32];
    for (const TraceRecord& r : trace) {
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
        out << r.iter << "," << format_double(r.residual_norm) << ","
            << format_double(r.delta_norm) << "," << wall << "\n";
    }
    write_file(path, out.str());
}

void save_summary(const std::string& path, const FitSummary& summary) {
    json j;
    j["variant"] = summary.variant;
    j["termination"] = summary.termination;
    j["iterations"] = summary.iterations;
    j["final_residual"] = summary.final_residual;
    j["final_delta"] = summary.final_delta;
    j["alpha"] = summary.alpha;
    j["wall_ms"] = summary.wall_ms;
    write_file(path, j.dump(2) + "\n");
}

void save_report(const std::string& path, const oracle::SpectralReport& spectral,
                 const std::array<double, 4>& penrose_residuals,
                 const oracle::ProjectorReport* projector, const Mat* pinv_reference) {
    json j;
    j["rank"] = spectral.rank_ata;
    j["n0"] = spectral.n0;
    j["eig_min"] = spectral.eig_min;
    j["eig_max"] = spectral.eig_max;
    j["max_imag"] = spectral.max_imag;
    j["flags"] = {
        {"real_01", spectral.flag_real && spectral.flag_range},
        {"zero_count", spectral.flag_zero_count},
        {"rank_match", spectral.flag_rank_match},
    };
    j["evidence"] = {
        {"size", spectral.size},
        {"rank_weighted", spectral.rank_weighted},
        {"zero_count", spectral.zero_count},
        {"zero_tol", spectral.zero_tol},
    };
    j["penrose_residuals"] = penrose_residuals;
    if (projector) {
        j["projector"] = {
            {"trace", projector->trace},
            {"idempotency_residual", projector->idempotency_residual},
            {"symmetry_residual", projector->symmetry_residual},
            {"eigenvalue_deviation", projector->eigenvalue_deviation},
            {"ones_count", projector->ones_count},
        };
    }
    if (pinv_reference) {
        json rows = json::array();
        for (int i = 0; i < pinv_reference->rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < pinv_reference->cols(); ++c) row.push_back((*pinv_reference)(i, c));
            rows.push_back(std::move(row));
        }
        j["pinv_solution"] = std::move(rows);
    }
    write_file(path, j.dump(2) + "\n");
}

}  // namespace lspia::io
