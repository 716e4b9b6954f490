#include "orthog/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orthog/errors.hpp"

namespace orthog {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double* out) {
    const char* beg = s.data();
    const char* end = beg + s.size();
    while (beg < end && (*beg == ' ' || *beg == '\t')) ++beg;
    auto [ptr, ec] = std::from_chars(beg, end, *out);
    if (ec != std::errc()) return false;
    while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    return ptr == end && beg != end;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_lines(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << body;
    if (!out) throw IoError("write failed for " + path);
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row = split_line(line);
        if (row.size() != table.header.size())
            throw InputError(path + ": row " + std::to_string(table.rows() + 1) +
                             " has " + std::to_string(row.size()) +
                             " cells, header has " +
                             std::to_string(table.header.size()));
        table.cells.push_back(std::move(row));
    }
    return table;
}

bool table_is_numeric(const CsvTable& table) {
    double v;
    for (const auto& row : table.cells)
        for (const std::string& cell : row)
            if (!parse_double(cell, &v)) return false;
    return true;
}

Vector numeric_column(const CsvTable& table, int j) {
    if (j < 0 || j >= table.cols()) throw InputError("column index out of range");
    Vector out(table.rows());
    for (int i = 0; i < table.rows(); ++i)
        if (!parse_double(table.cells[i][j], &out[i]))
            throw InputError("cell (" + std::to_string(i + 1) + ", " +
                             std::to_string(j + 1) + ") is not a number: '" +
                             table.cells[i][j] + "'");
    return out;
}

Matrix read_matrix_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    Matrix m(table.rows(), table.cols());
    for (int i = 0; i < table.rows(); ++i)
        for (int j = 0; j < table.cols(); ++j)
            if (!parse_double(table.cells[i][j], &m(i, j)))
                throw InputError(path + ": cell (" + std::to_string(i + 1) +
                                 ", " + std::to_string(j + 1) +
                                 ") is not a number: '" + table.cells[i][j] + "'");
    return m;
}

Vector read_vector_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    if (table.cols() != 1)
        throw InputError(path + ": expected a single column, found " +
                         std::to_string(table.cols()));
    return numeric_column(table, 0);
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& col_names) {
    if (!col_names.empty() && static_cast<int>(col_names.size()) != m.cols())
        throw InputError("write_matrix_csv: header size differs from columns");
    std::ostringstream body;
    for (int j = 0; j < m.cols(); ++j) {
        if (j) body << ',';
        if (col_names.empty())
            body << 'x' << (j + 1);
        else
            body << col_names[j];
    }
    body << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) body << ',';
            body << format_value(m(i, j));
        }
        body << '\n';
    }
    write_lines(path, body.str());
}

void write_vector_csv(const std::string& path, const Vector& v,
                      const std::string& name) {
    std::ostringstream body;
    body << name << '\n';
    for (double x : v) body << format_value(x) << '\n';
    write_lines(path, body.str());
}

void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::string& name) {
    std::ostringstream body;
    body << name << '\n';
    for (const std::string& s : labels) body << s << '\n';
    write_lines(path, body.str());
}

} // namespace orthog
