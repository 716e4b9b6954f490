#ifndef ORTHOG_CSV_HPP
#define ORTHOG_CSV_HPP

#include <string>
#include <vector>

#include "orthog/matrix.hpp"

namespace orthog {

/// Raw CSV contents: one header row, then string cells. No quoting; values
/// must not contain commas or newlines.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
    int rows() const { return static_cast<int>(cells.size()); }
    int cols() const { return static_cast<int>(header.size()); }
};

CsvTable read_csv(const std::string& path);

/// Numeric parse of a full table; throws InputError naming the bad cell.
Matrix read_matrix_csv(const std::string& path);

/// Single-column numeric file.
Vector read_vector_csv(const std::string& path);

/// Values are written with 17 significant digits, which round-trips doubles
/// exactly; default column names are x1..xp.
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& col_names = {});

void write_vector_csv(const std::string& path, const Vector& v,
                      const std::string& name);

void write_labels_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const std::string& name);

/// True when every cell of the table parses as a double.
bool table_is_numeric(const CsvTable& table);

/// Column j of a table as doubles; throws InputError on a bad cell.
Vector numeric_column(const CsvTable& table, int j);

} // namespace orthog

#endif
