// Tabular output shared by every command (CSV and JSON)

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qle::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::string title;
    std::vector<std::string> columns;  // "name[unit]"
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

using Params = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal that round-trips to the same double.
std::string format_number(double x);
std::string format_cell(const Cell& c);

// '#'-prefixed title and key=value lines, then a header row and the data.
void write_csv(std::ostream& out, const Table& table, const Params& params);

// {"title": …, "params": {…}, "rows": [{column: value, …}, …]} with numbers
// rendered exactly as in the CSV.
void write_json(std::ostream& out, const Table& table, const Params& params);

} // namespace qle::cli
