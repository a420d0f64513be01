#include "qle/cli/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qle::cli {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

namespace {

std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    std::array<char, 8> esc{};
                    std::snprintf(esc.data(), esc.size(), "\\u%04x", static_cast<unsigned>(ch));
                    out += esc.data();
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

std::string json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return json_string(format_number(*d));
        return format_number(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return json_string(std::get<std::string>(c));
}

} // namespace

void write_csv(std::ostream& out, const Table& table, const Params& params) {
    out << "# " << table.title << '\n';
    for (const auto& [k, v] : params) out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table, const Params& params) {
    out << "{\"title\":" << json_string(table.title) << ",\"params\":{";
    for (std::size_t i = 0; i < params.size(); ++i) {
        out << (i ? "," : "") << json_string(params[i].first) << ':' << json_string(params[i].second);
    }
    out << "},\"columns\":[";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << json_string(table.columns[i]);
    out << "],\"rows\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r ? ",\n" : "\n") << '{';
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << json_string(table.columns[i]) << ':' << json_cell(row[i]);
        }
        out << '}';
    }
    out << "\n]}\n";
}

} // namespace qle::cli
