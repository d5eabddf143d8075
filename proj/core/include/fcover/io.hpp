#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fcover {

/// One output cell: text or number. Numbers print with 17 significant
/// digits, '.' decimal separator, locale independent.
using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string format_number(double v);

std::string to_csv(const Table& t);

/// JSON document {"schema": 1, "columns": [...], "rows": [[...], ...]}.
std::string to_json(const Table& t);

/// Minimal SVG polyline plot of (x, y) series with axes and tick labels.
/// The first line after the header is a fixed version comment.
std::string to_svg_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& x_label, const std::string& y_label);

/// Writes atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fcover
