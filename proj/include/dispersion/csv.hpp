#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dispersion::csv {

// 17 significant digits, independent of the global locale.
std::string format_double(double x);

// One header line, then one row per index across equally sized columns.
std::string write_columns(std::initializer_list<std::string_view> header,
                          std::initializer_list<const Eigen::VectorXd*> columns);

std::string write_column(std::string_view header, const std::vector<double>& values);

// Minimal reader for files this module writes.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table parse(const std::string& text);

} // namespace dispersion::csv
