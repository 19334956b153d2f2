#include "dispersion/csv.hpp"

#include "dispersion/error.hpp"

#include <charconv>
#include <sstream>

namespace dispersion::csv {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string write_columns(std::initializer_list<std::string_view> header,
                          std::initializer_list<const Eigen::VectorXd*> columns)
{
    if (header.size() != columns.size())
        throw ValidationError("csv header and column count differ");
    Eigen::Index rows = columns.size() ? (*columns.begin())->size() : 0;
    for (const auto* c : columns)
        if (c->size() != rows)
            throw ValidationError("csv columns have different lengths");

    std::string out;
    bool first = true;
    for (auto h : header) {
        if (!first)
            out += ',';
        out += h;
        first = false;
    }
    out += '\n';
    for (Eigen::Index r = 0; r < rows; ++r) {
        first = true;
        for (const auto* c : columns) {
            if (!first)
                out += ',';
            out += format_double((*c)[r]);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string write_column(std::string_view header, const std::vector<double>& values)
{
    std::string out(header);
    out += '\n';
    for (double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

Table parse(const std::string& text)
{
    Table t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        return t;
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');)
        t.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::istringstream rs(line);
        for (std::string cell; std::getline(rs, cell, ',');) {
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc())
                throw ValidationError("malformed csv cell '" + cell + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace dispersion::csv
