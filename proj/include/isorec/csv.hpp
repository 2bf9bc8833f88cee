#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace isorec {

// Comma-separated, first row is the header, '.' decimal separator. Fields
// containing commas, quotes, or newlines are double-quoted on output and
// unquoted on input.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool has_column(const std::string& name) const;
    // throws ParseError naming the column when absent
    std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in, const std::string& origin);
CsvTable read_csv(const std::string& path);
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

// Shortest decimal form that parses back to the same double (17 significant
// digits at most).
std::string format_double(double x);

// throws ParseError with row/column context on non-numeric input
double parse_double(const std::string& text, std::size_t row, const std::string& column);

}  // namespace isorec
