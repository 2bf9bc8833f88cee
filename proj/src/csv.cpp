#include "isorec/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "isorec/errors.hpp"

namespace isorec {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

// One record, possibly spanning several physical lines inside quotes.
// Returns false on end of input with nothing read.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no,
                 const std::string& origin) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;

    std::string field;
    bool quoted = false;
    bool any = false;
    for (;; c = in.get()) {
        any = true;
        if (quoted) {
            if (c == EOF) throw ParseError(origin + ": unterminated quoted field");
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field.push_back(static_cast<char>(c));
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            ++line_no;
            break;
        } else if (c == '\n') {
            ++line_no;
            break;
        } else if (c == EOF) {
            break;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing required column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::istream& in, const std::string& origin) {
    CsvTable table;
    std::size_t line_no = 1;

    // tolerate a UTF-8 byte order mark
    if (in.peek() == 0xEF) {
        char bom[3];
        in.read(bom, 3);
        if (in.gcount() != 3 || bom[1] != char(0xBB) || bom[2] != char(0xBF))
            throw ParseError(origin + ": malformed byte order mark");
    }

    if (!read_record(in, table.header, line_no, origin))
        throw ParseError(origin + ": empty input, expected a header row");

    std::vector<std::string> fields;
    while (read_record(in, fields, line_no, origin)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != table.header.size()) {
            throw ParseError(origin + ": row " + std::to_string(table.rows.size() + 1) +
                             " has " + std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(table.header.size()));
        }
        table.rows.push_back(fields);
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return parse_csv(in, path);
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j > 0) out << ',';
        write_field(out, table.header[j]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out << ',';
            write_field(out, row[j]);
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, table);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string format_double(double x) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

double parse_double(const std::string& text, std::size_t row, const std::string& column) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
        throw ParseError("row " + std::to_string(row) + ", column '" + column +
                         "': cannot parse '" + text + "' as a number");
    }
    return value;
}

}  // namespace isorec
