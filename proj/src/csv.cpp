#include "harqee/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace harqee {

namespace {

// Quotes a field that would otherwise break the row structure.
std::string escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string printf_double(const char* format, int precision, double value)
{
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, format, precision, value);
    std::string s(buf, static_cast<std::size_t>(n > 0 ? n : 0));
    // snprintf honours LC_NUMERIC; the output contract is '.'
    for (char& c : s)
        if (c == ',') c = '.';
    return s;
}

}  // namespace

std::string format_number(double value)
{
    return printf_double("%.*g", 12, value);
}

std::string format_fixed(double value, int digits)
{
    return printf_double("%.*f", digits, value);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header))
{
}

void CsvTable::add_row(std::vector<std::string> row)
{
    if (row.size() != header_.size()) throw std::logic_error("csv: row width does not match header");
    rows_.push_back(std::move(row));
}

void CsvTable::append(const CsvTable& other)
{
    if (other.header_ != header_) throw std::logic_error("csv: cannot append tables with different headers");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void CsvTable::write(std::ostream& out) const
{
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << escape(fields[i]);
        }
        out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
}

}  // namespace harqee
