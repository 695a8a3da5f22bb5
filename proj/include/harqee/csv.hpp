#pragma once

// Minimal CSV emission: ',' separator, '\n' line endings, '.' decimal point and
// 12 significant digits, so identical inputs give byte-identical files.

#include <iosfwd>
#include <string>
#include <vector>

namespace harqee {

/// printf("%.12g") formatting, independent of the global locale.
std::string format_number(double value);

/// Fixed-point formatting with `digits` decimals.
std::string format_fixed(double value, int digits);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }

    /// Appends a row; its length must match the header.
    void add_row(std::vector<std::string> row);
    void append(const CsvTable& other);

    void write(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace harqee
