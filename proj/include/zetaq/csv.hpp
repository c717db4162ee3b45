// Deterministic CSV emission: header row, LF line endings, '.' decimal
// separator, doubles at 17 significant digits so a round-trip parse is
// lossless. Identical inputs produce byte-identical files.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetaq::csv {

// 17 significant digits, locale-independent.
inline std::string cell(double value) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string cell(long long value) { return std::to_string(value); }
inline std::string cell(int value) { return std::to_string(value); }
inline std::string cell(std::size_t value) { return std::to_string(value); }

// Minimal RFC-4180 quoting for text cells.
inline std::string cell(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
        if (columns_.empty()) throw std::invalid_argument("csv::Table: need at least one column");
    }

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    void push_row(std::vector<std::string> row) {
        if (row.size() != columns_.size())
            throw std::invalid_argument("csv::Table: row arity " + std::to_string(row.size()) +
                                        " does not match schema arity " +
                                        std::to_string(columns_.size()));
        rows_.push_back(std::move(row));
    }

    std::string to_string() const {
        std::string out = join(columns_);
        for (const auto& row : rows_) out += join(row);
        return out;
    }

    void write(std::ostream& os) const { os << to_string(); }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("csv::Table: cannot write '" + path + "'");
        out << to_string();
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cell(cells[i]);
        }
        line += '\n';
        return line;
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace zetaq::csv
