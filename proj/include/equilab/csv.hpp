#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace equilab::csv {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline std::string escape_cell(const std::string& cell) {
    bool needs_quotes = false;
    for (char ch : cell) {
        if (ch == ',' || ch == '"' || ch == '\r' || ch == '\n') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// Rows end in CRLF per RFC 4180.
class Writer {
  public:
    explicit Writer(std::ostream& os) : os_(os) {}

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) os_ << ',';
            os_ << escape_cell(cells[i]);
        }
        os_ << "\r\n";
    }

  private:
    std::ostream& os_;
};

}  // namespace equilab::csv
