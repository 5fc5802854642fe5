#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace plsmode {

// Locale-independent formatting with 12 significant digits.
inline std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using CsvField = std::variant<std::string, double, long>;

// Minimal CSV emitter: '#'-prefixed provenance comments, one header row,
// records in grid order, LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void header(std::span<const std::string> names) {
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i ? "," : "") << names[i];
        out_ << "\n";
    }

    void row(std::span<const CsvField> fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ",";
            if (const auto* s = std::get_if<std::string>(&fields[i]))
                out_ << *s;
            else if (const auto* d = std::get_if<double>(&fields[i]))
                out_ << format_number(*d);
            else
                out_ << std::get<long>(fields[i]);
        }
        out_ << "\n";
    }

private:
    std::ostream& out_;
};

}  // namespace plsmode
