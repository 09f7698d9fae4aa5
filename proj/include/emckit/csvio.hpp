#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace emckit {

// Locale-independent CSV emission. Doubles use shortest round-trip decimal
// form so identical values always produce identical bytes.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (emit(first, fields), ...);
        out_ << '\n';
    }

private:
    void emit(bool& first, double v) { sep(first); out_ << format_double(v); }
    void emit(bool& first, int v) { sep(first); out_ << v; }
    void emit(bool& first, std::int64_t v) { sep(first); out_ << v; }
    void emit(bool& first, std::size_t v) { sep(first); out_ << v; }
    void emit(bool& first, bool v) { sep(first); out_ << (v ? 1 : 0); }
    void emit(bool& first, const char* v) { sep(first); out_ << v; }
    void emit(bool& first, const std::string& v) { sep(first); out_ << v; }
    void emit(bool& first, std::string_view v) { sep(first); out_ << v; }

    void sep(bool& first) {
        if (!first) out_ << ',';
        first = false;
    }

    static std::string format_double(double v) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        if (res.ec != std::errc{}) return "nan";
        return std::string(buf, res.ptr);
    }

    std::ostream& out_;
};

} // namespace emckit
