#include "tau2/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ntw {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::out | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open " + path);
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) line += (i ? "," : "") + header[i];
    write_line(line);
    rows_ = 0;
}

void CsvWriter::write_line(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
    ++rows_;
}

CsvWriter::Row& CsvWriter::Row::operator<<(double v) {
    line_ += (line_.empty() ? "" : ",") + format_double(v);
    return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::int64_t v) {
    line_ += (line_.empty() ? "" : ",") + std::to_string(v);
    return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(const std::string& v) {
    line_ += (line_.empty() ? "" : ",") + v;
    return *this;
}

CsvWriter::Row::~Row() { w_.write_line(line_); }

}  // namespace ntw
