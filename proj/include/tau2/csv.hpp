#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace ntw {

// shortest decimal string that parses back to the same double
std::string format_double(double v);
double parse_double(const std::string& s);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    class Row {
    public:
        explicit Row(CsvWriter& w) : w_(w) {}
        Row& operator<<(double v);
        Row& operator<<(std::int64_t v);
        Row& operator<<(int v) { return *this << std::int64_t{v}; }
        Row& operator<<(const std::string& v);
        Row& operator<<(const char* v) { return *this << std::string(v); }
        ~Row();

    private:
        CsvWriter& w_;
        std::string line_;
    };

    // the row is written and flushed when the returned object dies
    Row row() { return Row(*this); }
    std::size_t rows() const { return rows_; }

private:
    void write_line(const std::string& line);
    std::ofstream out_;
    std::size_t rows_ = 0;
};

}  // namespace ntw
