// csv.hpp — Deterministic CSV output with '#'-prefixed metadata lines

#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polariton {

// Shortest representation that parses back to the same double.
std::string format_double(double value);

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void comment(std::string_view text);
    void meta(std::string_view key, std::string_view value);
    void header(std::span<const std::string> columns);
    void header(std::initializer_list<std::string_view> columns);
    void row(std::span<const double> values);
    void row(std::initializer_list<double> values);
    // Mixed row of preformatted cells.
    void raw_row(std::span<const std::string> cells);

private:
    std::ofstream out_;
    std::size_t columns_{0};
};

}  // namespace polariton
