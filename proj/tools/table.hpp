#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace xisys::cli {

// Column-major numeric table with run metadata. CSV output writes the metadata as a
// single "# key=value ..." line followed by a header row and 17-digit values.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
nlohmann::ordered_json to_json(const Table& t);

// Inverse of write_csv. Throws std::runtime_error on malformed input.
Table read_csv(std::istream& is);

// "%.17g"
std::string format_double(double x);

}  // namespace xisys::cli
