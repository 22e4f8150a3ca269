#include "table.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace xisys::cli {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    os << "#";
    for (const auto& [k, v] : t.meta) os << ' ' << k << '=' << v;
    os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = meta;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return j;
}

void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

}  // namespace

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line) || line.empty() || line[0] != '#')
        throw std::runtime_error("csv: missing metadata line");
    for (const auto& item : split(line.substr(1), ' ')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("csv: bad metadata item " + item);
        t.meta.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
    t.columns = split(line, ',');
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) {
            double v = 0.0;
            const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || p != cell.data() + cell.size())
                throw std::runtime_error("csv: bad number " + cell);
            row.push_back(v);
        }
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace xisys::cli
