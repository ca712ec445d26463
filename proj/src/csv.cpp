#include <filesystem>
#include <fstream>
#include <sstream>

#include "omsent/errors.hpp"
#include "omsent/run.hpp"

namespace omsent {

std::size_t CsvTable::column(const std::string& name, const std::string& source) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw IoError(source, "missing column '" + name + "'");
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(trim(cell));
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw IoError(source, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(table.header.size()) + " columns");
        }
        std::vector<double> values;
        for (const auto& c : cells) {
            auto v = parse_real(c);
            if (!v) throw IoError(source, "line " + std::to_string(line_no) + ": bad number '" + c + "'");
            values.push_back(*v);
        }
        table.rows.push_back(std::move(values));
    }
    if (table.header.empty()) throw IoError(source, "no header row");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::error_code ec;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

}  // namespace omsent
