#include "report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qcorr::cli {

double round_sig(double value, int precision) {
    const std::string s = format_number(value, precision);
    return std::strtod(s.c_str(), nullptr);
}

std::string format_number(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

void write_output(const std::string& payload, const OutputConfig& cfg) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out_path);
    f << payload;
}

Report::Report(const OutputConfig& cfg) : cfg_(cfg) {
    body_["schema_version"] = kSchemaVersion;
}

void Report::set(const std::string& key, double value) {
    body_[key] = round_sig(value, cfg_.precision);
}

void Report::set(const std::string& key, int value) { body_[key] = value; }
void Report::set(const std::string& key, bool value) { body_[key] = value; }
void Report::set(const std::string& key, const std::string& value) { body_[key] = value; }
void Report::set(const std::string& key, const nlohmann::ordered_json& value) {
    body_[key] = value;
}

void Report::set_numbers(const std::string& key, const std::vector<double>& values) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double v : values) arr.push_back(round_sig(v, cfg_.precision));
    body_[key] = arr;
}

void Report::emit() {
    if (cfg_.format == "csv") {
        std::string out = "#key,value\n";
        for (const auto& [key, value] : body_.items())
            out += key + "," + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
        write_output(out, cfg_);
        return;
    }
    write_output(body_.dump(2) + "\n", cfg_);
}

Table::Table(const OutputConfig& cfg, std::vector<std::string> columns)
    : cfg_(cfg), columns_(std::move(columns)) {}

void Table::add_comment(const std::string& line) { comments_.push_back(line); }

void Table::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v, cfg_.precision));
    rows_.push_back(std::move(cells));
}

void Table::add_row_mixed(const std::vector<std::string>& cells) { rows_.push_back(cells); }

void Table::emit() {
    if (cfg_.format == "csv") {
        std::string out;
        for (const std::string& c : comments_) out += "# " + c + "\n";
        out += "#";
        for (size_t i = 0; i < columns_.size(); ++i)
            out += (i ? "," : "") + columns_[i];
        out += "\n";
        for (const auto& row : rows_) {
            for (size_t i = 0; i < row.size(); ++i)
                out += (i ? "," : "") + row[i];
            out += "\n";
        }
        write_output(out, cfg_);
        return;
    }
    nlohmann::ordered_json body;
    body["schema_version"] = kSchemaVersion;
    body["comments"] = comments_;
    body["columns"] = columns_;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const std::string& cell : row) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end && *end == '\0')
                r.push_back(v);
            else
                r.push_back(cell);
        }
        rows.push_back(r);
    }
    body["rows"] = rows;
    write_output(body.dump(2) + "\n", cfg_);
}

} // namespace qcorr::cli
