#pragma once

// Output plumbing for the command-line tool: JSON and CSV emission with a
// fixed precision, byte-deterministic for a given configuration.

#include <string>
#include <vector>

#include <json.hpp>

namespace qcorr::cli {

struct OutputConfig {
    std::string format = "json"; // "json" or "csv"
    int precision = 9;
    std::string out_path; // empty = stdout
};

inline constexpr int kSchemaVersion = 1;

// Rounds to `precision` significant digits (output-side only).
double round_sig(double value, int precision);

// Formats with '%.{precision}g' in the C locale.
std::string format_number(double value, int precision);

// Writes the serialized payload to the configured sink.
void write_output(const std::string& payload, const OutputConfig& cfg);

// Key/value report emitted as a JSON object or a two-column CSV.
class Report {
  public:
    explicit Report(const OutputConfig& cfg);

    void set(const std::string& key, double value);
    void set(const std::string& key, int value);
    void set(const std::string& key, bool value);
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const nlohmann::ordered_json& value);
    // Stores a number list rounded to the configured precision.
    void set_numbers(const std::string& key, const std::vector<double>& values);

    void emit();

  private:
    OutputConfig cfg_;
    nlohmann::ordered_json body_;
};

// Column-oriented table emitted as CSV ('#'-prefixed header comments) or as a
// JSON object with columns/rows.
class Table {
  public:
    Table(const OutputConfig& cfg, std::vector<std::string> columns);

    void add_comment(const std::string& line);
    void add_row(const std::vector<double>& values);
    void add_row_mixed(const std::vector<std::string>& cells);

    void emit();

  private:
    OutputConfig cfg_;
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace qcorr::cli
