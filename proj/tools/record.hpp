#pragma once

#include <string>
#include <vector>

namespace mobcone_cli {

/// One machine-readable result document: the command echo, its parameters,
/// scalar results, diagnostics, and any number of named tables. Serializes
/// to a structured-text document (default) or to CSV, and the structured
/// form parses back losslessly.
struct OutputRecord {
    std::string command;
    std::string version;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<std::pair<std::string, std::string>> diagnostics;

    struct Table {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
    };
    std::vector<Table> tables;

    void add_param(const std::string& key, const std::string& value);
    void add_param(const std::string& key, double value);
    void add_param(const std::string& key, int value);
    void add_result(const std::string& key, const std::string& value);
    void add_result(const std::string& key, double value);
    void add_diagnostic(const std::string& key, const std::string& value);
    void add_diagnostic(const std::string& key, double value);

    std::string to_text() const;
    std::string to_csv() const;

    static OutputRecord parse(const std::string& text);  // throws on malformed input
};

std::string format_double(double x);  // round-trip-exact %.17g

}  // namespace mobcone_cli
