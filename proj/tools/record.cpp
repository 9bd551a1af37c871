#include "record.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mobcone_cli {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("record: malformed number: " + s);
    return v;
}

void emit_pairs(std::ostringstream& os, const char* tag,
                const std::vector<std::pair<std::string, std::string>>& pairs) {
    for (const auto& [k, v] : pairs) os << tag << " " << k << " = " << v << "\n";
}

}  // namespace

void OutputRecord::add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}
void OutputRecord::add_param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
}
void OutputRecord::add_param(const std::string& key, int value) {
    params.emplace_back(key, std::to_string(value));
}
void OutputRecord::add_result(const std::string& key, const std::string& value) {
    results.emplace_back(key, value);
}
void OutputRecord::add_result(const std::string& key, double value) {
    results.emplace_back(key, format_double(value));
}
void OutputRecord::add_diagnostic(const std::string& key, const std::string& value) {
    diagnostics.emplace_back(key, value);
}
void OutputRecord::add_diagnostic(const std::string& key, double value) {
    diagnostics.emplace_back(key, format_double(value));
}

std::string OutputRecord::to_text() const {
    std::ostringstream os;
    os << "record mobcone/1\n";
    os << "command: " << command << "\n";
    os << "version: " << version << "\n";
    emit_pairs(os, "param", params);
    emit_pairs(os, "result", results);
    emit_pairs(os, "diag", diagnostics);
    for (const auto& t : tables) {
        os << "table " << t.name << "\n";
        os << "cols";
        for (const auto& c : t.columns) os << " " << c;
        os << "\n";
        for (const auto& row : t.rows) {
            os << "row";
            for (double v : row) os << " " << format_double(v);
            os << "\n";
        }
        os << "end table\n";
    }
    os << "end record\n";
    return os.str();
}

std::string OutputRecord::to_csv() const {
    std::ostringstream os;
    os << "key,value\n";
    os << "command," << command << "\n";
    os << "version," << version << "\n";
    for (const auto& [k, v] : params) os << "param." << k << "," << v << "\n";
    for (const auto& [k, v] : results) os << "result." << k << "," << v << "\n";
    for (const auto& [k, v] : diagnostics) os << "diag." << k << "," << v << "\n";
    for (const auto& t : tables) {
        os << "\n# table " << t.name << "\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << (c ? "," : "") << t.columns[c];
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
            os << "\n";
        }
    }
    return os.str();
}

OutputRecord OutputRecord::parse(const std::string& text) {
    OutputRecord rec;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "record mobcone/1")
        throw std::runtime_error("record: missing header");
    bool in_table = false;
    bool ended = false;
    Table current;
    auto split_kv = [](const std::string& body) {
        auto eq = body.find(" = ");
        if (eq == std::string::npos) throw std::runtime_error("record: malformed pair: " + body);
        return std::make_pair(body.substr(0, eq), body.substr(eq + 3));
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (ended) throw std::runtime_error("record: content after the terminator");
        if (in_table) {
            if (line == "end table") {
                rec.tables.push_back(current);
                current = Table{};
                in_table = false;
            } else if (line.rfind("cols ", 0) == 0) {
                std::istringstream ls(line.substr(5));
                std::string col;
                while (ls >> col) current.columns.push_back(col);
            } else if (line.rfind("row ", 0) == 0) {
                std::istringstream ls(line.substr(4));
                std::string cell;
                std::vector<double> row;
                while (ls >> cell) row.push_back(parse_double(cell));
                if (row.size() != current.columns.size())
                    throw std::runtime_error("record: row width mismatch");
                current.rows.push_back(std::move(row));
            } else {
                throw std::runtime_error("record: unexpected table line: " + line);
            }
            continue;
        }
        if (line.rfind("command: ", 0) == 0)
            rec.command = line.substr(9);
        else if (line.rfind("version: ", 0) == 0)
            rec.version = line.substr(9);
        else if (line.rfind("param ", 0) == 0)
            rec.params.push_back(split_kv(line.substr(6)));
        else if (line.rfind("result ", 0) == 0)
            rec.results.push_back(split_kv(line.substr(7)));
        else if (line.rfind("diag ", 0) == 0)
            rec.diagnostics.push_back(split_kv(line.substr(5)));
        else if (line.rfind("table ", 0) == 0) {
            in_table = true;
            current.name = line.substr(6);
        } else if (line == "end record")
            ended = true;
        else
            throw std::runtime_error("record: unexpected line: " + line);
    }
    if (!ended) throw std::runtime_error("record: missing terminator");
    return rec;
}

}  // namespace mobcone_cli
