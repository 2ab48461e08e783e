#ifndef MORSE_IO_HPP
#define MORSE_IO_HPP

// Artifact serialization: a small column table that renders to RFC-4180
// CSV (meta as '#' comment lines before the header) or to a JSON object
// {"meta": ..., "data": ...}, written atomically via temp + rename.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace morse {

inline constexpr const char* tool_version = "1.0.0";

// 17 significant digits, scientific, '.' decimal.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

using Cell = std::variant<std::string, double, long long>;

inline std::string cell_to_csv(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

inline nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    return std::get<std::string>(c);
}

struct Table {
    std::vector<std::pair<std::string, Cell>> meta; // ordered
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, Cell value) { meta.emplace_back(std::move(key), std::move(value)); }
    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }

    std::string to_csv() const {
        std::string out;
        for (const auto& [k, v] : meta) out += "# " + k + " = " + cell_to_csv(v) + "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += cell_to_csv(row[i]);
            }
            out += '\n';
        }
        return out;
    }

    std::string to_json() const {
        nlohmann::json j;
        j["meta"] = nlohmann::json::object();
        for (const auto& [k, v] : meta) j["meta"][k] = cell_to_json(v);
        j["data"] = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = cell_to_json(row[i]);
            j["data"].push_back(std::move(obj));
        }
        return j.dump(2) + "\n";
    }
};

// temp file in the same directory, then rename over the target
inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed: " + path);
    }
}

} // namespace morse

#endif
