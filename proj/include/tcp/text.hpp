// Small line-oriented parsing helpers shared by the CSV readers.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "tcp/error.hpp"
#include "tcp/rational.hpp"

namespace tcp::detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline bool parses_as_rational(const std::string& s) {
    try {
        parse_rational(s);
        return true;
    } catch (const error&) {
        return false;
    }
}

}  // namespace tcp::detail
