#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "carpetcut/core.hpp"

namespace carpetcut {

inline std::vector<std::string> preset_names() {
    return {"sierpinski", "goodcp", "countable", "segment", "diag3", "oddcuts:m", "evencuts:m"};
}

namespace detail {

inline std::vector<Digit> all_but(int n, std::vector<Digit> holes) {
    std::vector<Digit> out;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (std::find(holes.begin(), holes.end(), Digit{x, y}) == holes.end()) out.push_back({x, y});
        }
    }
    return out;
}

/// Family digit sets straight from the union formula, with N = 2m:
/// left column top half, right column bottom half, and the staircases
/// L_k = {(k,i) : i < m} ∪ {(k+1,i) : i >= m} for even k.
inline std::vector<Digit> cut_family_digits(int m, bool even) {
    std::vector<Digit> out;
    for (int i = m; i <= 2 * m - 1; ++i) out.push_back({0, i});
    for (int i = 0; i <= m - 1; ++i) out.push_back({2 * m - 1, i});
    for (int k = 0; k <= 2 * m - 2; k += 2) {
        for (int i = 0; i <= m - 1; ++i) out.push_back({k, i});
        for (int i = m; i <= 2 * m - 1; ++i) out.push_back({k + 1, i});
    }
    if (even) {
        for (int i = m; i <= 2 * m - 1; ++i) out.push_back({2 * m - 2, i});
    }
    return out;
}

} // namespace detail

inline int parse_family_parameter(const std::string& name, const std::string& text) {
    std::size_t used = 0;
    int m = 0;
    try {
        m = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameter, name + " needs an integer parameter, got '" + text + "'");
    }
    if (used != text.size()) throw Error(ErrorCode::BadParameter, name + " needs an integer parameter, got '" + text + "'");
    if (m < 3) throw Error(ErrorCode::BadParameter, name + " needs m >= 3, got " + std::to_string(m));
    return m;
}

inline GscSpec resolve_preset(const std::string& id) {
    if (id == "sierpinski") return validate_spec(3, detail::all_but(3, {{1, 1}}));
    if (id == "goodcp") return validate_spec(3, detail::all_but(3, {{1, 1}, {1, 2}}));
    if (id == "countable") return validate_spec(3, {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
    if (id == "segment") return validate_spec(3, {{0, 0}, {1, 0}, {2, 0}});
    if (id == "diag3") return validate_spec(3, {{0, 0}, {1, 1}, {2, 2}});
    for (const std::string family : {"oddcuts", "evencuts"}) {
        if (id.rfind(family + ":", 0) == 0) {
            const int m = parse_family_parameter(family, id.substr(family.size() + 1));
            return validate_spec(2 * m, detail::cut_family_digits(m, family == "evencuts"));
        }
        if (id == family) throw Error(ErrorCode::BadParameter, family + " needs a parameter, e.g. " + family + ":3");
    }
    throw Error(ErrorCode::UnknownPreset, "no preset named '" + id + "'");
}

} // namespace carpetcut
