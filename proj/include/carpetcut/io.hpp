#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "carpetcut/core.hpp"
#include "carpetcut/decider.hpp"
#include "carpetcut/presets.hpp"

namespace carpetcut {

/// {"n": 3, "digits": [[0,0],[1,0],...]}
inline GscSpec parse_spec_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadSpecFile, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("digits")) {
        throw Error(ErrorCode::BadSpecFile, "expected an object with keys \"n\" and \"digits\"");
    }
    if (!doc["n"].is_number_integer() || !doc["digits"].is_array()) {
        throw Error(ErrorCode::BadSpecFile, "\"n\" must be an integer and \"digits\" an array");
    }
    std::vector<Digit> digits;
    for (const auto& d : doc["digits"]) {
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
            throw Error(ErrorCode::BadSpecFile, "each digit must be a pair of integers");
        }
        digits.push_back({d[0].get<int>(), d[1].get<int>()});
    }
    return validate_spec(doc["n"].get<int>(), std::move(digits));
}

inline std::string spec_to_text(const GscSpec& spec) {
    nlohmann::json doc;
    doc["n"] = spec.base();
    doc["digits"] = nlohmann::json::array();
    for (const Digit& d : spec.digits()) doc["digits"].push_back({d.x, d.y});
    return doc.dump() + "\n";
}

/// A file path, or preset:NAME.
inline GscSpec load_spec(const std::string& arg) {
    if (arg.rfind("preset:", 0) == 0) return resolve_preset(arg.substr(7));
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::BadSpecFile, "cannot read " + arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto integer = [&](const std::string& part) {
        if (part.empty() || part.find_first_not_of("-0123456789") != std::string::npos) {
            throw Error(ErrorCode::BadParameter, "not a fraction: '" + text + "'");
        }
        return BigInt(part);
    };
    if (slash == std::string::npos) return Rational(integer(text));
    const BigInt den = integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::BadParameter, "zero denominator in '" + text + "'");
    return Rational(integer(text.substr(0, slash)), den);
}

inline RationalPoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::BadParameter, "expected x,y but got '" + text + "'");
    return RationalPoint{parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

inline std::string join_words(const std::vector<CellWord>& words) {
    std::string out;
    for (std::size_t k = 0; k < words.size(); ++k) out += (k ? ";" : "") + to_string(words[k]);
    return out;
}

inline std::string join_digits(const std::vector<Digit>& digits) {
    std::string out;
    for (std::size_t k = 0; k < digits.size(); ++k) out += (k ? ";" : "") + to_string(digits[k]);
    return out;
}

inline std::string format_verdict(const Verdict& v) {
    std::ostringstream out;
    switch (v.kind) {
    case Verdict::Kind::Disconnected:
        out << "Disconnected\n";
        break;
    case Verdict::Kind::Fragile:
        out << "Fragile point=" << to_string(v.point) << " parts=" << join_digits(v.witness->first) << "|"
            << join_digits(v.witness->second) << "\n";
        break;
    case Verdict::Kind::NoCutPoints:
        out << "NoCutPoints level=" << v.witness_level << "\n";
        break;
    case Verdict::Kind::HasCutPoints:
        out << "HasCutPoints omega=" << to_string(v.omega) << " point=" << to_string(v.point) << "\n";
        if (v.certificate) {
            out << "evidence=certificate\n";
            out << "lambda=" << join_words(v.certificate->lambda) << "\n";
            out << "lambda_prime=" << join_words(v.certificate->lambda_prime) << "\n";
        } else {
            out << "evidence=lasso cycle=" << v.lasso_cycle << "\n";
        }
        break;
    }
    return out.str();
}

/// Integer-coordinate SVG: each level-n square is `unit` wide, with unit a
/// multiple of every mark denominator so mark centers are integers too.
inline std::string render_svg(const GscSpec& spec, std::size_t level, const std::vector<RationalPoint>& marks,
                              std::uint64_t max_squares = kDefaultMaxVertices) {
    BigInt count = ipow(static_cast<int>(spec.size()), level);
    if (count > max_squares) {
        throw Error(ErrorCode::LevelTooLarge, "|D|^" + std::to_string(level) + " exceeds the square cap " +
                                                  std::to_string(max_squares));
    }
    BigInt unit = 4;
    for (const auto& m : marks) {
        for (const Rational& c : {m.x, m.y}) {
            const BigInt den = boost::multiprecision::denominator(c);
            unit = unit / boost::multiprecision::gcd(unit, den) * den;
        }
    }
    const BigInt cells = ipow(spec.base(), level);
    const BigInt side = cells * unit;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
        << "\" viewBox=\"0 0 " << side << " " << side << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << side << "\" height=\"" << side << "\" fill=\"white\"/>\n";
    const auto total = static_cast<std::uint64_t>(count);
    CellWord w;
    w.letters.resize(level);
    for (std::uint64_t id = 0; id < total; ++id) {
        std::uint64_t rest = id;
        for (std::size_t k = level; k-- > 0;) {
            w.letters[k] = spec.digits()[rest % spec.size()];
            rest /= spec.size();
        }
        const GridPosition g = word_to_grid(spec, w);
        out << "<rect x=\"" << g.x * unit << "\" y=\"" << (cells - 1 - g.y) * unit << "\" width=\"" << unit
            << "\" height=\"" << unit << "\" fill=\"black\"/>\n";
    }
    const BigInt radius = std::max(BigInt(2), BigInt(unit / 2));
    for (const auto& m : marks) {
        const Rational cx = m.x * Rational(side);
        const Rational cy = (1 - m.y) * Rational(side);
        out << "<circle cx=\"" << boost::multiprecision::numerator(cx) << "\" cy=\""
            << boost::multiprecision::numerator(cy) << "\" r=\"" << radius << "\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace carpetcut
