#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"

namespace mixsing::cli {

using nlohmann::ordered_json;

std::string read_text_or_file(const std::string& text_or_path) {
    std::ifstream in(text_or_path);
    if (!in) return text_or_path;
    std::string line, text;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!text.empty()) text += ' ';
        text += line;
    }
    if (text.empty()) throw std::invalid_argument("no polynomial in " + text_or_path);
    return text;
}

namespace {

SeriesTerms terms_from_json(const ordered_json& j) {
    if (!j.is_array()) throw std::invalid_argument("arc coordinate must be an array of {exp, re, im}");
    SeriesTerms out;
    for (const auto& term : j) {
        const int e = term.at("exp").get<int>();
        if (e < 0) throw std::invalid_argument("arc exponents must be non-negative");
        out[e] += Complex(term.value("re", 0.0), term.value("im", 0.0));
    }
    return out;
}

ordered_json terms_to_json(const SeriesTerms& t) {
    ordered_json out = ordered_json::array();
    for (const auto& [e, c] : t) out.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
    return out;
}

}  // namespace

Arc arc_from_json(const ordered_json& j) {
    Arc arc;
    if (j.contains("t")) arc.t = terms_from_json(j.at("t"));
    const auto& z = j.at("z");
    if (!z.is_array() || z.empty()) throw std::invalid_argument("arc needs a non-empty z array");
    for (const auto& zi : z) arc.z.push_back(terms_from_json(zi));
    arc.validate();
    return arc;
}

ordered_json arc_to_json(const Arc& arc) {
    ordered_json z = ordered_json::array();
    for (const auto& zi : arc.z) z.push_back(terms_to_json(zi));
    return {{"t", terms_to_json(arc.t)}, {"z", z}};
}

StratumDescriptor parse_stratum(const std::string& text) {
    static const std::regex re(R"(^([ABC])_\{([0-9, ]*)\}$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("malformed stratum '" + text + "'");
    StratumDescriptor s;
    s.kind = m[1] == "A" ? StratumKind::A : m[1] == "B" ? StratumKind::B : StratumKind::C;
    std::stringstream ss(m[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(' ') == std::string::npos) continue;
        const int i = std::stoi(item);
        if (i < 1 || i > 31) throw std::invalid_argument("stratum index out of range in '" + text + "'");
        s.I.insert(i - 1);
    }
    s.t_axis = s.kind == StratumKind::C && s.I.empty();
    return s;
}

}  // namespace mixsing::cli
