#include "qpde/io.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace qpde {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Rational number(const std::string& text, int line) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), line);
    }
}

BiPoly<Rational> parse_terms(const std::string& text, int line) {
    static const std::regex term(R"(\(\s*(\d+)\s*,\s*(\d+)\s*,\s*([^()]+?)\s*\))");
    BiPoly<Rational> p;
    std::smatch m;
    std::size_t consumed = 0;
    auto begin = text.cbegin();
    while (std::regex_search(begin, text.cend(), m, term)) {
        if (!trim(std::string(begin, begin + m.position(0))).empty()) throw ParseError("unexpected text between terms", line);
        p.add_term(std::stoi(m[1]), std::stoi(m[2]), number(m[3], line));
        begin += m.position(0) + m.length(0);
        consumed += m.length(0);
    }
    if (!trim(std::string(begin, text.cend())).empty()) throw ParseError("malformed term list", line);
    if (consumed == 0 && !trim(text).empty() && trim(text) != "0") throw ParseError("expected (i,j,coef) terms", line);
    return p;
}

BigQJacobiParams<Rational> preset_params(const std::map<std::string, Rational>& kv) {
    auto def = test_params<Rational>();
    auto get = [&](const char* k, const Rational& fallback) {
        auto it = kv.find(k);
        return it == kv.end() ? fallback : it->second;
    };
    Rational qv = get("q", def.q.value());
    if (!(qv > 0 && qv < 1)) throw ParseError("q must satisfy 0 < q < 1", 0);
    BigQJacobiParams<Rational> p{get("a", def.a), get("b", def.b), get("c", def.c), get("d", def.d), QParam<Rational>(qv)};
    try {
        validate(p);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), 0);
    }
    return p;
}

}  // namespace

EquationSource parse_equation_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::map<std::string, std::pair<std::string, int>> kv;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line);
        std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line);
        if (!kv.emplace(key, std::make_pair(value, line)).second) throw ParseError("duplicate key " + key, line);
    }
    if (auto it = kv.find("preset"); it != kv.end()) {
        if (it->second.first != "big-q-jacobi") throw ParseError("unknown preset " + it->second.first, it->second.second);
        std::map<std::string, Rational> nums;
        for (const auto& [k, v] : kv) {
            if (k == "preset") continue;
            if (k != "q" && k != "a" && k != "b" && k != "c" && k != "d") throw ParseError("unknown preset key " + k, v.second);
            nums[k] = number(v.first, v.second);
        }
        auto p = preset_params(nums);
        return {preset_equation(p), p};
    }
    auto q_it = kv.find("q");
    if (q_it == kv.end()) throw ParseError("missing q", 0);
    Rational qv = number(q_it->second.first, q_it->second.second);
    if (!(qv > 0 && qv < 1)) throw ParseError("q must satisfy 0 < q < 1", q_it->second.second);
    std::map<std::string, BiPoly<Rational>> polys;
    for (const auto& [k, v] : kv) {
        if (k == "q") continue;
        bool known = false;
        for (const char* name : kCoeffNames) known = known || k == name;
        if (!known) throw ParseError("unknown key " + k, v.second);
        polys[k] = parse_terms(v.first, v.second);
    }
    for (const char* name : kCoeffNames)
        if (!polys.count(name)) throw ParseError(std::string("missing coefficient ") + name, 0);
    return {EquationCoeffs<Rational>{QParam<Rational>(qv), polys["C11"], polys["C22"], polys["A12a"], polys["A12d"],
                                     polys["B1"], polys["B2"]},
            std::nullopt};
}

EquationSource parse_equation_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open equation file " + path.string(), 0);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_equation_text(os.str());
}

EquationSource preset_source(const std::string& name, const std::vector<std::string>& params) {
    if (name != "big-q-jacobi") throw ParseError("unknown preset " + name, 0);
    std::map<std::string, Rational> nums;
    for (const auto& kv : params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("parameter must be key=value: " + kv, 0);
        std::string k = trim(kv.substr(0, eq));
        if (k != "q" && k != "a" && k != "b" && k != "c" && k != "d") throw ParseError("unknown parameter " + k, 0);
        nums[k] = number(kv.substr(eq + 1), 0);
    }
    auto p = preset_params(nums);
    return {preset_equation(p), p};
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        const auto& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
            out += '"';
            for (char ch : c) {
                if (ch == '"') out += '"';
                out += ch;
            }
            out += '"';
        } else {
            out += c;
        }
    }
    return out + "\n";
}

}  // namespace qpde
