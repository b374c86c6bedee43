#include "bfl/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bfl {

namespace {

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

double parse_number(const std::string& raw) {
    const std::string text = trimmed(raw);
    if (text.empty()) throw ConfigError("empty numeric literal");
    const auto pi_pos = text.find("pi");
    try {
        if (pi_pos == std::string::npos) return to_double(parse_rational(text));
        const std::string pre = text.substr(0, pi_pos);
        const std::string post = text.substr(pi_pos + 2);
        double value = std::numbers::pi;
        if (!pre.empty()) {
            if (pre == "-") value = -value;
            else value *= to_double(parse_rational(pre));
        }
        if (!post.empty()) {
            if (post.front() != '/') throw ConfigError("bad pi literal: " + text);
            value /= to_double(parse_rational(post.substr(1)));
        }
        return value;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad numeric literal '" + text + "': " + e.what());
    }
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first == key; });
}

std::string KeyValueConfig::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw ConfigError("missing config key: " + key);
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return fallback;
}

std::vector<std::string> KeyValueConfig::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_)
        if (k == key) out.push_back(v);
    return out;
}

double KeyValueConfig::number(const std::string& key) const { return parse_number(get(key)); }

double KeyValueConfig::number_or(const std::string& key, double fallback) const {
    return has(key) ? parse_number(get(key)) : fallback;
}

int KeyValueConfig::integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = parse_number(get(key));
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9) throw ConfigError("expected an integer for key: " + key);
    return i;
}

std::vector<double> KeyValueConfig::numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : split_ws(get(key))) out.push_back(parse_number(tok));
    return out;
}

ProfileSpec parse_profile(const std::string& spec) {
    ProfileSpec p;
    p.text = trimmed(spec);
    const auto toks = split_ws(p.text);
    if (toks.empty()) throw ConfigError("empty profile spec");
    try {
        const std::string& kind = toks[0];
        if (kind == "const") {
            if (toks.size() != 2) throw ConfigError("profile: const <c>");
            p.trig = TrigPoly::constant(parse_rational(toks[1]));
        } else if (kind == "cos" || kind == "sin") {
            if (toks.size() < 2 || toks.size() > 3)
                throw ConfigError("profile: " + kind + " <freq> [coeff]");
            const int freq = std::stoi(toks[1]);
            const Rational c = toks.size() == 3 ? parse_rational(toks[2]) : Rational(1);
            p.trig = kind == "cos" ? TrigPoly::cosine(freq, c) : TrigPoly::sine(freq, c);
        } else if (kind == "trig") {
            if ((toks.size() - 1) % 3 != 0 || toks.size() == 1)
                throw ConfigError("profile: trig <freq> <cos> <sin> [...]");
            for (size_t i = 1; i + 2 < toks.size() + 1; i += 3) {
                const int freq = std::stoi(toks[i]);
                p.trig.set_cos(freq, p.trig.cos_coeff(freq) + parse_rational(toks[i + 1]));
                if (freq > 0) p.trig.set_sin(freq, p.trig.sin_coeff(freq) + parse_rational(toks[i + 2]));
            }
        } else if (kind == "poly") {
            std::vector<Rational> coeffs;
            for (size_t i = 1; i < toks.size(); ++i) coeffs.push_back(parse_rational(toks[i]));
            p.poly = Poly(std::move(coeffs));
            p.is_poly = true;
        } else {
            throw ConfigError("unknown profile kind: " + kind);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad profile '" + p.text + "': " + e.what());
    }
    return p;
}

CurveConfig parse_curve(const KeyValueConfig& cfg) {
    CurveConfig out;
    const std::string kind = cfg.get_or("kind", "support");
    try {
        if (kind == "support") {
            TrigPoly h;
            const auto lines = cfg.get_all("coeff");
            if (lines.empty()) throw ConfigError("support curve needs 'coeff = freq cos sin' lines");
            for (const auto& line : lines) {
                const auto toks = split_ws(line);
                if (toks.size() != 3) throw ConfigError("coeff line needs: <freq> <cos> <sin>");
                const int freq = std::stoi(toks[0]);
                h.set_cos(freq, h.cos_coeff(freq) + parse_rational(toks[1]));
                if (freq > 0) h.set_sin(freq, h.sin_coeff(freq) + parse_rational(toks[2]));
            }
            out.support.emplace(std::move(h));
        } else if (kind == "germ") {
            const double halfwidth = cfg.number("halfwidth");
            std::vector<Rational> coeffs;
            for (const auto& line : cfg.get_all("gcoeff")) {
                const auto toks = split_ws(line);
                if (toks.size() != 2) throw ConfigError("gcoeff line needs: <power> <value>");
                const int power = std::stoi(toks[0]);
                if (power < 0) throw ConfigError("gcoeff power must be >= 0");
                if (static_cast<size_t>(power) >= coeffs.size())
                    coeffs.resize(power + 1, Rational(0));
                coeffs[power] += parse_rational(toks[1]);
            }
            out.germ.emplace(Poly(std::move(coeffs)), halfwidth);
            out.is_germ = true;
        } else {
            throw ConfigError("curve kind must be 'support' or 'germ', got: " + kind);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad curve description: ") + e.what());
    }
    return out;
}

GridSpec parse_grid(const KeyValueConfig& cfg, const std::string& override_counts) {
    GridSpec g;
    g.ns = cfg.integer_or("grid.ns", g.ns);
    g.ntheta = cfg.integer_or("grid.ntheta", g.ntheta);
    g.s_min = cfg.number_or("grid.s_min", g.s_min);
    g.s_max = cfg.number_or("grid.s_max", g.s_max);
    g.theta_min = cfg.number_or("grid.theta_min", g.theta_min);
    g.theta_max = cfg.number_or("grid.theta_max", g.theta_max);
    if (!override_counts.empty()) {
        const auto x = override_counts.find('x');
        if (x == std::string::npos) throw ConfigError("--grid expects SxT, e.g. 16x16");
        g.ns = std::stoi(override_counts.substr(0, x));
        g.ntheta = std::stoi(override_counts.substr(x + 1));
    }
    if (g.ns < 1 || g.ntheta < 1) throw ConfigError("grid counts must be positive");
    if (!(g.theta_min > 0.0 && g.theta_max < std::numbers::pi && g.theta_min <= g.theta_max))
        throw ConfigError("grid theta range must sit inside (0, pi)");
    return g;
}

}  // namespace bfl
