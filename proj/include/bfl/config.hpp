#pragma once

#include "bfl/curve.hpp"
#include "bfl/grid.hpp"
#include "bfl/trigpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bfl {

/// Raised for malformed configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric literal: decimal ("0.25", "1e-3"), rational ("3/4"), or a pi form
/// ("pi", "2pi", "pi/6", "5pi/6").
double parse_number(const std::string& text);

/// Key-value configuration file: one `key = value` per line, '#' comments,
/// repeated keys preserved in order.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;  // throws ConfigError if absent
    std::string get_or(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> get_all(const std::string& key) const;

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer_or(const std::string& key, int fallback) const;
    std::vector<double> numbers(const std::string& key) const;  // whitespace-split value

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Profile of a normal deformation, parsed from a one-line spec:
///   "const <c>"      constant c
///   "cos <k> [c]"    c * cos(k s), default c = 1
///   "sin <k> [c]"    c * sin(k s), default c = 1
///   "trig <k> <c> <s> [...]"  repeated (freq, cos, sin) triples
///   "poly <c0> <c1> ..."      polynomial coefficients from power 0
/// Coefficients are exact rationals or decimals.
struct ProfileSpec {
    std::string text;
    bool is_poly = false;
    TrigPoly trig;
    Poly poly;
};
ProfileSpec parse_profile(const std::string& spec);

/// Curve description: kind (support|germ) plus coefficient lines.
///   support:  coeff = <freq> <cos> <sin>     (support function terms)
///   germ:     gcoeff = <power> <value>, halfwidth = <r>
struct CurveConfig {
    bool is_germ = false;
    std::optional<SupportCurve> support;
    std::optional<GermCurve> germ;
};
CurveConfig parse_curve(const KeyValueConfig& cfg);

/// Grid block: grid.ns, grid.ntheta, grid.s_min/max, grid.theta_min/max,
/// overridable by a "SxT" string (CLI --grid).
GridSpec parse_grid(const KeyValueConfig& cfg, const std::string& override_counts = "");

}  // namespace bfl
