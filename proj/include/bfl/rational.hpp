#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bfl {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_of(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
    return Rational(num, den);
}

/// Parse "p", "p/q" or a decimal literal ("0.25", "1e-3") into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("parse_rational: zero denominator in " + text);
        return Rational(p, q);
    }
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
        return Rational(BigInt(text));
    }
    // Decimal / scientific form: mantissa split at '.', then a signed power of ten.
    std::string body = text;
    long exp10 = 0;
    auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(body.substr(epos + 1));
        body  = body.substr(0, epos);
    }
    auto dot = body.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(body.size() - dot - 1);
        body.erase(dot, 1);
    }
    if (body.empty() || body == "-" || body == "+")
        throw std::invalid_argument("parse_rational: bad literal " + text);
    Rational value{BigInt(body)};
    BigInt pow10 = 1;
    for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) pow10 *= 10;
    if (exp10 >= 0) value *= Rational(pow10);
    else value /= Rational(pow10);
    return value;
}

}  // namespace bfl
