#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace osserman {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational scalar. Boost keeps every value in lowest terms with a
/// positive denominator, so numerator(r) and denominator(r) are always the
/// canonical pair and the canonical zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den for an arbitrary (possibly negative) nonzero denominator.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0)
        throw std::domain_error("make_rational: zero denominator");
    return Rational(std::move(num)) / Rational(std::move(den));
}

/// Parses "a" or "a/b" with an optional sign on either part.
inline Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    };
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin == end) return fail();
    const std::string body = text.substr(begin, end - begin);

    auto parse_int = [&](const std::string& s) -> Integer {
        if (s.empty() || s == "-" || s == "+") fail();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t d = i; d < s.size(); ++d)
            if (!std::isdigit(static_cast<unsigned char>(s[d]))) fail();
        Integer magnitude(s.substr(i));
        return s[0] == '-' ? -magnitude : magnitude;
    };

    const std::size_t slash = body.find('/');
    if (slash == std::string::npos) return Rational(parse_int(body));
    Integer num = parse_int(body.substr(0, slash));
    Integer den = parse_int(body.substr(slash + 1));
    if (den == 0) fail();
    return make_rational(std::move(num), std::move(den));
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace osserman
