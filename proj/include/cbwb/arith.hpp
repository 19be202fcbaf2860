#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cbwb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Malformed or out-of-contract input (bad type string, non-dominant weight, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A truncated computation cannot certify its answer on the requested window.
struct TruncationError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An internal identity that must hold exactly did not (e.g. d^2 != 0).
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline Integer to_integer(const Rational& q)
{
    if (!is_integral(q))
        throw InvalidInput("expected an integer, got " + q.str());
    return boost::multiprecision::numerator(q);
}

inline long long to_ll(const Rational& q) { return to_integer(q).convert_to<long long>(); }

/// Parses "3", "-2", "1/2".
inline Rational parse_rational(std::string_view s)
{
    auto trim = [](std::string_view v) {
        while (!v.empty() && v.front() == ' ')
            v.remove_prefix(1);
        while (!v.empty() && v.back() == ' ')
            v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty())
        throw InvalidInput("empty rational");
    auto check_int = [](std::string_view v) {
        std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
        if (i == v.size())
            throw InvalidInput("malformed number '" + std::string(v) + "'");
        for (; i < v.size(); ++i)
            if (v[i] < '0' || v[i] > '9')
                throw InvalidInput("malformed number '" + std::string(v) + "'");
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        check_int(s);
        std::string t(s[0] == '+' ? s.substr(1) : s);
        return Rational(Integer(t));
    }
    auto num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    check_int(num);
    check_int(den);
    Integer d(std::string(den[0] == '+' ? den.substr(1) : den));
    if (d == 0)
        throw InvalidInput("zero denominator in '" + std::string(s) + "'");
    return Rational(Integer(std::string(num[0] == '+' ? num.substr(1) : num)), d);
}

/// Comma-separated list of rationals, e.g. "1,1" or "1/2,-3".
inline std::vector<Rational> parse_rational_list(std::string_view s)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(parse_rational(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

} // namespace cbwb
