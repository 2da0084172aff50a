#include "confalg/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace confalg {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto s = trim(text);
    auto slash = s.find('/');
    auto num = trim(s.substr(0, slash));
    if (!is_integer_literal(num)) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    Rational q(parse_integer(num));
    if (slash != std::string_view::npos) {
        auto den = trim(s.substr(slash + 1));
        if (!is_integer_literal(den) || den.front() == '-') {
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        }
        Integer d = parse_integer(den);
        if (d == 0) {
            throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        }
        q = Rational(q.get_num(), d);
        q.canonicalize();
    }
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer falling_factorial(const Integer& x, unsigned k)
{
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= x - i;
    }
    return r;
}

Integer factorial(unsigned k)
{
    Integer r = 1;
    for (unsigned i = 2; i <= k; ++i) {
        r *= i;
    }
    return r;
}

Rational binomial(const Integer& x, unsigned k)
{
    Rational r(falling_factorial(x, k), factorial(k));
    r.canonicalize();
    return r;
}

} // namespace confalg
