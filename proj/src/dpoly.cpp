#include "confalg/dpoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace confalg {

DPoly::DPoly(const Rational& c)
{
    if (c != 0) {
        terms_.emplace(0, c);
    }
}

DPoly DPoly::monomial(unsigned exponent, const Rational& c)
{
    DPoly p;
    p.add_term(exponent, c);
    return p;
}

DPoly DPoly::divided_power(unsigned n)
{
    Rational c(sign_power(n).get_num(), factorial(n));
    c.canonicalize();
    return monomial(n, c);
}

Rational DPoly::coefficient(unsigned exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DPoly::add_term(unsigned exponent, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

DPoly& DPoly::operator+=(const DPoly& o)
{
    for (const auto& [k, c] : o.terms_) {
        add_term(k, c);
    }
    return *this;
}

DPoly& DPoly::operator-=(const DPoly& o)
{
    for (const auto& [k, c] : o.terms_) {
        add_term(k, -c);
    }
    return *this;
}

DPoly& DPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) {
        v *= c;
    }
    return *this;
}

DPoly operator*(const DPoly& a, const DPoly& b)
{
    DPoly r;
    for (const auto& [i, x] : a.terms_) {
        for (const auto& [j, y] : b.terms_) {
            r.add_term(i + j, x * y);
        }
    }
    return r;
}

DPoly DPoly::shifted(unsigned k) const
{
    if (k == 0) {
        return *this;
    }
    DPoly r;
    for (const auto& [i, c] : terms_) {
        r.terms_.emplace_hint(r.terms_.end(), i + k, c);
    }
    return r;
}

namespace {

std::string render(const DPoly& p, bool latex)
{
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [k, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) {
                out << "-";
            }
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (mag == 1);
        if (k == 0) {
            if (latex && mag.get_den() != 1) {
                out << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
            } else {
                out << mag.get_str();
            }
            continue;
        }
        if (!unit) {
            if (latex && mag.get_den() != 1) {
                out << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
            } else {
                out << mag.get_str() << (latex ? "" : "*");
            }
        }
        out << "D";
        if (k > 1) {
            out << (latex ? "^{" : "^") << k << (latex ? "}" : "");
        }
    }
    return out.str();
}

} // namespace

std::string DPoly::to_string() const { return render(*this, false); }
std::string DPoly::to_latex() const { return render(*this, true); }

DPoly DPoly::parse(std::string_view text)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("DPoly parse error at " + std::to_string(pos) + " in '"
                                    + std::string(text) + "': " + what);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return std::string(text.substr(start, pos - start));
    };

    DPoly result;
    bool first = true;
    skip();
    if (pos == text.size()) {
        fail("empty polynomial");
    }
    while (true) {
        skip();
        if (pos == text.size()) {
            break;
        }
        Rational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') {
                sign = -1;
            }
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;

        Rational coeff = 1;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = read_uint();
            skip();
            std::string den = "1";
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                skip();
                den = read_uint();
                if (den.empty()) {
                    fail("expected denominator");
                }
            }
            coeff = parse_rational(num + "/" + den);
            have_coeff = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
                if (pos >= text.size() || text[pos] != 'D') {
                    fail("expected 'D' after '*'");
                }
            }
        }
        unsigned exponent = 0;
        if (pos < text.size() && text[pos] == 'D') {
            ++pos;
            exponent = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                std::string e = read_uint();
                if (e.empty()) {
                    fail("expected exponent");
                }
                exponent = static_cast<unsigned>(std::stoul(e));
            }
        } else if (!have_coeff) {
            fail("expected coefficient or 'D'");
        }
        result.add_term(exponent, sign * coeff);
    }
    return result;
}

DPoly antipode(const DPoly& p)
{
    DPoly r;
    for (const auto& [k, c] : p.terms()) {
        r.add_term(k, sign_power(k) * c);
    }
    return r;
}

Rational counit(const DPoly& p) { return p.coefficient(0); }

} // namespace confalg
