#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "confalg/rational.hpp"

namespace confalg {

/// Polynomial in the derivation symbol D with exact rational coefficients.
///
/// Sparse: only nonzero coefficients are stored, so two DPolys compare equal
/// exactly when they are equal as polynomials. This is the scalar ring H = k[D]
/// acting on every module in the library.
class DPoly {
public:
    using Terms = std::map<unsigned, Rational>;

    DPoly() = default;
    DPoly(const Rational& c); // NOLINT: constant polynomials convert implicitly
    DPoly(int c) : DPoly(Rational(c)) {} // NOLINT

    static DPoly monomial(unsigned exponent, const Rational& c = 1);
    /// D itself.
    static DPoly d() { return monomial(1); }
    /// h_n = (-D)^n / n!, the divided powers used by the pseudoproduct.
    static DPoly divided_power(unsigned n);

    /// Parses "-2 + 3*D^2", "D", "1/2 D^3 - D". Throws std::invalid_argument.
    static DPoly parse(std::string_view text);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Degree of the zero polynomial is reported as 0; check is_zero() first.
    unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    Rational coefficient(unsigned exponent) const;

    void add_term(unsigned exponent, const Rational& c);

    DPoly& operator+=(const DPoly& o);
    DPoly& operator-=(const DPoly& o);
    DPoly& operator*=(const Rational& c);
    friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
    friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
    friend DPoly operator-(DPoly a) { return a *= Rational(-1); }
    friend DPoly operator*(DPoly a, const Rational& c) { return a *= c; }
    friend DPoly operator*(const Rational& c, DPoly a) { return a *= c; }
    friend DPoly operator*(const DPoly& a, const DPoly& b);

    /// Multiplication by D^k.
    DPoly shifted(unsigned k) const;

    friend bool operator==(const DPoly&, const DPoly&) = default;

    /// Descending order, e.g. "3*D^2 - D".
    std::string to_string() const;
    std::string to_latex() const;

private:
    Terms terms_;
};

/// S(D) = -D.
DPoly antipode(const DPoly& p);

/// Constant term.
Rational counit(const DPoly& p);

} // namespace confalg
