#pragma once

// The coefficient algebra Coeff C = k[t, t^{-1}] ⊗_H C, with t^n ⊗_H a written a(n).
//
// (D^k e)(n) = (-1)^k n(n-1)…(n-k+1) e(n-k), and
//     a(n) b(m) = Σ_s C(n,s) (a ∘_s b)(n+m-s)
// with the generalized binomial for negative n.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/identities.hpp"

namespace confalg {

class CoeffElement {
public:
    /// (basis index, degree).
    using Key = std::pair<std::size_t, long>;

    CoeffElement() = default;
    explicit CoeffElement(const ConformalAlgebra& parent) : parent_(&parent) {}

    const ConformalAlgebra* parent() const { return parent_; }
    const std::map<Key, Rational>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }
    Rational coefficient(std::size_t basis, long degree) const;

    void add(std::size_t basis, long degree, const Rational& c);

    CoeffElement& operator+=(const CoeffElement& o);
    CoeffElement& operator-=(const CoeffElement& o);
    CoeffElement& operator*=(const Rational& c);
    friend CoeffElement operator+(CoeffElement a, const CoeffElement& b) { return a += b; }
    friend CoeffElement operator-(CoeffElement a, const CoeffElement& b) { return a -= b; }
    friend CoeffElement operator*(CoeffElement a, const Rational& c) { return a *= c; }
    friend CoeffElement operator*(const Rational& c, CoeffElement a) { return a *= c; }
    friend bool operator==(const CoeffElement& a, const CoeffElement& b);

    /// "2 L(0) - L(-1)".
    std::string to_string() const;
    std::string to_latex() const;

private:
    void adopt(const CoeffElement& o);

    const ConformalAlgebra* parent_ = nullptr;
    std::map<Key, Rational> coords_;
};

CoeffElement coeff_inject(const ConformalElement& a, long n);

/// Throws std::invalid_argument when both sides are nonzero over different algebras.
CoeffElement coeff_product(const CoeffElement& u, const CoeffElement& v);

using CoeffAssignment = std::vector<std::pair<ConformalElement, long>>;

/// f(a_1(n_1), ..., a_k(n_k)) in Coeff C. Throws std::invalid_argument on arity mismatch.
CoeffElement evaluate_identity_coeff(const Identity& f, const CoeffAssignment& assignment);

/// Σ_s (-1)^s C(n,s) a(n-s) b(k+s); equals (a ∘_n b)(k).
CoeffElement reconstruct_n_product(const ConformalElement& a, const ConformalElement& b, unsigned n, long k);

// ---------------------------------------------------------------------------
// Symbolic degrees
//
// With basis elements at indeterminate degrees n_1, ..., n_r every product is a
// finite sum of e(L - shift) with polynomial coefficients in the n_i, where L
// is the sum of the degrees involved. An identity fails on some integer point
// iff one of these polynomials is nonzero.

/// Polynomial over Q in the variables n_1..n_r (stored 0-based).
class DegreePoly {
public:
    explicit DegreePoly(unsigned variables = 0) : vars_(variables) {}
    static DegreePoly constant(unsigned variables, const Rational& c);
    static DegreePoly variable(unsigned variables, unsigned v);

    unsigned variables() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;

    Rational evaluate(const std::vector<long>& point) const;

    DegreePoly& operator+=(const DegreePoly& o);
    DegreePoly& operator*=(const Rational& c);
    friend DegreePoly operator+(DegreePoly a, const DegreePoly& b) { return a += b; }
    friend DegreePoly operator*(DegreePoly a, const Rational& c) { return a *= c; }
    friend DegreePoly operator*(const DegreePoly& a, const DegreePoly& b);
    friend bool operator==(const DegreePoly&, const DegreePoly&) = default;

    /// "n1^2 - 3 n1 n2 + 2".
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    unsigned vars_;
    std::map<Exponents, Rational> terms_;
};

/// Σ P(n) e(Σ_{v ∈ support} n_v - shift).
class SymbolicCoeff {
public:
    using Key = std::pair<std::size_t, unsigned>; ///< (basis, shift)

    SymbolicCoeff(const ConformalAlgebra& alg, unsigned variables, std::uint32_t support);
    /// e_i(n_v).
    static SymbolicCoeff basis(const ConformalAlgebra& alg, std::size_t i, unsigned v, unsigned variables);

    const ConformalAlgebra& algebra() const { return *alg_; }
    unsigned variables() const { return vars_; }
    /// Bit v set when n_v enters the degree.
    std::uint32_t support() const { return support_; }
    const std::map<Key, DegreePoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& key, const DegreePoly& p);
    SymbolicCoeff& operator+=(const SymbolicCoeff& o);
    SymbolicCoeff& operator*=(const Rational& c);

    /// Numeric value at a degree point.
    CoeffElement at(const std::vector<long>& point) const;
    /// True when every coefficient polynomial vanishes at the point.
    bool vanishes_at(const std::vector<long>& point) const;

private:
    const ConformalAlgebra* alg_;
    unsigned vars_;
    std::uint32_t support_;
    std::map<Key, DegreePoly> terms_;
};

SymbolicCoeff symbolic_product(const SymbolicCoeff& u, const SymbolicCoeff& v);

/// Memoizing evaluator of f on basis generators at symbolic degrees n_1..n_k.
/// Not thread-safe; use one per thread.
class SymbolicEvaluator {
public:
    explicit SymbolicEvaluator(const ConformalAlgebra& alg) : alg_(&alg) {}
    SymbolicCoeff evaluate(const Identity& f, const std::vector<std::size_t>& generators);

private:
    const SymbolicCoeff& subtree(const MonomialTree& t, const std::vector<std::size_t>& generators, unsigned vars);

    const ConformalAlgebra* alg_;
    std::map<std::string, SymbolicCoeff> cache_;
};

} // namespace confalg
