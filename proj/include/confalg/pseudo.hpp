#pragma once

// Elements of H^{⊗n} ⊗_H C and the pseudoproduct calculus.
//
// Normal form: the last tensor slot is always 1. Using the relation
// (F·h) ⊗_H c = F ⊗_H hc, any F ⊗ D^k ⊗_H c rewrites as
//     Σ_j C(k,j) (F·(-D)^j) ⊗ 1 ⊗_H D^{k-j} c,
// so an element is a finite map from (n-1)-tuples of D-exponents to C.

#include <map>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/tensor_poly.hpp"

namespace confalg {

/// Permutation of {1..n} acting on the right, i ↦ iσ. Stored 0-based.
///
/// Acting on tensors, σ moves slot i to slot iσ. Composition (στ) is
/// i ↦ (iσ)τ, i.e. first σ, then τ.
class Permutation {
public:
    Permutation() = default;
    static Permutation identity(unsigned n);
    /// 1-based one-line images [1σ, 2σ, ..., nσ]. Throws if not a bijection.
    static Permutation from_images(const std::vector<unsigned>& one_based);
    /// The transposition (i j) on n points, 1-based.
    static Permutation transposition(unsigned i, unsigned j, unsigned n);

    unsigned size() const { return static_cast<unsigned>(images_.size()); }
    /// 0-based image of 0-based point.
    unsigned operator()(unsigned i) const { return images_[i]; }
    std::vector<unsigned> one_line() const;
    bool is_identity() const;

    Permutation then(const Permutation& tau) const;
    Permutation inverse() const;

    friend auto operator<=>(const Permutation&, const Permutation&) = default;
    friend bool operator==(const Permutation&, const Permutation&) = default;

    /// "[2,1,3]".
    std::string to_string() const;

private:
    std::vector<unsigned> images_;
};

/// Unnormalized element: n-tuples of exponents (last slot included) to C.
struct RawPseudoElement {
    unsigned arity = 1;
    std::map<Exponents, Coords> terms;
};

class PseudoElement {
public:
    using Terms = std::map<Exponents, Coords>;

    PseudoElement(const ConformalAlgebra& alg, unsigned arity);
    /// Arity-1 element 1 ⊗_H a.
    static PseudoElement from_element(const ConformalElement& a);

    unsigned arity() const { return arity_; }
    const ConformalAlgebra& algebra() const { return *alg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    ConformalElement value(const Exponents& key) const;

    /// Adds scale · c at a normal-form key (length arity-1).
    void add(const Exponents& key, const Coords& c, const Rational& scale = 1);

    PseudoElement& operator+=(const PseudoElement& o);
    PseudoElement& operator-=(const PseudoElement& o);
    PseudoElement& operator*=(const Rational& c);
    friend PseudoElement operator+(PseudoElement a, const PseudoElement& b) { return a += b; }
    friend PseudoElement operator-(PseudoElement a, const PseudoElement& b) { return a -= b; }
    friend PseudoElement operator*(PseudoElement a, const Rational& c) { return a *= c; }

    friend bool operator==(const PseudoElement& a, const PseudoElement& b);

    /// Σ (D^{k1}⊗…⊗D^{k_{n-1}}⊗1) ⊗_H (c).
    std::string to_string() const;
    std::string to_latex() const;

    RawPseudoElement to_raw() const;

private:
    void check_compatible(const PseudoElement& o) const;

    const ConformalAlgebra* alg_;
    unsigned arity_;
    Terms terms_;
};

PseudoElement to_normal_form(const ConformalAlgebra& alg, const RawPseudoElement& raw);

/// (F ⊗_H 1) · A for F ∈ H^{⊗n}: multiplies the tensor part slot-wise, then renormalizes.
PseudoElement left_multiply(const TensorPoly& f, const PseudoElement& a);

/// a * b = Σ_s h_s ⊗ 1 ⊗_H (a ∘_s b), h_s = (-D)^s/s!.
PseudoElement pseudo_product(const ConformalElement& a, const ConformalElement& b);

/// (F ⊗_H a) * (G ⊗_H b) = (F ⊗ G ⊗_H 1)(Δ^(n) ⊗ Δ^(m) ⊗_H id)(a * b).
PseudoElement expanded_product(const PseudoElement& a, const PseudoElement& b);

/// (σ ⊗_H id)(A): slot i moves to slot iσ, the implicit trailing 1 included.
PseudoElement permute(const Permutation& sigma, const PseudoElement& a);

/// Same action on H^{⊗n}.
TensorPoly permute(const Permutation& sigma, const TensorPoly& f);

/// σ_π: the block permutation with
///   σ_π (Δ^(m_{1σ}) ⊗ … ⊗ Δ^(m_{nσ}))(F) = (Δ^(m_1) ⊗ … ⊗ Δ^(m_n)) σ(F).
Permutation expand_permutation(const Permutation& sigma, const std::vector<unsigned>& block_sizes);

enum class Sign { plus = 1, minus = -1 };

/// a * b ± (τ_12 ⊗_H id)(b * a).
PseudoElement plus_minus_product(const ConformalElement& a, const ConformalElement& b, Sign sign);

} // namespace confalg
