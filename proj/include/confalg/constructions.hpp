#pragma once

// Built-in ordinary algebras, current algebras, comodule pseudoalgebras P(A)
// over H = k[D], the Virasoro conformal algebra and the ± structures.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/identities.hpp"
#include "confalg/pseudo.hpp"

namespace confalg {

class ClosureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vector = std::vector<Rational>;

/// Finite-dimensional algebra given by structure constants; no identities assumed.
struct OrdinaryAlgebraDef {
    std::string name;
    std::vector<std::string> basis;
    /// (i, j) → coordinates of e_i e_j; missing pairs multiply to zero.
    std::map<std::pair<std::size_t, std::size_t>, Vector> table;

    std::size_t dim() const { return basis.size(); }
    Vector unit_vector(std::size_t i) const;
    Vector multiply(const Vector& u, const Vector& v) const;
};

/// e0 = 1, e_i^2 = -1, and e_a e_b = e_c for the cyclic triples
/// (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5).
OrdinaryAlgebraDef octonions();
/// Matrix units e_rc, index n(r-1) + (c-1).
OrdinaryAlgebraDef matrix_algebra(unsigned n);
/// [e,f] = h, [h,e] = 2e, [h,f] = -2f, anticommutative.
OrdinaryAlgebraDef sl2();

/// Value of f on the given arguments.
Vector evaluate_ordinary(const OrdinaryAlgebraDef& alg, const Identity& f, const std::vector<Vector>& args);

/// First basis tuple (lexicographic) on which f does not vanish, if any.
std::optional<std::vector<std::size_t>> ordinary_witness(const OrdinaryAlgebraDef& alg, const Identity& f);

/// Cur A: e_i ∘_0 e_j = e_i e_j, locality 1 wherever the product is nonzero.
ConformalAlgebraDef current_algebra(const OrdinaryAlgebraDef& alg);

/// L ∘_0 L = DL, L ∘_1 L = 2L.
ConformalAlgebraDef virasoro();

// ---------------------------------------------------------------------------
// H-comodule algebras

struct CoactionTerm {
    unsigned exponent;
    std::size_t basis;
    Rational coeff;
    friend bool operator==(const CoactionTerm&, const CoactionTerm&) = default;
};

/// Algebra A with a coaction A → H ⊗ A, e_i ↦ Σ c D^k ⊗ e_j, presented on a basis.
class ComoduleAlgebra {
public:
    virtual ~ComoduleAlgebra() = default;
    virtual std::string name() const = 0;
    /// Leading basis elements that generate the conformal algebra P(A) in checks.
    virtual std::size_t generator_count() const = 0;
    virtual std::optional<std::size_t> rank() const = 0;
    virtual std::string basis_label(std::size_t i) const = 0;
    virtual std::map<std::size_t, Rational> multiply(std::size_t i, std::size_t j) const = 0;
    virtual std::vector<CoactionTerm> coaction(std::size_t i) const = 0;
};

struct ComoduleAlgebraDef {
    OrdinaryAlgebraDef base;
    std::map<std::size_t, std::vector<CoactionTerm>> coaction;
};

class FiniteComoduleAlgebra final : public ComoduleAlgebra {
public:
    explicit FiniteComoduleAlgebra(ComoduleAlgebraDef def);

    std::string name() const override { return def_.base.name; }
    std::size_t generator_count() const override { return def_.base.dim(); }
    std::optional<std::size_t> rank() const override { return def_.base.dim(); }
    std::string basis_label(std::size_t i) const override { return def_.base.basis.at(i); }
    std::map<std::size_t, Rational> multiply(std::size_t i, std::size_t j) const override;
    std::vector<CoactionTerm> coaction(std::size_t i) const override;

    const ComoduleAlgebraDef& definition() const { return def_; }

private:
    ComoduleAlgebraDef def_;
};

/// A[t] = A ⊗ k[t] with a⊗t^n ↦ Σ_s C(n,s) D^s ⊗ (a⊗t^{n-s}).
///
/// The basis is infinite (index = degree·dim A + a); only the elements of
/// t-degree ≤ K count as generators. Products are exact: (a⊗t^i)(b⊗t^j) = ab⊗t^{i+j}.
class PolynomialComodule final : public ComoduleAlgebra {
public:
    PolynomialComodule(OrdinaryAlgebraDef base, unsigned max_degree);

    std::string name() const override;
    std::size_t generator_count() const override { return base_.dim() * (max_degree_ + 1); }
    std::optional<std::size_t> rank() const override { return std::nullopt; }
    std::string basis_label(std::size_t i) const override;
    std::map<std::size_t, Rational> multiply(std::size_t i, std::size_t j) const override;
    std::vector<CoactionTerm> coaction(std::size_t i) const override;

    std::size_t index(std::size_t a, unsigned degree) const { return degree * base_.dim() + a; }
    const OrdinaryAlgebraDef& base() const { return base_; }
    unsigned max_degree() const { return max_degree_; }

    /// The span of degrees ≤ K as a finite comodule algebra. Throws ClosureError
    /// when a product of two such elements has degree > K.
    ComoduleAlgebraDef to_definition() const;

private:
    OrdinaryAlgebraDef base_;
    unsigned max_degree_;
};

OrdinaryAlgebraDef polynomial_base(const OrdinaryAlgebraDef& alg, unsigned max_degree);

/// Every e_i ↦ 1 ⊗ e_i.
ComoduleAlgebraDef trivial_comodule(const OrdinaryAlgebraDef& alg);

/// Counit, coassociativity and multiplicativity on basis indices < count.
/// Returns a list of human-readable violations.
std::vector<std::string> validate_comodule(const ComoduleAlgebra& m, std::size_t count);

/// P(A) with (h⊗a)*(g⊗b) = h b_(1) ⊗ g a_(1) ⊗_H (1 ⊗ a_(2) b_(2)), read back
/// as n-products through the pseudoproduct.
std::shared_ptr<const ConformalAlgebra> pseudo_of_comodule(std::shared_ptr<const ComoduleAlgebra> m);

/// Same basis, pseudoproduct a*b ± (τ12 ⊗_H id)(b*a).
std::shared_ptr<const ConformalAlgebra> plus_minus_algebra(std::shared_ptr<const ConformalAlgebra> base,
                                                           Sign sign);

// ---------------------------------------------------------------------------
// Registry and the Artin computation

/// virasoro, cur-m2, cur-sl2, cur-octonions, p-oct-tK, p-m2-tK, p-sl2-tK, each
/// optionally suffixed with "+" or "-" for the plus/minus structure.
std::shared_ptr<const ConformalAlgebra> builtin_algebra(const std::string& name);
const std::vector<std::string>& builtin_algebra_names();

struct ArtinReport {
    std::shared_ptr<const ConformalAlgebra> algebra;
    PseudoElement result;   ///< (x*y)*x - x*(y*x)
    PseudoElement expected; ///< normal form of the closed-form display
    ConformalElement bca;   ///< 1⊗{b,c,a}⊗1
    ConformalElement acb;   ///< 1⊗{a,c,b}⊗1
    bool matches() const { return result == expected; }
    bool nonzero() const { return !result.is_zero(); }
};

/// x = 1⊗(a⊗t + b⊗1), y = 1⊗(c⊗1) in P(A[t]). Defaults: octonions, a=e1, b=e2, c=e4.
ArtinReport artin_counterexample(const OrdinaryAlgebraDef& alg, std::size_t a, std::size_t b, std::size_t c);
ArtinReport artin_counterexample();

} // namespace confalg
