#pragma once

// f ↦ f*: ordinary identities read in the pseudoproduct, and the emission of
// the corresponding families of conformal identities.
//
// A term c·t(x_{1σ}, ..., x_{nσ}) of f becomes c·(σ ⊗_H id) t*(x_{1σ}, ..., x_{nσ}),
// where t* nests expanded pseudoproducts along the bracketing. When the
// arguments are themselves pseudo-elements of arities m_i, σ is replaced by
// the block permutation σ_π, π = (m_1, ..., m_n).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/identities.hpp"
#include "confalg/pseudo.hpp"

namespace confalg {

class PseudoIdentity {
public:
    explicit PseudoIdentity(Identity f) : f_(std::move(f)) {}

    unsigned arity() const { return f_.arity(); }
    const std::vector<Identity::Term>& terms() const { return f_.terms(); }
    const Identity& ordinary() const { return f_; }
    bool is_zero() const { return f_.is_zero(); }

    /// "(a*b)*c - a*(b*c)", wrappers as "(σ[2,1,3] ⊗_H id)(...)".
    std::string to_string() const;
    std::string to_latex() const;

private:
    Identity f_;
};

PseudoIdentity translate(const Identity& f);

/// Variable names used in pseudo and conformal renderings: a, b, c, ...
std::string variable_name(unsigned one_based);

/// t*(args) for a bracketing whose leaves are variable indices into args.
PseudoElement evaluate_monomial(const MonomialTree& t, const std::vector<PseudoElement>& args);

/// f*(A_1, ..., A_n), each term wrapped in σ_π.
PseudoElement evaluate(const PseudoIdentity& f, const std::vector<PseudoElement>& args);
PseudoElement evaluate(const PseudoIdentity& f, const std::vector<ConformalElement>& args);

/// Evaluates on tuples of basis generators, memoizing every subtree value by
/// the generators sitting on its leaves. Not thread-safe; use one per thread.
class BasisEvaluator {
public:
    explicit BasisEvaluator(const ConformalAlgebra& alg) : alg_(&alg) {}
    PseudoElement evaluate(const PseudoIdentity& f, const std::vector<std::size_t>& generators);
    PseudoElement evaluate_term(const Identity::Term& term, const std::vector<std::size_t>& generators);
    std::size_t cache_size() const { return cache_.size(); }

private:
    const PseudoElement& subtree(const MonomialTree& t, const std::vector<std::size_t>& generators);

    const ConformalAlgebra* alg_;
    std::map<std::string, PseudoElement> cache_;
};

/// J*(a,b,c*d) + J*(a,b,c)*d + (σ23 ⊗_H id)(a*J*(c,b,d) + J*(a*c,b,d)),
/// with J*(x,y,z) = (x*y)*z - x*(y*z) + (σ12 ⊗_H id)(y*(x*z)) evaluated via σ_π.
/// On anticommutative algebras this vanishes exactly on the Mal'cev ones. The
/// sign pattern J(a,b,cd) - J(a,b,c)d = aJ(c,b,d) - J(ac,b,d) does not vanish on O^-.
PseudoElement malcev_pseudo_expression(const ConformalElement& a, const ConformalElement& b,
                                       const ConformalElement& c, const ConformalElement& d);

// ---------------------------------------------------------------------------
// Emission

/// Generic conformal algebra on generators x1..xn: e_u ∘_k e_v is a fresh word
/// for k < cutoff and zero otherwise. Words are interned on first use.
class WordAlgebra final : public LazyConformalAlgebra {
public:
    struct Word {
        std::size_t left;
        unsigned index;
        std::size_t right;
    };

    WordAlgebra(unsigned generators, unsigned cutoff);

    std::string name() const override { return "words"; }
    std::size_t generator_count() const override { return generators_; }
    std::optional<std::size_t> rank() const override { return std::nullopt; }
    std::string basis_label(std::size_t i) const override { return render(i, false, true); }

    unsigned cutoff() const { return cutoff_; }
    bool is_generator(std::size_t i) const { return i < generators_; }
    Word word(std::size_t i) const;
    /// "(a ∘_0 b) ∘_1 c"; inner products are parenthesized, the top one only if `top` is false.
    std::string render(std::size_t i, bool latex, bool top) const;

protected:
    std::vector<Coords> compute_products(std::size_t i, std::size_t j) const override;

private:
    std::size_t intern(std::size_t left, unsigned index, std::size_t right) const;

    unsigned generators_;
    unsigned cutoff_;
    mutable std::mutex words_mutex_;
    mutable std::vector<Word> words_;
    mutable std::map<std::tuple<std::size_t, unsigned, std::size_t>, std::size_t> index_;
};

enum class Coordinates {
    /// Coefficients of h_{k1} ⊗ … ⊗ h_{k_{n-1}} ⊗ 1, h_k = (-D)^k/k!.
    direct,
    /// Coefficients of (h_{k1}⊗1…)(Δ(h_{k2})⊗1…)…Δ^{(n-1)}(h_{k_{n-1}}): the left-normed
    /// products ((x1 x2) x3)… have a single term here.
    left_normed,
};

/// Rewrites a normal-form element in the chosen coordinates: index tuple ↦ value.
std::map<Exponents, Coords> coordinates(const PseudoElement& a, Coordinates coords);

struct ConformalInstance {
    std::vector<unsigned> indices;
    ConformalElement value; ///< over the emitting WordAlgebra

    /// "n=0, m=1: (a ∘_0 b) ∘_1 c - a ∘_0 (b ∘_1 c) = 0"
    std::string to_string() const;
    std::string to_latex() const;
};

struct EmittedFamily {
    std::shared_ptr<const WordAlgebra> words;
    PseudoIdentity identity;
    unsigned cutoff;
    Coordinates coords;
    std::vector<ConformalInstance> instances;

    std::string to_string() const;
    std::string to_latex() const;
    /// JSON document {identity, cutoff, coordinates, instances: [{indices, terms: [{coeff, d, word}]}]}.
    std::string to_json() const;
};

/// Evaluates f* on the generators of a WordAlgebra(cutoff) and returns one
/// instance per coordinate index tuple. With `all_indices` false, only tuples
/// with every index below the cutoff are kept.
EmittedFamily emit_conformal_form(const Identity& f, unsigned cutoff, Coordinates coords,
                                  bool all_indices = false);

/// Left-normed for arity ≤ 3, direct otherwise.
Coordinates default_coordinates(unsigned arity);

/// Substitutes concrete elements for the generators of a word expression.
ConformalElement instantiate(const WordAlgebra& words, const ConformalElement& value,
                             const std::vector<ConformalElement>& args);

const char* coordinates_name(Coordinates c);

} // namespace confalg
