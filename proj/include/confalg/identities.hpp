#pragma once

// Homogeneous nonassociative polynomials and multilinear identities.
//
// A multilinear identity of degree n is stored as Σ c·t(x_{1σ}, ..., x_{nσ}):
// a bracketing t whose leaves are the positions 1..n from left to right, and a
// permutation σ saying which variable sits at each position.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confalg/pseudo.hpp"
#include "confalg/rational.hpp"

namespace confalg {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    /// 0-based offset into the input.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class MultilinearityError : public std::runtime_error {
public:
    MultilinearityError(const std::string& message, unsigned variable);
    /// Offending variable index (1-based), or 0 when not tied to one variable.
    unsigned variable() const { return variable_; }

private:
    unsigned variable_;
};

/// Binary bracketing with variable indices (1-based) on the leaves.
class MonomialTree {
public:
    static MonomialTree leaf(unsigned variable);
    static MonomialTree product(MonomialTree left, MonomialTree right);

    bool is_leaf() const { return node_ == nullptr; }
    unsigned variable() const { return variable_; }
    const MonomialTree& left() const;
    const MonomialTree& right() const;

    unsigned degree() const;
    /// Leaf labels, left to right.
    std::vector<unsigned> variables() const;
    /// Same bracketing with leaves relabeled in left-to-right order.
    MonomialTree relabel(const std::vector<unsigned>& labels) const;
    /// Leaves numbered 1..n from the left.
    MonomialTree positions() const;
    /// Bracketing only, e.g. "((..).)".
    std::string shape() const;

    /// "(x1 x2) x3": every non-leaf factor is parenthesized.
    std::string to_string() const;
    std::string to_latex() const;

    friend bool operator==(const MonomialTree& a, const MonomialTree& b);
    friend bool operator<(const MonomialTree& a, const MonomialTree& b);

private:
    struct Node;
    unsigned variable_ = 0;
    std::shared_ptr<const Node> node_;

    void collect(std::vector<unsigned>& out) const;
    MonomialTree relabel_from(const std::vector<unsigned>& labels, std::size_t& next) const;
};

/// Evaluates a bracketing bottom-up: leaves map to args[v-1], nodes to mul(l, r).
template <class T, class Mul>
T evaluate_tree(const MonomialTree& t, const std::vector<T>& args, Mul&& mul)
{
    if (t.is_leaf()) {
        return args.at(t.variable() - 1);
    }
    return mul(evaluate_tree(t.left(), args, mul), evaluate_tree(t.right(), args, mul));
}

/// Arbitrary (possibly non-multilinear) linear combination of monomials.
struct Polynomial {
    struct Term {
        Rational coeff;
        MonomialTree tree;
    };
    std::vector<Term> terms;

    std::string to_string() const;
};

/// Parses the identity grammar; `LHS = RHS` becomes LHS - RHS.
/// Throws ParseError with the offending position.
Polynomial parse_polynomial(std::string_view text);

class Identity {
public:
    struct Term {
        Rational coeff;
        Permutation sigma;
        /// Leaves are positions 1..n in order.
        MonomialTree tree;

        /// The tree with x_{iσ} at position i.
        MonomialTree monomial() const;
    };

    Identity() = default;
    /// Collects, cancels and sorts terms. Every term must have degree `arity`.
    Identity(unsigned arity, std::vector<Term> terms);
    /// Checks multilinearity in x1..xn and converts. Throws MultilinearityError.
    static Identity from_polynomial(const Polynomial& p);

    unsigned arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Polynomial to_polynomial() const;
    std::string to_string() const;
    std::string to_latex() const;

    friend bool operator==(const Identity& a, const Identity& b);

private:
    unsigned arity_ = 0;
    std::vector<Term> terms_;
};

/// Parses and requires multilinearity in exactly x1..xn.
Identity parse_identity(std::string_view text);

/// Full polarization. A variable of degree d is replaced by d consecutive fresh
/// variables (in variable order) and the sum runs over all assignments; no
/// division by the multiplicity. Throws MultilinearityError on non-homogeneous input.
Identity multilinearize(const Polynomial& p);

/// associative, commutative, anticommutative, jacobi, jordan,
/// left-alternative, right-alternative, malcev. Throws std::invalid_argument.
Identity builtin_identity(std::string_view name);
const std::vector<std::string>& builtin_identity_names();

} // namespace confalg
