#pragma once

// Finite-rank conformal algebras over H = k[D].
//
// A conformal algebra here is a free H-module with basis e_0, e_1, ... and
// n-products e_i ∘_n e_j given for n below a per-pair locality bound N(i,j).
// Products of arbitrary elements follow from sesquilinearity:
//
//     Da ∘_n b = -n a ∘_{n-1} b,     a ∘_n Db = D(a ∘_n b) + n a ∘_{n-1} b.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "confalg/dpoly.hpp"

namespace confalg {

/// Basis index → DPoly coefficient. Zero coefficients are never stored.
using Coords = std::map<std::size_t, DPoly>;

void add_to(Coords& acc, std::size_t basis, const DPoly& p);
void add_to(Coords& acc, const Coords& x, const Rational& scale = 1);
/// Left multiplication of every coefficient by p (the H-module action).
Coords h_action(const DPoly& p, const Coords& x);

class DefinitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Abstract conformal algebra presented on a basis.
///
/// Implementations may be finite tables or lazily generated (the comodule and
/// word algebras); `generator_count` is the number of leading basis elements
/// the checkers quantify over.
class ConformalAlgebra {
public:
    virtual ~ConformalAlgebra() = default;

    virtual std::string name() const = 0;
    virtual std::size_t generator_count() const = 0;
    /// Rank of the underlying free module, or nullopt if generated lazily.
    virtual std::optional<std::size_t> rank() const = 0;
    virtual std::string basis_label(std::size_t i) const = 0;
    /// e_i ∘_n e_j for n = 0 .. N(i,j)-1; the vector size is the locality bound.
    virtual const std::vector<Coords>& basis_products(std::size_t i, std::size_t j) const = 0;
};

/// Base for algebras whose products are computed on demand and memoized.
class LazyConformalAlgebra : public ConformalAlgebra {
public:
    const std::vector<Coords>& basis_products(std::size_t i, std::size_t j) const final;

protected:
    virtual std::vector<Coords> compute_products(std::size_t i, std::size_t j) const = 0;

private:
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Coords>> cache_;
};

class ConformalElement {
public:
    ConformalElement() = default;
    explicit ConformalElement(const ConformalAlgebra& parent, Coords coords = {});

    static ConformalElement basis(const ConformalAlgebra& parent, std::size_t i,
                                  const DPoly& coeff = DPoly(1));

    const ConformalAlgebra* parent() const { return parent_; }
    const Coords& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    ConformalElement& operator+=(const ConformalElement& o);
    ConformalElement& operator-=(const ConformalElement& o);
    ConformalElement& operator*=(const Rational& c);
    friend ConformalElement operator+(ConformalElement a, const ConformalElement& b) { return a += b; }
    friend ConformalElement operator-(ConformalElement a, const ConformalElement& b) { return a -= b; }
    friend ConformalElement operator*(ConformalElement a, const Rational& c) { return a *= c; }
    friend ConformalElement operator*(const Rational& c, ConformalElement a) { return a *= c; }
    /// H-module action p(D)·a.
    friend ConformalElement operator*(const DPoly& p, const ConformalElement& a);

    /// Equality of coordinates; elements of different algebras are unequal
    /// unless both are zero.
    friend bool operator==(const ConformalElement& a, const ConformalElement& b);

    std::string to_string() const;
    std::string to_latex() const;

private:
    void adopt_parent(const ConformalElement& o);

    const ConformalAlgebra* parent_ = nullptr;
    Coords coords_;
};

/// Shared parent of two operands; zero elements adopt the other's parent.
/// Throws DefinitionError when both are nonzero and belong to different algebras.
const ConformalAlgebra* common_parent(const ConformalElement& a, const ConformalElement& b);

/// a ∘_n b, extended from the basis table by sesquilinearity (D stripped from the
/// left argument first, then from the right).
ConformalElement n_product(const ConformalElement& a, const ConformalElement& b, unsigned n);

/// Coordinates of (D^p e_i) ∘_n (D^q e_j) for basis indices.
Coords basis_n_product(const ConformalAlgebra& alg, std::size_t i, unsigned p, std::size_t j,
                       unsigned q, unsigned n);

/// Least N with a ∘_n b = 0 for all n >= N.
unsigned locality_bound(const ConformalElement& a, const ConformalElement& b);

/// Cheap upper estimate of locality_bound: max over supports of N(i,j) + deg p + deg q.
unsigned locality_estimate(const ConformalElement& a, const ConformalElement& b);

/// A finite table presentation, the value type behind files and built-ins.
struct ConformalAlgebraDef {
    std::string name;
    std::vector<std::string> basis;
    /// (i, j, n) → e_i ∘_n e_j.
    std::map<std::tuple<std::size_t, std::size_t, unsigned>, Coords> table;
    /// (i, j) → N(i,j); missing pairs have bound 0.
    std::map<std::pair<std::size_t, std::size_t>, unsigned> locality;

    std::size_t rank() const { return basis.size(); }
    unsigned bound(std::size_t i, std::size_t j) const;
    /// Sets N(i,j) to max n + 1 over the table entries for each pair.
    void infer_locality();
};

struct Violation {
    enum class Kind { beyond_locality, missing_entry, basis_index, locality_index, duplicate_symbol };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::map<std::pair<std::size_t, std::size_t>, unsigned> locality;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Checks table completeness and index ranges; says nothing about varieties.
ValidationReport validate_definition(const ConformalAlgebraDef& def);

/// Table-backed algebra. Construction validates and throws DefinitionError
/// listing the violations.
class FiniteConformalAlgebra final : public ConformalAlgebra {
public:
    explicit FiniteConformalAlgebra(ConformalAlgebraDef def);

    std::string name() const override { return def_.name; }
    std::size_t generator_count() const override { return def_.rank(); }
    std::optional<std::size_t> rank() const override { return def_.rank(); }
    std::string basis_label(std::size_t i) const override { return def_.basis.at(i); }
    const std::vector<Coords>& basis_products(std::size_t i, std::size_t j) const override;

    const ConformalAlgebraDef& definition() const { return def_; }

private:
    ConformalAlgebraDef def_;
    std::vector<std::vector<std::vector<Coords>>> products_;
};

/// Materializes the table of any algebra restricted to the given basis range.
/// Products leaving the range throw DefinitionError.
ConformalAlgebraDef to_definition(const ConformalAlgebra& alg, std::size_t basis_count);

} // namespace confalg
