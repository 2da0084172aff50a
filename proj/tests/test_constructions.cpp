#include <catch2/catch_amalgamated.hpp>

#include "confalg/constructions.hpp"
#include "ordinary_oracles.hpp"
#include "support.hpp"

using namespace confalg;

namespace {

Vector assoc(const OrdinaryAlgebraDef& a, std::size_t i, std::size_t j, std::size_t k)
{
    Vector l = a.multiply(a.multiply(a.unit_vector(i), a.unit_vector(j)), a.unit_vector(k));
    Vector r = a.multiply(a.unit_vector(i), a.multiply(a.unit_vector(j), a.unit_vector(k)));
    for (std::size_t x = 0; x < l.size(); ++x) {
        l[x] -= r[x];
    }
    return l;
}

bool all_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

} // namespace

TEST_CASE("ordinary built-ins")
{
    OrdinaryAlgebraDef o = octonions();
    CHECK(o.dim() == 8);
    CHECK_FALSE(all_zero(assoc(o, 1, 2, 4)));
    CHECK(ordinary_witness(o, builtin_identity("left-alternative")) == std::nullopt);
    CHECK(ordinary_witness(o, builtin_identity("right-alternative")) == std::nullopt);
    CHECK(ordinary_witness(o, builtin_identity("associative")).has_value());
    // e_i^2 = -1 and the units anticommute
    for (std::size_t i = 1; i < 8; ++i) {
        CHECK(o.multiply(o.unit_vector(i), o.unit_vector(i)) == testing_support::add(Vector(8, 0), o.unit_vector(0), -1));
        for (std::size_t j = 1; j < 8; ++j) {
            if (i != j) {
                CHECK(o.multiply(o.unit_vector(i), o.unit_vector(j))
                      == testing_support::add(Vector(8, 0), o.multiply(o.unit_vector(j), o.unit_vector(i)), -1));
            }
        }
    }
    // the norm is multiplicative: |xy|^2 = |x|^2 |y|^2 on random integer vectors
    testing_support::Gen g(11);
    auto norm = [](const Vector& v) {
        Rational s = 0;
        for (const auto& x : v) {
            s += x * x;
        }
        return s;
    };
    for (int c = 0; c < 50; ++c) {
        Vector x(8), y(8);
        for (auto& v : x) {
            v = g.integer(-3, 3);
        }
        for (auto& v : y) {
            v = g.integer(-3, 3);
        }
        CHECK(norm(o.multiply(x, y)) == norm(x) * norm(y));
    }

    OrdinaryAlgebraDef m = matrix_algebra(2);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(all_zero(assoc(m, i, j, k)));
            }
        }
    }
    OrdinaryAlgebraDef s = sl2();
    CHECK(ordinary_witness(s, builtin_identity("anticommutative")) == std::nullopt);
    CHECK(ordinary_witness(s, builtin_identity("jacobi")) == std::nullopt);
    CHECK(ordinary_witness(s, builtin_identity("associative")).has_value());
}

TEST_CASE("current algebras")
{
    auto def = current_algebra(matrix_algebra(2));
    CHECK(def.rank() == 4);
    CHECK(validate_definition(def).ok());
    CHECK(def.bound(0, 1) == 1);
    CHECK(def.bound(1, 1) == 0);
    FiniteConformalAlgebra cur(def);
    auto e11 = ConformalElement::basis(cur, 0);
    auto e12 = ConformalElement::basis(cur, 1);
    CHECK(n_product(e11, e12, 0) == e12);
    CHECK(n_product(e11, e12, 1).is_zero());

    OrdinaryAlgebraDef empty;
    empty.name = "zero";
    auto z = current_algebra(empty);
    CHECK(z.rank() == 0);
    CHECK(validate_definition(z).ok());
    CHECK_NOTHROW(FiniteConformalAlgebra(z));
}

TEST_CASE("virasoro definition")
{
    auto def = virasoro();
    CHECK(validate_definition(def).ok());
    CHECK(def.table == testing_support::virasoro_table().table);
}

TEST_CASE("polynomial comodule")
{
    OrdinaryAlgebraDef o = octonions();
    PolynomialComodule m(o, 2);
    std::size_t a = 3;
    CHECK(m.coaction(m.index(a, 1)) == std::vector<CoactionTerm>{{0, m.index(a, 1), 1}, {1, m.index(a, 0), 1}});
    CHECK(m.coaction(m.index(a, 0)) == std::vector<CoactionTerm>{{0, m.index(a, 0), 1}});
    CHECK(m.coaction(m.index(a, 2))
          == std::vector<CoactionTerm>{{0, m.index(a, 2), 1}, {1, m.index(a, 1), 2}, {2, m.index(a, 0), 1}});
    CHECK(m.basis_label(m.index(a, 1)) == "e3⊗t");
    CHECK(validate_comodule(m, m.generator_count()).empty());
    CHECK(m.generator_count() == 24);
    CHECK_FALSE(m.rank().has_value());

    // Degree-≤K spans are not closed once K ≥ 1.
    CHECK_THROWS_AS(PolynomialComodule(o, 1).to_definition(), ClosureError);
    auto zero = PolynomialComodule(o, 0).to_definition();
    CHECK(zero.base.dim() == 8);
    CHECK_NOTHROW(FiniteComoduleAlgebra(zero));

    // A broken coaction is rejected.
    ComoduleAlgebraDef bad = trivial_comodule(matrix_algebra(2));
    bad.coaction[0] = {{1, 0, 1}};
    CHECK_THROWS_AS(FiniteComoduleAlgebra(bad), DefinitionError);
}

TEST_CASE("P(A) with trivial coaction is the current algebra")
{
    for (const auto& alg : {matrix_algebra(2), octonions(), sl2()}) {
        auto p = pseudo_of_comodule(std::make_shared<FiniteComoduleAlgebra>(trivial_comodule(alg)));
        auto def = to_definition(*p, alg.dim());
        CHECK(def.table == current_algebra(alg).table);
    }
}

TEST_CASE("P(A[t]) products")
{
    // (a⊗t) ∘_0 (b⊗1) and friends, from e_a*e_b = Σ D^q⊗D^p ⊗_H e_{a'b'}.
    auto m = std::make_shared<PolynomialComodule>(matrix_algebra(2), 1);
    auto p = pseudo_of_comodule(m);
    auto x = [&](std::size_t a, unsigned d) { return ConformalElement::basis(*p, m->index(a, d)); };
    // e11⊗t * e12⊗1 = 1⊗1 ⊗_H e12⊗t + 1⊗D ⊗_H e12⊗1
    //               = 1⊗1 ⊗_H (e12⊗t + D e12⊗1) - D⊗1 ⊗_H e12⊗1
    CHECK(n_product(x(0, 1), x(1, 0), 0) == x(1, 1) + DPoly::d() * x(1, 0));
    CHECK(n_product(x(0, 1), x(1, 0), 1) == x(1, 0));
    CHECK(n_product(x(0, 1), x(1, 0), 2).is_zero());
    // e11⊗1 * e12⊗t = 1⊗1 ⊗_H e12⊗t + D⊗1 ⊗_H e12⊗1: key 1 carries -(a ∘_1 b)
    CHECK(n_product(x(0, 0), x(1, 1), 0) == x(1, 1));
    CHECK(n_product(x(0, 0), x(1, 1), 1) == Rational(-1) * x(1, 0));
    CHECK(p->name() == "P(m2[t]<=1)");
}

TEST_CASE("plus and minus structures")
{
    auto plus = builtin_algebra("cur-m2+");
    auto e11 = ConformalElement::basis(*plus, 0);
    auto e12 = ConformalElement::basis(*plus, 1);
    CHECK(n_product(e11, e12, 0) == e12);
    auto minus = builtin_algebra("cur-m2-");
    CHECK(n_product(ConformalElement::basis(*minus, 0), ConformalElement::basis(*minus, 0), 0).is_zero());
    CHECK(minus->name() == "cur-m2-");
    // Virasoro is already Lie: its minus structure doubles the bracket.
    auto vm = builtin_algebra("virasoro-");
    auto L = ConformalElement::basis(*vm, 0);
    CHECK(n_product(L, L, 0) == Rational(2) * (DPoly::d() * L));
    CHECK(n_product(L, L, 1) == Rational(4) * L);
}

TEST_CASE("registry")
{
    for (const auto& n : builtin_algebra_names()) {
        auto a = builtin_algebra(n);
        REQUIRE(a != nullptr);
        CHECK(a->generator_count() > 0);
    }
    CHECK(builtin_algebra("p-oct-t1")->generator_count() == 16);
    CHECK(builtin_algebra("p-m2-t2")->generator_count() == 12);
    CHECK_THROWS_AS(builtin_algebra("nope"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_algebra("cur-foo"), std::invalid_argument);
}

TEST_CASE("Artin counterexample")
{
    ArtinReport r = artin_counterexample();
    CHECK(r.nonzero());
    CHECK(r.matches());
    CHECK_FALSE(r.bca.is_zero());
    CHECK_FALSE(r.acb.is_zero());
    CHECK(r.result.arity() == 3);

    ArtinReport m = artin_counterexample(matrix_algebra(2), 0, 1, 2);
    CHECK(m.result.is_zero());
    CHECK(m.matches());
}
