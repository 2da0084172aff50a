#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "confalg/pseudo.hpp"
#include "support.hpp"

using namespace confalg;
using testing_support::Gen;
using testing_support::kCases;
using testing_support::blockwise_coproduct;
using testing_support::random_permutation;

namespace {

Exponents ex(std::initializer_list<unsigned> v) { return Exponents(v.begin(), v.end()); }

PseudoElement random_pseudo(Gen& g, const ConformalAlgebra& alg, unsigned arity)
{
    PseudoElement r(alg, arity);
    unsigned count = 1 + g.natural(3);
    for (unsigned t = 0; t < count; ++t) {
        Exponents key;
        for (unsigned s = 0; s + 1 < arity; ++s) {
            key.push_back(g.natural(3));
        }
        r.add(key, g.element(alg, 2).coords());
    }
    return r;
}

} // namespace

TEST_CASE("normal form examples")
{
    FiniteConformalAlgebra vir(testing_support::virasoro_table());
    Coords c{{0, DPoly(1)}};
    RawPseudoElement raw{2, {{ex({0, 1}), c}}};
    PseudoElement expected(vir, 2);
    expected.add(ex({0}), Coords{{0, DPoly::d()}});
    expected.add(ex({1}), c, Rational(-1));
    CHECK(to_normal_form(vir, raw) == expected);

    RawPseudoElement normal{2, {{ex({3, 0}), c}}};
    PseudoElement e2(vir, 2);
    e2.add(ex({3}), c);
    CHECK(to_normal_form(vir, normal) == e2);

    RawPseudoElement zero{2, {{ex({0, 0}), Coords{}}}};
    CHECK(to_normal_form(vir, zero).is_zero());

    // arity 1: D^k ⊗_H c = D^k c
    RawPseudoElement one{1, {{ex({2}), c}}};
    PseudoElement e3(vir, 1);
    e3.add(ex({}), Coords{{0, DPoly::monomial(2)}});
    CHECK(to_normal_form(vir, one) == e3);
}

TEST_CASE("pseudo products")
{
    FiniteConformalAlgebra vir(testing_support::virasoro_table());
    auto L = ConformalElement::basis(vir, 0);
    PseudoElement ll = pseudo_product(L, L);
    PseudoElement expected(vir, 2);
    expected.add(ex({0}), Coords{{0, DPoly::d()}});
    expected.add(ex({1}), Coords{{0, DPoly(-2)}});
    CHECK(ll == expected);
    CHECK(ll.to_string() == "(1⊗1) ⊗_H (D L) + (D⊗1) ⊗_H (-2 L)");

    FiniteConformalAlgebra m2(testing_support::current_m2_table());
    auto e11 = ConformalElement::basis(m2, 0);
    auto e12 = ConformalElement::basis(m2, 1);
    PseudoElement p = pseudo_product(e11, e12);
    PseudoElement q(m2, 2);
    q.add(ex({0}), e12.coords());
    CHECK(p == q);
    CHECK(pseudo_product(ConformalElement(m2), e12).is_zero());

    // H-bilinearity on a basis pair
    auto DL = ConformalElement::basis(vir, 0, DPoly::d());
    CHECK(pseudo_product(DL, L) == left_multiply(TensorPoly::monomial(ex({1, 0})), ll));
}

TEST_CASE("expanded products")
{
    FiniteConformalAlgebra vir(testing_support::virasoro_table());
    auto L = ConformalElement::basis(vir, 0);
    auto A = PseudoElement::from_element(L);
    CHECK(expanded_product(A, A) == pseudo_product(L, L));
    CHECK(expanded_product(A, PseudoElement(vir, 1)).is_zero());
    PseudoElement abc = expanded_product(pseudo_product(L, L), A);
    CHECK(abc.arity() == 3);
    PseudoElement abc2 = expanded_product(A, pseudo_product(L, L));
    CHECK(abc2.arity() == 3);
}

TEST_CASE("permutations")
{
    auto s = Permutation::from_images({2, 3, 1});
    auto t = Permutation::from_images({2, 1, 3});
    CHECK(s.then(t).one_line() == std::vector<unsigned>{1, 3, 2});
    CHECK(s.then(s.inverse()).is_identity());
    CHECK_THROWS(Permutation::from_images({1, 1}));
    CHECK(s.to_string() == "[2,3,1]");
}

TEST_CASE("permute examples")
{
    FiniteConformalAlgebra dual(testing_support::current_dual_numbers_table());
    auto u = ConformalElement::basis(dual, 0);
    auto x = ConformalElement::basis(dual, 1, DPoly::parse("D + 2"));
    auto tau = Permutation::transposition(1, 2, 2);
    CHECK(permute(tau, pseudo_product(u, x)) == pseudo_product(x, u));
    CHECK(permute(Permutation::identity(2), pseudo_product(u, x)) == pseudo_product(u, x));

    FiniteConformalAlgebra vir(testing_support::virasoro_table());
    PseudoElement a(vir, 2);
    a.add(ex({2}), Coords{{0, DPoly(1)}});
    RawPseudoElement swapped{2, {{ex({0, 2}), Coords{{0, DPoly(1)}}}}};
    CHECK(permute(tau, a) == to_normal_form(vir, swapped));
    CHECK_THROWS(permute(Permutation::identity(3), a));
}

TEST_CASE("expand_permutation examples")
{
    auto id = Permutation::identity(3);
    CHECK(expand_permutation(id, {2, 1, 3}).is_identity());
    auto tau = Permutation::transposition(1, 2, 2);
    CHECK(expand_permutation(tau, {1, 1}) == tau);
    // Block (x1 x2) of the argument moved to position 2 lands after block (x3).
    CHECK(expand_permutation(tau, {2, 1}).one_line() == std::vector<unsigned>{3, 1, 2});
    // Block relation on F = D⊗1 with π = (2,1): σ(F) = 1⊗D, expanded: 1⊗1⊗D.
    TensorPoly f = TensorPoly::monomial(ex({1, 0}));
    TensorPoly lhs = permute(expand_permutation(tau, {2, 1}), blockwise_coproduct(f, {1, 2}));
    TensorPoly rhs = blockwise_coproduct(permute(tau, f), {2, 1});
    CHECK(lhs == rhs);
    CHECK(rhs == TensorPoly::monomial(ex({0, 0, 1})));
}

TEST_CASE("plus and minus products")
{
    FiniteConformalAlgebra m2(testing_support::current_m2_table());
    auto e11 = ConformalElement::basis(m2, 0);
    auto e12 = ConformalElement::basis(m2, 1);
    PseudoElement expected(m2, 2);
    expected.add(ex({0}), e12.coords());
    CHECK(plus_minus_product(e11, e12, Sign::plus) == expected);
    CHECK(plus_minus_product(e11, e11, Sign::minus).is_zero());

    FiniteConformalAlgebra dual(testing_support::current_dual_numbers_table());
    Gen g(3);
    for (int i = 0; i < 20; ++i) {
        auto a = g.element(dual, 3);
        auto b = g.element(dual, 3);
        CHECK(plus_minus_product(a, b, Sign::minus).is_zero());
    }
}

TEST_CASE("property: H-bilinearity")
{
    Gen g(301);
    FiniteConformalAlgebra vir(testing_support::virasoro_table());
    for (int c = 0; c < kCases; ++c) {
        FiniteConformalAlgebra rnd(g.algebra_def(2, 3));
        const ConformalAlgebra& alg = (c % 2 == 0) ? static_cast<const ConformalAlgebra&>(vir) : rnd;
        auto a = g.element(alg, 2);
        auto b = g.element(alg, 2);
        DPoly f = g.dpoly(3);
        DPoly h = g.dpoly(3);
        TensorPoly fg = TensorPoly::tensor({f, h});
        REQUIRE(pseudo_product(f * a, h * b) == left_multiply(fg, pseudo_product(a, b)));
    }
}

TEST_CASE("property: normal form respects the tensor relation")
{
    // (F·h) ⊗_H c and F ⊗_H hc normalize to the same element.
    Gen g(302);
    FiniteConformalAlgebra alg(g.algebra_def(2, 2));
    for (int c = 0; c < kCases; ++c) {
        unsigned n = 1 + g.natural(3);
        TensorPoly f = g.tensor(n, 3, 3);
        DPoly h = g.dpoly(3);
        auto x = g.element(alg, 2);
        RawPseudoElement lhs{n, {}};
        TensorPoly fh = diagonal_action(f, h);
        for (const auto& [e, q] : fh.terms()) {
            add_to(lhs.terms[e], x.coords(), q);
        }
        RawPseudoElement rhs{n, {}};
        ConformalElement hx = h * x;
        for (const auto& [e, q] : f.terms()) {
            add_to(rhs.terms[e], hx.coords(), q);
        }
        PseudoElement nl = to_normal_form(alg, lhs);
        REQUIRE(nl == to_normal_form(alg, rhs));
        REQUIRE(to_normal_form(alg, nl.to_raw()) == nl);
    }
}

TEST_CASE("property: permute is a group action")
{
    Gen g(303);
    FiniteConformalAlgebra alg(g.algebra_def(2, 2));
    for (int c = 0; c < kCases; ++c) {
        unsigned n = 1 + g.natural(3);
        PseudoElement a = random_pseudo(g, alg, n);
        Permutation s = random_permutation(g, n);
        Permutation t = random_permutation(g, n);
        REQUIRE(permute(s.then(t), a) == permute(t, permute(s, a)));
        REQUIRE(permute(s.inverse(), permute(s, a)) == a);
    }
}

TEST_CASE("property: block permutation identity")
{
    Gen g(304);
    for (int c = 0; c < kCases; ++c) {
        unsigned n = 1 + g.natural(3);
        std::vector<unsigned> m(n);
        for (auto& x : m) {
            x = 1 + g.natural(2);
        }
        Permutation s = random_permutation(g, n);
        TensorPoly f = g.tensor(n, 3, 3);
        std::vector<unsigned> src(n);
        for (unsigned j = 0; j < n; ++j) {
            src[j] = m[s(j)];
        }
        TensorPoly lhs = permute(expand_permutation(s, m), blockwise_coproduct(f, src));
        TensorPoly rhs = blockwise_coproduct(permute(s, f), m);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("property: expanded products compose")
{
    Gen g(305);
    FiniteConformalAlgebra alg(g.algebra_def(2, 2));
    for (int c = 0; c < kCases; ++c) {
        auto a = g.element(alg, 2);
        auto b = g.element(alg, 2);
        auto x = g.element(alg, 2);
        auto A = PseudoElement::from_element(a);
        auto B = PseudoElement::from_element(b);
        auto C = PseudoElement::from_element(x);
        REQUIRE(expanded_product(A, B) == pseudo_product(a, b));
        auto left = expanded_product(expanded_product(A, B), C);
        auto right = expanded_product(A, expanded_product(B, C));
        REQUIRE(left.arity() == 3);
        REQUIRE(right.arity() == 3);
        // linearity in the outer factor
        REQUIRE(expanded_product(expanded_product(A, B) + expanded_product(B, A), C)
                == left + expanded_product(expanded_product(B, A), C));
    }
}
