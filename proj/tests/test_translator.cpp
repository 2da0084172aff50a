#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "confalg/constructions.hpp"
#include "confalg/translator.hpp"
#include "goldens.hpp"
#include "support.hpp"

using namespace confalg;
using testing_support::Gen;
using testing_support::kCases;

namespace {

using namespace goldens;

void check_family(const EmittedFamily& fam, const Expected& expected)
{
    std::string why = mismatch(fam, expected);
    INFO(why);
    CHECK(why.empty());
}

PseudoElement random_pseudo(Gen& g, const ConformalAlgebra& alg, unsigned arity)
{
    PseudoElement a = PseudoElement::from_element(g.element(alg, 1));
    if (arity == 1) {
        return left_multiply(g.tensor(1, 2, 2), a);
    }
    // Arity m: F ⊗_H c with F ∈ H^{⊗m}.
    return left_multiply(g.tensor(arity, 2, 2), [&] {
        PseudoElement p(alg, arity);
        ConformalElement x = g.element(alg, 1);
        for (const auto& [i, c] : x.coords()) {
            p.add(Exponents(arity - 1, 0), Coords{{i, c}});
        }
        return p;
    }());
}

} // namespace

TEST_CASE("pseudo translations of the classical identities")
{
    SECTION("associativity")
    {
        PseudoIdentity f = translate(builtin_identity("associative"));
        CHECK(f.to_string() == "(a*b)*c - a*(b*c)");
        CHECK(shapes(f) == associative_shapes());
    }
    SECTION("commutativity and anticommutativity")
    {
        CHECK(translate(builtin_identity("commutative")).to_string() == "a*b - (σ[2,1] ⊗_H id)(b*a)");
        CHECK(shapes(translate(builtin_identity("commutative"))) == commutative_shapes());
        CHECK(translate(builtin_identity("anticommutative")).to_string() == "a*b + (σ[2,1] ⊗_H id)(b*a)");
    }
    SECTION("Jacobi")
    {
        PseudoIdentity f = translate(builtin_identity("jacobi"));
        CHECK(f.to_string() == "(a*b)*c - a*(b*c) + (σ[2,1,3] ⊗_H id)(b*(a*c))");
        CHECK(shapes(f) == jacobi_shapes());
    }
    SECTION("Jordan: the six terms with their wrappers")
    {
        PseudoIdentity f = translate(builtin_identity("jordan"));
CHECK(shapes(f) == jordan_shapes());
        CHECK(f.to_latex().find("\\sigma_{[1,3,2,4]}") != std::string::npos);
    }
    SECTION("alternative laws after polarization")
    {
        // a*(b*c) - (a*b)*c = (σ12)((b*a)*c - b*(a*c)), and the σ23 form for the right law.
        Identity left = multilinearize(parse_polynomial("(x1 x1) x2 - x1 (x1 x2)"));
        Identity left_law = parse_identity("x1 (x2 x3) - (x1 x2) x3 - (x2 x1) x3 + x2 (x1 x3)");
        CHECK(left == Identity(3, [&] {
                  auto ts = left_law.terms();
                  for (auto& t : ts) {
                      t.coeff = -t.coeff;
                  }
                  return ts;
              }()));
        Identity right = multilinearize(parse_polynomial("x1 (x2 x2) - (x1 x2) x2"));
        Identity right_law = parse_identity("x1 (x2 x3) - (x1 x2) x3 - (x1 x3) x2 + x1 (x3 x2)");
        CHECK(right == right_law);
        CHECK(translate(right_law).to_string()
              == "-(a*b)*c + a*(b*c) - (σ[1,3,2] ⊗_H id)((a*c)*b) + (σ[1,3,2] ⊗_H id)(a*(c*b))");
    }
}

TEST_CASE("conformal associativity at cutoff 3")
{
    EmittedFamily fam = emit_conformal_form(builtin_identity("associative"), 3, Coordinates::left_normed);
    check_family(fam, associative(*fam.words, 3));
    CHECK(fam.instances.size() == 9);
    CHECK(fam.instances.front().to_string() == "n=0, m=0: (a ∘_0 b) ∘_0 c - a ∘_0 (b ∘_0 c) = 0");
}

TEST_CASE("conformal (anti)commutativity at cutoff 3")
{
    for (auto [name, sign] : {std::pair{"commutative", -1}, std::pair{"anticommutative", 1}}) {
        INFO(name);
        EmittedFamily fam = emit_conformal_form(builtin_identity(name), 3, Coordinates::direct);
        check_family(fam, commutative(*fam.words, 3, sign));
        // left-normed and direct coordinates agree for arity 2
        EmittedFamily ln = emit_conformal_form(builtin_identity(name), 3, Coordinates::left_normed);
        REQUIRE(ln.instances.size() == fam.instances.size());
        for (std::size_t i = 0; i < ln.instances.size(); ++i) {
            CHECK(ln.instances[i].to_string() == fam.instances[i].to_string());
        }
    }
    EmittedFamily fam = emit_conformal_form(builtin_identity("commutative"), 2, Coordinates::direct);
    CHECK(fam.instances.front().to_string() == "n=0: a ∘_0 b - b ∘_0 a + D(b ∘_1 a) = 0");
}

TEST_CASE("conformal Jacobi identity at cutoff 3")
{
    EmittedFamily fam = emit_conformal_form(builtin_identity("jacobi"), 3, Coordinates::left_normed);
    check_family(fam, jacobi(*fam.words, 3));
}

TEST_CASE("conformal Jordan system at cutoff 2")
{
    EmittedFamily fam = emit_conformal_form(builtin_identity("jordan"), 2, Coordinates::direct);
    check_family(fam, jordan(*fam.words, 2));
    CHECK(fam.instances.size() == 8);
}

TEST_CASE("emission output formats")
{
    EmittedFamily fam = emit_conformal_form(builtin_identity("associative"), 2, Coordinates::left_normed);
    std::string text = fam.to_string();
    CHECK(text.find("f* = (a*b)*c - a*(b*c)") != std::string::npos);
    CHECK(text.find("indices < 2") != std::string::npos);
    std::string tex = fam.to_latex();
    CHECK(tex.find("(a \\circ_{0} b) \\circ_{1} c") != std::string::npos);
    std::string json = fam.to_json();
    CHECK(json.find("\"cutoff\": 2") != std::string::npos);
    CHECK(json.find("\"coordinates\": \"left-normed\"") != std::string::npos);
    CHECK_THROWS_AS(emit_conformal_form(builtin_identity("associative"), 0, Coordinates::direct), std::invalid_argument);
}

TEST_CASE("word algebra")
{
    WordAlgebra w(2, 2);
    auto a = ConformalElement::basis(w, 0);
    auto b = ConformalElement::basis(w, 1);
    CHECK(n_product(a, b, 2).is_zero());
    auto ab = n_product(a, b, 1);
    CHECK(ab == n_product(a, b, 1));
    CHECK(ab.to_string() == "a ∘_1 b");
    CHECK(n_product(ab, a, 0).to_string() == "(a ∘_1 b) ∘_0 a");
    // sesquilinearity still applies to words
    CHECK(n_product(DPoly::d() * a, b, 1) == n_product(a, b, 0) * Rational(-1));
}

TEST_CASE("instantiation of emitted families matches direct evaluation", "[property]")
{
    Gen g(314);
    struct Case {
        std::string name;
        Coordinates coords;
    };
    const std::vector<Case> cases{{"associative", Coordinates::left_normed},
                                  {"jacobi", Coordinates::left_normed},
                                  {"jacobi", Coordinates::direct},
                                  {"commutative", Coordinates::direct}};
    constexpr unsigned cutoff = 8;
    std::vector<EmittedFamily> families;
    for (const auto& c : cases) {
        families.push_back(emit_conformal_form(builtin_identity(c.name), cutoff, c.coords, true));
    }
    for (int i = 0; i < kCases; ++i) {
        const auto& cs = cases[i % cases.size()];
        const auto& fam = families[i % cases.size()];
        FiniteConformalAlgebra alg(g.algebra_def(2, 1));
        std::vector<ConformalElement> args;
        for (unsigned k = 0; k < fam.identity.arity(); ++k) {
            args.push_back(g.element(alg, 1));
        }
        auto direct = coordinates(evaluate(fam.identity, args), cs.coords);
        std::map<Exponents, Coords> from_words;
        for (const auto& inst : fam.instances) {
            ConformalElement v = instantiate(*fam.words, inst.value, args);
            if (!v.is_zero()) {
                from_words.emplace(Exponents(inst.indices.begin(), inst.indices.end()), v.coords());
            }
        }
        INFO(cs.name << " case " << i);
        CHECK(direct == from_words);
    }
}

TEST_CASE("σ_π: identities of Cur A persist on pseudo-elements of any arity", "[property]")
{
    Gen g(2718);
    auto m2 = std::make_shared<FiniteConformalAlgebra>(current_algebra(matrix_algebra(2)));
    auto sl = std::make_shared<FiniteConformalAlgebra>(current_algebra(sl2()));
    PseudoIdentity assoc = translate(builtin_identity("associative"));
    PseudoIdentity jac = translate(builtin_identity("jacobi"));
    PseudoIdentity anti = translate(builtin_identity("anticommutative"));
    PseudoIdentity right = translate(multilinearize(parse_polynomial("x1 (x2 x2) - (x1 x2) x2")));
    for (int i = 0; i < kCases; ++i) {
        auto arity = [&] { return 1 + g.natural(1); };
        std::vector<PseudoElement> xs, ys;
        for (int k = 0; k < 3; ++k) {
            xs.push_back(random_pseudo(g, *m2, arity()));
            ys.push_back(random_pseudo(g, *sl, arity()));
        }
        CHECK(evaluate(assoc, xs).is_zero());
        CHECK(evaluate(right, xs).is_zero());
        CHECK(evaluate(jac, ys).is_zero());
        CHECK(evaluate(anti, {ys[0], ys[1]}).is_zero());
    }
}

TEST_CASE("σ_π matters: plain σ breaks Jacobi on mixed arities")
{
    auto vir = builtin_algebra("virasoro");
    auto L = PseudoElement::from_element(ConformalElement::basis(*vir, 0));
    PseudoElement x = left_multiply(TensorPoly::monomial({1, 0}), expanded_product(L, L));
    PseudoIdentity jac = translate(builtin_identity("jacobi"));
    const std::vector<std::vector<PseudoElement>> tuples{{x, L, L}, {L, x, L}, {L, L, x}};
    bool naive_differs = false;
    for (const auto& args : tuples) {
        CHECK(evaluate(jac, args).is_zero());
        PseudoElement naive(*vir, 4);
        for (const auto& t : jac.terms()) {
            std::vector<unsigned> im = t.sigma.one_line();
            im.push_back(4);
            naive += permute(Permutation::from_images(im), evaluate_monomial(t.monomial(), args)) * t.coeff;
        }
        naive_differs = naive_differs || !naive.is_zero();
    }
    CHECK(naive_differs);
}

TEST_CASE("basis evaluator agrees with plain evaluation")
{
    auto alg = builtin_algebra("p-m2-t1");
    BasisEvaluator ev(*alg);
    for (const char* name : {"associative", "jacobi", "jordan"}) {
        PseudoIdentity f = translate(builtin_identity(name));
        std::vector<std::size_t> idx{1, 6, 3, 4};
        idx.resize(f.arity());
        std::vector<ConformalElement> args;
        for (auto i : idx) {
            args.push_back(ConformalElement::basis(*alg, i));
        }
        CHECK(ev.evaluate(f, idx) == evaluate(f, args));
    }
    CHECK(ev.cache_size() > 0);
}

TEST_CASE("pseudo Mal'cev expression against the polarized Mal'cev identity")
{
    PseudoIdentity mal = translate(builtin_identity("malcev"));
    REQUIRE(mal.arity() == 4);
    auto all_quads_vanish = [&](const ConformalAlgebra& alg, bool use_expression) {
        std::size_t r = alg.generator_count();
        BasisEvaluator ev(alg);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                for (std::size_t k = 0; k < r; ++k) {
                    for (std::size_t l = 0; l < r; ++l) {
                        bool zero = use_expression
                                        ? malcev_pseudo_expression(ConformalElement::basis(alg, i),
                                                                   ConformalElement::basis(alg, j),
                                                                   ConformalElement::basis(alg, k),
                                                                   ConformalElement::basis(alg, l))
                                              .is_zero()
                                        : ev.evaluate(mal, {i, j, k, l}).is_zero();
                        if (!zero) {
                            return false;
                        }
                    }
                }
            }
        }
        return true;
    };
    SECTION("Mal'cev algebras: both vanish")
    {
        for (const char* name : {"cur-sl2", "cur-octonions-"}) {
            INFO(name);
            auto alg = builtin_algebra(name);
            CHECK(all_quads_vanish(*alg, true));
            CHECK(all_quads_vanish(*alg, false));
        }
    }
    SECTION("the opposite sign pattern fails on O^-")
    {
        auto alg = builtin_algebra("cur-octonions-");
        PseudoIdentity jac = translate(builtin_identity("jacobi"));
        auto J = [&](const PseudoElement& x, const PseudoElement& y, const PseudoElement& z) {
            return evaluate(jac, {x, y, z});
        };
        bool vanishes = true;
        for (std::size_t i = 1; i < 8 && vanishes; ++i) {
            for (std::size_t j = 1; j < 8 && vanishes; ++j) {
                for (std::size_t k = 1; k < 8 && vanishes; ++k) {
                    auto a = PseudoElement::from_element(ConformalElement::basis(*alg, i));
                    auto b = PseudoElement::from_element(ConformalElement::basis(*alg, j));
                    auto c = PseudoElement::from_element(ConformalElement::basis(*alg, k));
                    auto d = a;
                    PseudoElement v = J(a, b, expanded_product(c, d)) - expanded_product(J(a, b, c), d)
                                      - permute(Permutation::transposition(2, 3, 4),
                                                expanded_product(a, J(c, b, d)) - J(expanded_product(a, c), b, d));
                    vanishes = v.is_zero();
                }
            }
        }
        CHECK_FALSE(vanishes);
    }
    SECTION("random anticommutative algebras: both vanish or neither does", "[property]")
    {
        Gen g(99);
        int nonzero = 0;
        for (int c = 0; c < 40; ++c) {
            OrdinaryAlgebraDef a;
            a.name = "random-anti";
            a.basis = {"u", "v", "w"};
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = i + 1; j < 3; ++j) {
                    Vector v(3);
                    for (auto& x : v) {
                        x = g.integer(-1, 1);
                    }
                    a.table[{i, j}] = v;
                    for (auto& x : v) {
                        x = -x;
                    }
                    a.table[{j, i}] = v;
                }
            }
            FiniteConformalAlgebra cur(current_algebra(a));
            bool by_expression = all_quads_vanish(cur, true);
            bool by_translation = all_quads_vanish(cur, false);
            CHECK(by_expression == by_translation);
            nonzero += by_expression ? 0 : 1;
        }
        CHECK(nonzero > 0);
    }
}
