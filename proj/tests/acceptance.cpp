// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "confalg/checker.hpp"
#include "confalg/coeff.hpp"
#include "confalg/constructions.hpp"
#include "confalg/translator.hpp"
#include "goldens.hpp"
#include "support.hpp"

using namespace confalg;
using testing_support::Gen;
using testing_support::kCases;

namespace {

/// Accumulates the reasons a criterion fails.
struct Log {
    std::ostringstream notes;
    bool ok = true;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes << "    " << what << "\n";
        }
    }
};

using Clock = std::chrono::steady_clock;

bool run(int number, const std::string& title, double budget_seconds, const std::function<void(Log&)>& body)
{
    Log log;
    auto t0 = Clock::now();
    try {
        body(log);
    } catch (const std::exception& e) {
        log.require(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_seconds > 0) {
        log.require(seconds < budget_seconds, "over the time budget of " + std::to_string(budget_seconds) + " s");
    }
    std::cout << "criterion " << number << ": " << (log.ok ? "PASS" : "FAIL") << "  " << title << " ("
              << std::fixed << std::setprecision(2) << seconds << " s)\n"
              << log.notes.str() << std::flush;
    return log.ok;
}

void golden_translations(Log& log)
{
    using namespace goldens;
    log.require(shapes(translate(builtin_identity("associative"))) == associative_shapes(), "pseudo associativity");
    log.require(shapes(translate(builtin_identity("commutative"))) == commutative_shapes(), "pseudo commutativity");
    log.require(shapes(translate(builtin_identity("jacobi"))) == jacobi_shapes(), "pseudo Jacobi");
    log.require(shapes(translate(builtin_identity("jordan"))) == jordan_shapes(), "pseudo Jordan");

    auto family = [&](const char* name, unsigned cutoff, Coordinates coords, auto expected, const char* label) {
        EmittedFamily fam = emit_conformal_form(builtin_identity(name), cutoff, coords);
        std::string why = mismatch(fam, expected(*fam.words, cutoff));
        log.require(why.empty(), std::string(label) + ":\n" + why);
    };
    family("associative", 3, Coordinates::left_normed, associative, "conformal associativity");
    family("commutative", 3, Coordinates::direct, [](auto& w, unsigned n) { return commutative(w, n, -1); },
           "conformal commutativity");
    family("anticommutative", 3, Coordinates::direct, [](auto& w, unsigned n) { return commutative(w, n, 1); },
           "conformal anticommutativity");
    family("jacobi", 3, Coordinates::left_normed, jacobi, "conformal Jacobi");
    family("jordan", 2, Coordinates::direct, jordan, "conformal Jordan system");
    log.require(emit_conformal_form(builtin_identity("jordan"), 2, Coordinates::direct).instances.size() == 8,
                "eight Jordan instances");
}

void oracle_equivalence(Log& log)
{
    const std::vector<std::string> ids{"associative", "commutative",      "anticommutative",   "jacobi",
                                       "jordan",      "left-alternative", "right-alternative", "malcev"};
    for (const auto& name : builtin_algebra_names()) {
        auto alg = builtin_algebra(name);
        for (const auto& id : ids) {
            CrossCheck r = cross_check(*alg, builtin_identity(id), id, {3});
            log.require(r.exit_code() != 2, name + " / " + id + " disagrees:\n" + r.to_string(*alg));
        }
    }
}

void passes(Log& log, const std::string& algebra, const std::vector<std::string>& ids)
{
    auto alg = builtin_algebra(algebra);
    for (const auto& id : ids) {
        Verdict v = check_pseudo(*alg, builtin_identity(id), id);
        log.require(v.pass, v.to_string(*alg));
    }
}

void variety_transport(Log& log)
{
    for (unsigned k = 0; k <= 2; ++k) {
        passes(log, "p-m2-t" + std::to_string(k), {"associative"});
        passes(log, "p-oct-t" + std::to_string(k), {"left-alternative", "right-alternative"});
    }
    auto oct = builtin_algebra("p-oct-t1");
    const Identity assoc = builtin_identity("associative");
    Verdict v = check_pseudo(*oct, assoc, "associative");
    log.require(!v.pass && v.witnesses.size() == 1, "p-oct-t1 should fail associativity with one witness");
    log.require(verify_witness(*oct, assoc, v), "associativity witness re-verifies");
}

void plus_minus(Log& log)
{
    passes(log, "cur-m2-", {"anticommutative", "jacobi"});
    passes(log, "cur-m2+", {"commutative", "jordan"});
    passes(log, "p-oct-t1-", {"anticommutative", "malcev"});
    passes(log, "p-oct-t1+", {"commutative", "jordan"});
}

void artin(Log& log)
{
    ArtinReport r = artin_counterexample();
    log.require(r.nonzero(), "result is zero");
    log.require(r.matches(), "result " + r.result.to_string() + " differs from " + r.expected.to_string());
    log.require(!r.bca.is_zero() && !r.acb.is_zero(), "both associator components are nonzero");
}

void property_suites(Log& log)
{
    {
        Gen g(601);
        for (int c = 0; c < kCases; ++c) {
            FiniteConformalAlgebra alg(g.algebra_def(1 + g.natural(2), 3));
            auto a = g.element(alg, 3);
            auto b = g.element(alg, 3);
            unsigned n = g.natural(5);
            ConformalElement left = n == 0 ? ConformalElement(alg) : Rational(-static_cast<int>(n)) * n_product(a, b, n - 1);
            ConformalElement right = DPoly::d() * n_product(a, b, n);
            if (n > 0) {
                right += Rational(n) * n_product(a, b, n - 1);
            }
            log.require(n_product(DPoly::d() * a, b, n) == left, "sesquilinearity, left argument");
            log.require(n_product(a, DPoly::d() * b, n) == right, "sesquilinearity, right argument");
        }
    }
    {
        Gen g(602);
        for (int c = 0; c < kCases; ++c) {
            FiniteConformalAlgebra alg(g.algebra_def(2, 3));
            auto a = g.element(alg, 2);
            auto b = g.element(alg, 2);
            DPoly f = g.dpoly(3);
            DPoly h = g.dpoly(3);
            log.require(pseudo_product(f * a, h * b) == left_multiply(TensorPoly::tensor({f, h}), pseudo_product(a, b)),
                        "H-bilinearity");
        }
    }
    {
        Gen g(603);
        for (int c = 0; c < kCases; ++c) {
            DPoly p = g.dpoly(8);
            TensorPoly d2 = coproduct_iter(p, 2);
            log.require(testing_support::coproduct_on_slot(d2, 0) == testing_support::coproduct_on_slot(d2, 1), "coassociativity");
            log.require(multiply_legs(apply_antipode_on_leg(d2, 0)) == DPoly(counit(p)), "antipode axiom");
        }
    }
    for (const auto& name : builtin_algebra_names()) {
        auto alg = builtin_algebra(name);
        std::size_t r = alg->generator_count();
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                auto a = ConformalElement::basis(*alg, i);
                auto b = ConformalElement::basis(*alg, j);
                unsigned bound = static_cast<unsigned>(alg->basis_products(i, j).size());
                for (unsigned n = 0; n <= bound + 1; ++n) {
                    for (long k = -4; k <= 4; ++k) {
                        log.require(reconstruct_n_product(a, b, n, k) == coeff_inject(n_product(a, b, n), k),
                                    "reconstruction on " + name);
                    }
                }
            }
        }
    }
    {
        Gen g(604);
        for (int c = 0; c < kCases; ++c) {
            unsigned n = 1 + g.natural(3);
            std::vector<unsigned> m(n);
            for (auto& x : m) {
                x = 1 + g.natural(2);
            }
            Permutation s = testing_support::random_permutation(g, n);
            TensorPoly f = g.tensor(n, 3, 3);
            std::vector<unsigned> src(n);
            for (unsigned j = 0; j < n; ++j) {
                src[j] = m[s(j)];
            }
            log.require(permute(expand_permutation(s, m), testing_support::blockwise_coproduct(f, src))
                            == testing_support::blockwise_coproduct(permute(s, f), m),
                        "block permutation relation");
        }
    }
    {
        Gen g(605);
        FiniteConformalAlgebra alg(g.algebra_def(2, 2));
        for (int c = 0; c < kCases; ++c) {
            unsigned n = 1 + g.natural(3);
            TensorPoly f = g.tensor(n, 3, 3);
            auto x = g.element(alg, 2);
            RawPseudoElement raw{n, {}};
            for (const auto& [e, q] : f.terms()) {
                add_to(raw.terms[e], x.coords(), q);
            }
            PseudoElement once = to_normal_form(alg, raw);
            log.require(to_normal_form(alg, once.to_raw()) == once, "normal form idempotence");
        }
    }
}

void virasoro_table(Log& log)
{
    auto vir = builtin_algebra("virasoro");
    const auto& v = *vir;
    for (long n = -5; n <= 5; ++n) {
        for (long m = -5; m <= 5; ++m) {
            // L(n)L(m) = Σ_s C(n,s) (L∘_s L)(n+m-s) with L∘_0 L = DL, L∘_1 L = 2L:
            // (DL)(n+m) = -(n+m) L(n+m-1), plus 2n L(n+m-1).
            CoeffElement expected(v);
            expected.add(0, n + m - 1, Rational(n - m));
            CoeffElement got = coeff_product(coeff_inject(ConformalElement::basis(v, 0), n),
                                             coeff_inject(ConformalElement::basis(v, 0), m));
            log.require(got == expected, "L(" + std::to_string(n) + ")L(" + std::to_string(m) + ") = " + got.to_string());
        }
    }
}

} // namespace

int main()
{
    bool ok = true;
    ok &= run(1, "golden translations and conformal forms", 5, golden_translations);
    ok &= run(2, "pseudo and coefficient verdicts agree on the 6 x 8 matrix, W = 3", 120, oracle_equivalence);
    ok &= run(3, "variety transport to P(A[t]<=K), K = 0, 1, 2", 0, variety_transport);
    ok &= run(4, "plus and minus structures", 0, plus_minus);
    ok &= run(5, "Artin counterexample in P(O[t]<=1)", 1, artin);
    ok &= run(6, "property suites", 0, property_suites);
    ok &= run(7, "Virasoro coefficient products", 0, virasoro_table);
    return ok ? 0 : 1;
}
