#pragma once

// Shared generators for the property tests. Seeds are fixed so failures replay.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>

#include "confalg/conformal.hpp"
#include "confalg/dpoly.hpp"
#include "confalg/pseudo.hpp"
#include "confalg/tensor_poly.hpp"

namespace testing_support {

using namespace confalg;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    unsigned natural(unsigned hi) { return static_cast<unsigned>(integer(0, static_cast<int>(hi))); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational()
    {
        Rational q(integer(-6, 6), integer(1, 3));
        q.canonicalize();
        return q;
    }

    DPoly dpoly(unsigned max_degree)
    {
        DPoly p;
        for (unsigned k = 0; k <= max_degree; ++k) {
            if (integer(0, 2) > 0) {
                p.add_term(k, rational());
            }
        }
        return p;
    }

    TensorPoly tensor(unsigned arity, unsigned max_degree, unsigned terms)
    {
        TensorPoly t(arity);
        for (unsigned i = 0; i < terms; ++i) {
            Exponents e;
            for (unsigned s = 0; s < arity; ++s) {
                e.push_back(natural(max_degree));
            }
            t.add_term(e, rational());
        }
        return t;
    }

    ConformalElement element(const ConformalAlgebra& alg, unsigned max_degree)
    {
        Coords c;
        std::size_t rank = alg.generator_count();
        for (std::size_t i = 0; i < rank; ++i) {
            if (coin()) {
                add_to(c, i, dpoly(max_degree));
            }
        }
        return ConformalElement(alg, std::move(c));
    }

    /// Random table on `rank` generators, locality up to `max_locality`.
    ConformalAlgebraDef algebra_def(std::size_t rank, unsigned max_locality)
    {
        ConformalAlgebraDef def;
        def.name = "random";
        for (std::size_t i = 0; i < rank; ++i) {
            def.basis.push_back("e" + std::to_string(i + 1));
        }
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = 0; j < rank; ++j) {
                unsigned bound = natural(max_locality);
                def.locality[{i, j}] = bound;
                for (unsigned n = 0; n < bound; ++n) {
                    Coords c;
                    for (std::size_t k = 0; k < rank; ++k) {
                        add_to(c, k, dpoly(2));
                    }
                    def.table[{i, j, n}] = c;
                }
            }
        }
        return def;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// L ∘_0 L = DL, L ∘_1 L = 2L.
inline ConformalAlgebraDef virasoro_table()
{
    ConformalAlgebraDef def;
    def.name = "virasoro";
    def.basis = {"L"};
    def.table[{0, 0, 0}] = Coords{{0, DPoly::d()}};
    def.table[{0, 0, 1}] = Coords{{0, DPoly(2)}};
    def.locality[{0, 0}] = 2;
    return def;
}

inline constexpr int kCases = 250;

// (Δ ⊗ id) and (id ⊗ Δ) on an arity-2 element, written out slot by slot.
inline TensorPoly coproduct_on_slot(const TensorPoly& f, unsigned slot)
{
    TensorPoly r(f.arity() + 1);
    for (const auto& [e, c] : f.terms()) {
        unsigned k = e[slot];
        for (unsigned i = 0; i <= k; ++i) {
            Exponents ne;
            for (unsigned s = 0; s < e.size(); ++s) {
                if (s == slot) {
                    ne.push_back(i);
                    ne.push_back(k - i);
                } else {
                    ne.push_back(e[s]);
                }
            }
            r.add_term(ne, c * Rational(binomial(k, i)));
        }
    }
    return r;
}

// Δ^(m_1) ⊗ … ⊗ Δ^(m_n) applied slot by slot.
inline TensorPoly blockwise_coproduct(const TensorPoly& f, const std::vector<unsigned>& sizes)
{
    unsigned total = std::accumulate(sizes.begin(), sizes.end(), 0U);
    TensorPoly r(total);
    for (const auto& [e, c] : f.terms()) {
        TensorPoly acc = coproduct_iter(DPoly::monomial(e[0], c), sizes[0]);
        for (unsigned s = 1; s < e.size(); ++s) {
            acc = tensor_product(acc, coproduct_iter(DPoly::monomial(e[s]), sizes[s]));
        }
        r += acc;
    }
    return r;
}

inline Permutation random_permutation(Gen& g, unsigned n)
{
    std::vector<unsigned> v(n);
    std::iota(v.begin(), v.end(), 1U);
    std::shuffle(v.begin(), v.end(), g.engine());
    return Permutation::from_images(v);
}



} // namespace testing_support

namespace testing_support {

/// Cur A for an ordinary algebra given by e_i e_j = Σ_k mult[i][j][k] e_k.
inline ConformalAlgebraDef current_table(const std::string& name, const std::vector<std::string>& basis,
                                         const std::vector<std::vector<std::vector<int>>>& mult)
{
    ConformalAlgebraDef def;
    def.name = name;
    def.basis = basis;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Coords c;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                add_to(c, k, DPoly(Rational(mult[i][j][k])));
            }
            if (!c.empty()) {
                def.table[{i, j, 0}] = c;
                def.locality[{i, j}] = 1;
            }
        }
    }
    return def;
}

/// 2x2 matrix units e11, e12, e21, e22 (index 2*(r-1) + (c-1)).
inline ConformalAlgebraDef current_m2_table()
{
    std::vector<std::vector<std::vector<int>>> mult(4, std::vector<std::vector<int>>(4, std::vector<int>(4, 0)));
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    if (b == c) {
                        mult[2 * a + b][2 * c + d][2 * a + d] = 1;
                    }
                }
            }
        }
    }
    return current_table("cur-m2", {"e11", "e12", "e21", "e22"}, mult);
}

/// k[x]/(x^2) with basis 1, x: commutative and associative.
inline ConformalAlgebraDef current_dual_numbers_table()
{
    return current_table("cur-dual", {"u", "x"}, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}});
}

} // namespace testing_support
