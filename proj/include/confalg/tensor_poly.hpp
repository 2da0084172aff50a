#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "confalg/dpoly.hpp"

namespace confalg {

/// Tuple of D-exponents, one per tensor slot.
using Exponents = boost::container::small_vector<unsigned, 6>;

/// Element of H^{⊗n}: a sparse map from exponent n-tuples to rationals.
class TensorPoly {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit TensorPoly(unsigned arity);
    /// 1⊗1⊗...⊗1.
    static TensorPoly unit(unsigned arity);
    static TensorPoly monomial(Exponents exps, const Rational& c = 1);
    /// p_1⊗...⊗p_n.
    static TensorPoly tensor(const std::vector<DPoly>& factors);

    unsigned arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Exponents& e) const;

    void add_term(const Exponents& e, const Rational& c);

    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator-=(const TensorPoly& o);
    TensorPoly& operator*=(const Rational& c);
    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(TensorPoly a, const Rational& c) { return a *= c; }
    /// Componentwise (slot-by-slot) product in H^{⊗n}.
    friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b);

    /// a ⊗ b, arity adds.
    friend TensorPoly tensor_product(const TensorPoly& a, const TensorPoly& b);

    friend bool operator==(const TensorPoly&, const TensorPoly&) = default;

    /// "D^2⊗1 + 2 D⊗D" style rendering.
    std::string to_string() const;

private:
    unsigned arity_;
    Terms terms_;
};

/// Iterated coproduct Δ^(n): Δ^(1) = id, Δ^(n+1) = (id ⊗ Δ^(n))Δ.
/// D^k maps to the multinomial expansion of (D⊗1⊗…+…+1⊗…⊗D)^k.
TensorPoly coproduct_iter(const DPoly& p, unsigned n);

/// Right action of H on H^{⊗n}: F·h = F Δ^(n)(h).
TensorPoly diagonal_action(const TensorPoly& f, const DPoly& h);

/// Applies the antipode to leg `slot` only.
TensorPoly apply_antipode_on_leg(const TensorPoly& f, unsigned slot);

/// Multiplies all legs together, H^{⊗n} → H.
DPoly multiply_legs(const TensorPoly& f);

/// Multinomial coefficient k! / (k_1! ... k_n!).
Integer multinomial(const Exponents& parts);

/// Calls fn(parts) for every composition of `total` into `slots` non-negative parts.
template <class Fn>
void for_each_composition(unsigned total, unsigned slots, Fn&& fn)
{
    Exponents parts(slots, 0);
    if (slots == 0) {
        if (total == 0) {
            fn(parts);
        }
        return;
    }
    // Odometer over the first slots-1 parts; the last takes the remainder.
    auto rec = [&](auto&& self, unsigned slot, unsigned remaining) -> void {
        if (slot + 1 == slots) {
            parts[slot] = remaining;
            fn(parts);
            return;
        }
        for (unsigned v = 0; v <= remaining; ++v) {
            parts[slot] = v;
            self(self, slot + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
}

} // namespace confalg
