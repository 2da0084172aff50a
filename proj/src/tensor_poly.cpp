#include "confalg/tensor_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace confalg {

TensorPoly::TensorPoly(unsigned arity) : arity_(arity)
{
    if (arity == 0) {
        throw std::invalid_argument("TensorPoly arity must be positive");
    }
}

TensorPoly TensorPoly::unit(unsigned arity) { return monomial(Exponents(arity, 0)); }

TensorPoly TensorPoly::monomial(Exponents exps, const Rational& c)
{
    TensorPoly t(static_cast<unsigned>(exps.size()));
    t.add_term(exps, c);
    return t;
}

TensorPoly TensorPoly::tensor(const std::vector<DPoly>& factors)
{
    if (factors.empty()) {
        throw std::invalid_argument("TensorPoly::tensor needs at least one factor");
    }
    Terms acc{{Exponents{}, Rational(1)}};
    for (const auto& f : factors) {
        Terms next;
        for (const auto& [e, c] : acc) {
            for (const auto& [k, x] : f.terms()) {
                Exponents ne = e;
                ne.push_back(k);
                next.emplace(std::move(ne), c * x);
            }
        }
        acc = std::move(next);
    }
    TensorPoly t(static_cast<unsigned>(factors.size()));
    t.terms_ = std::move(acc);
    return t;
}

Rational TensorPoly::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TensorPoly::add_term(const Exponents& e, const Rational& c)
{
    if (e.size() != arity_) {
        throw std::invalid_argument("TensorPoly: exponent tuple has wrong length");
    }
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

TensorPoly& TensorPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) {
        v *= c;
    }
    return *this;
}

TensorPoly operator*(const TensorPoly& a, const TensorPoly& b)
{
    if (a.arity_ != b.arity_) {
        throw std::invalid_argument("TensorPoly product: arity mismatch");
    }
    TensorPoly r(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] += eb[i];
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

TensorPoly tensor_product(const TensorPoly& a, const TensorPoly& b)
{
    TensorPoly r(a.arity_ + b.arity_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = ea;
            e.insert(e.end(), eb.begin(), eb.end());
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

std::string TensorPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            out << (c < 0 ? "-" : "");
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1) {
            out << mag.get_str() << " ";
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0) {
                out << "⊗";
            }
            if (e[i] == 0) {
                out << "1";
            } else if (e[i] == 1) {
                out << "D";
            } else {
                out << "D^" << e[i];
            }
        }
    }
    return out.str();
}

Integer multinomial(const Exponents& parts)
{
    unsigned total = 0;
    Integer denom = 1;
    for (unsigned p : parts) {
        total += p;
        denom *= factorial(p);
    }
    return factorial(total) / denom;
}

TensorPoly coproduct_iter(const DPoly& p, unsigned n)
{
    if (n == 0) {
        throw std::invalid_argument("coproduct_iter: n must be >= 1");
    }
    TensorPoly r(n);
    for (const auto& [k, c] : p.terms()) {
        for_each_composition(k, n, [&](const Exponents& parts) {
            r.add_term(parts, c * Rational(multinomial(parts)));
        });
    }
    return r;
}

TensorPoly diagonal_action(const TensorPoly& f, const DPoly& h)
{
    return f * coproduct_iter(h, f.arity());
}

TensorPoly apply_antipode_on_leg(const TensorPoly& f, unsigned slot)
{
    if (slot >= f.arity()) {
        throw std::invalid_argument("apply_antipode_on_leg: slot out of range");
    }
    TensorPoly r(f.arity());
    for (const auto& [e, c] : f.terms()) {
        r.add_term(e, c * sign_power(e[slot]));
    }
    return r;
}

DPoly multiply_legs(const TensorPoly& f)
{
    DPoly r;
    for (const auto& [e, c] : f.terms()) {
        unsigned total = 0;
        for (unsigned k : e) {
            total += k;
        }
        r.add_term(total, c);
    }
    return r;
}

} // namespace confalg
