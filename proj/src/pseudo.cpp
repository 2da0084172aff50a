#include "confalg/pseudo.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace confalg {

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(unsigned n)
{
    Permutation p;
    p.images_.resize(n);
    std::iota(p.images_.begin(), p.images_.end(), 0U);
    return p;
}

Permutation Permutation::from_images(const std::vector<unsigned>& one_based)
{
    Permutation p;
    std::vector<bool> seen(one_based.size(), false);
    for (unsigned v : one_based) {
        if (v == 0 || v > one_based.size() || seen[v - 1]) {
            throw std::invalid_argument("not a permutation of 1.." + std::to_string(one_based.size()));
        }
        seen[v - 1] = true;
        p.images_.push_back(v - 1);
    }
    return p;
}

Permutation Permutation::transposition(unsigned i, unsigned j, unsigned n)
{
    if (i == 0 || j == 0 || i > n || j > n) {
        throw std::invalid_argument("transposition index out of range");
    }
    Permutation p = identity(n);
    std::swap(p.images_[i - 1], p.images_[j - 1]);
    return p;
}

std::vector<unsigned> Permutation::one_line() const
{
    std::vector<unsigned> r;
    r.reserve(images_.size());
    for (unsigned v : images_) {
        r.push_back(v + 1);
    }
    return r;
}

bool Permutation::is_identity() const
{
    for (unsigned i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::then(const Permutation& tau) const
{
    if (tau.size() != size()) {
        throw std::invalid_argument("permutation composition: size mismatch");
    }
    Permutation r;
    r.images_.reserve(images_.size());
    for (unsigned v : images_) {
        r.images_.push_back(tau.images_[v]);
    }
    return r;
}

Permutation Permutation::inverse() const
{
    Permutation r;
    r.images_.resize(images_.size());
    for (unsigned i = 0; i < images_.size(); ++i) {
        r.images_[images_[i]] = i;
    }
    return r;
}

std::string Permutation::to_string() const
{
    std::string s = "[";
    for (unsigned i = 0; i < images_.size(); ++i) {
        if (i > 0) {
            s += ",";
        }
        s += std::to_string(images_[i] + 1);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// PseudoElement

PseudoElement::PseudoElement(const ConformalAlgebra& alg, unsigned arity) : alg_(&alg), arity_(arity)
{
    if (arity == 0) {
        throw std::invalid_argument("pseudo element arity must be positive");
    }
}

PseudoElement PseudoElement::from_element(const ConformalElement& a)
{
    if (a.parent() == nullptr) {
        throw std::invalid_argument("from_element: element has no parent algebra");
    }
    PseudoElement r(*a.parent(), 1);
    r.add(Exponents{}, a.coords());
    return r;
}

ConformalElement PseudoElement::value(const Exponents& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? ConformalElement(*alg_) : ConformalElement(*alg_, it->second);
}

void PseudoElement::add(const Exponents& key, const Coords& c, const Rational& scale)
{
    if (key.size() + 1 != arity_) {
        throw std::invalid_argument("PseudoElement::add: key has wrong length");
    }
    if (c.empty() || scale == 0) {
        return;
    }
    auto& slot = terms_[key];
    add_to(slot, c, scale);
    if (slot.empty()) {
        terms_.erase(key);
    }
}

void PseudoElement::check_compatible(const PseudoElement& o) const
{
    if (o.arity_ != arity_) {
        throw std::invalid_argument("pseudo elements of different arity");
    }
    if (o.alg_ != alg_ && !o.is_zero() && !is_zero()) {
        throw DefinitionError("pseudo elements over different algebras");
    }
}

PseudoElement& PseudoElement::operator+=(const PseudoElement& o)
{
    check_compatible(o);
    if (is_zero()) {
        alg_ = o.alg_;
    }
    for (const auto& [k, c] : o.terms_) {
        add(k, c);
    }
    return *this;
}

PseudoElement& PseudoElement::operator-=(const PseudoElement& o)
{
    check_compatible(o);
    if (is_zero()) {
        alg_ = o.alg_;
    }
    for (const auto& [k, c] : o.terms_) {
        add(k, c, Rational(-1));
    }
    return *this;
}

PseudoElement& PseudoElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, coords] : terms_) {
        for (auto& [i, p] : coords) {
            p *= c;
        }
    }
    return *this;
}

bool operator==(const PseudoElement& a, const PseudoElement& b)
{
    if (a.arity_ != b.arity_) {
        return false;
    }
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
}

namespace {

std::string render_slot(unsigned k, bool latex)
{
    if (k == 0) {
        return "1";
    }
    if (k == 1) {
        return "D";
    }
    return latex ? "D^{" + std::to_string(k) + "}" : "D^" + std::to_string(k);
}

std::string render_pseudo(const PseudoElement& a, bool latex)
{
    if (a.is_zero()) {
        return "0";
    }
    const char* otimes = latex ? "\\otimes " : "⊗";
    const char* otimes_h = latex ? "\\otimes_H " : "⊗_H ";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, coords] : a.terms()) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << "(";
        for (unsigned k : key) {
            out << render_slot(k, latex) << otimes;
        }
        out << "1) " << otimes_h << "(";
        ConformalElement e(a.algebra(), coords);
        out << (latex ? e.to_latex() : e.to_string()) << ")";
    }
    return out.str();
}

} // namespace

std::string PseudoElement::to_string() const { return render_pseudo(*this, false); }
std::string PseudoElement::to_latex() const { return render_pseudo(*this, true); }

RawPseudoElement PseudoElement::to_raw() const
{
    RawPseudoElement raw;
    raw.arity = arity_;
    for (const auto& [key, c] : terms_) {
        Exponents full = key;
        full.push_back(0);
        raw.terms.emplace(std::move(full), c);
    }
    return raw;
}

// ---------------------------------------------------------------------------
// Calculus

PseudoElement to_normal_form(const ConformalAlgebra& alg, const RawPseudoElement& raw)
{
    PseudoElement r(alg, raw.arity);
    const unsigned lead = raw.arity - 1;
    for (const auto& [key, c] : raw.terms) {
        if (key.size() != raw.arity) {
            throw std::invalid_argument("to_normal_form: key has wrong length");
        }
        const unsigned k = key.back();
        for (unsigned j = 0; j <= k; ++j) {
            Rational cj = sign_power(j) * Rational(binomial(k, j));
            Coords shifted = h_action(DPoly::monomial(k - j), c);
            // F·D^j on the leading slots.
            for_each_composition(j, lead, [&](const Exponents& parts) {
                Exponents nk(key.begin(), key.end() - 1);
                for (unsigned s = 0; s < lead; ++s) {
                    nk[s] += parts[s];
                }
                r.add(nk, shifted, cj * Rational(multinomial(parts)));
            });
        }
    }
    return r;
}

PseudoElement left_multiply(const TensorPoly& f, const PseudoElement& a)
{
    if (f.arity() != a.arity()) {
        throw std::invalid_argument("left_multiply: arity mismatch");
    }
    RawPseudoElement raw;
    raw.arity = a.arity();
    for (const auto& [fe, fc] : f.terms()) {
        for (const auto& [key, c] : a.terms()) {
            Exponents full = fe;
            for (unsigned s = 0; s < key.size(); ++s) {
                full[s] += key[s];
            }
            add_to(raw.terms[full], c, fc);
        }
    }
    return to_normal_form(a.algebra(), raw);
}

PseudoElement pseudo_product(const ConformalElement& a, const ConformalElement& b)
{
    const ConformalAlgebra* parent = common_parent(a, b);
    if (parent == nullptr) {
        throw std::invalid_argument("pseudo_product: operands have no parent algebra");
    }
    PseudoElement r(*parent, 2);
    const unsigned bound = locality_estimate(a, b);
    for (unsigned s = 0; s < bound; ++s) {
        ConformalElement prod = n_product(a, b, s);
        r.add(Exponents{s}, prod.coords(), sign_power(s) / Rational(factorial(s)));
    }
    return r;
}

PseudoElement expanded_product(const PseudoElement& a, const PseudoElement& b)
{
    if (&a.algebra() != &b.algebra() && !a.is_zero() && !b.is_zero()) {
        throw DefinitionError("expanded_product: operands over different algebras");
    }
    const ConformalAlgebra& alg = a.algebra();
    const unsigned n = a.arity();
    const unsigned m = b.arity();
    PseudoElement r(alg, n + m);
    for (const auto& [ka, ca] : a.terms()) {
        ConformalElement ea(alg, ca);
        for (const auto& [kb, cb] : b.terms()) {
            PseudoElement ab = pseudo_product(ea, ConformalElement(alg, cb));
            for (const auto& [ks, c] : ab.terms()) {
                // (D^{ka} ⊗ 1)·Δ^(n)(D^s) ⊗ D^{kb} ⊗ 1: already normal.
                for_each_composition(ks[0], n, [&](const Exponents& parts) {
                    Exponents key;
                    for (unsigned s = 0; s < n; ++s) {
                        key.push_back(parts[s] + (s + 1 < n ? ka[s] : 0));
                    }
                    key.insert(key.end(), kb.begin(), kb.end());
                    r.add(key, c, Rational(multinomial(parts)));
                });
            }
        }
    }
    return r;
}

PseudoElement permute(const Permutation& sigma, const PseudoElement& a)
{
    if (sigma.size() != a.arity()) {
        throw std::invalid_argument("permute: permutation size does not match arity");
    }
    if (sigma.is_identity()) {
        return a;
    }
    RawPseudoElement raw;
    raw.arity = a.arity();
    for (const auto& [key, c] : a.terms()) {
        Exponents out(a.arity(), 0);
        for (unsigned i = 0; i + 1 < a.arity(); ++i) {
            out[sigma(i)] = key[i];
        }
        add_to(raw.terms[out], c);
    }
    return to_normal_form(a.algebra(), raw);
}

TensorPoly permute(const Permutation& sigma, const TensorPoly& f)
{
    if (sigma.size() != f.arity()) {
        throw std::invalid_argument("permute: permutation size does not match arity");
    }
    TensorPoly r(f.arity());
    for (const auto& [e, c] : f.terms()) {
        Exponents out(e.size(), 0);
        for (unsigned i = 0; i < e.size(); ++i) {
            out[sigma(i)] = e[i];
        }
        r.add_term(out, c);
    }
    return r;
}

Permutation expand_permutation(const Permutation& sigma, const std::vector<unsigned>& block_sizes)
{
    const unsigned n = sigma.size();
    if (block_sizes.size() != n) {
        throw std::invalid_argument("expand_permutation: need one block size per point");
    }
    std::vector<unsigned> target_offset(n + 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        target_offset[i + 1] = target_offset[i] + block_sizes[i];
    }
    // Source block j carries the variables of the argument landing in position jσ.
    std::vector<unsigned> images;
    images.reserve(target_offset[n]);
    for (unsigned j = 0; j < n; ++j) {
        unsigned t = sigma(j);
        for (unsigned r = 0; r < block_sizes[t]; ++r) {
            images.push_back(target_offset[t] + r + 1);
        }
    }
    return Permutation::from_images(images);
}

PseudoElement plus_minus_product(const ConformalElement& a, const ConformalElement& b, Sign sign)
{
    PseudoElement ab = pseudo_product(a, b);
    PseudoElement ba = permute(Permutation::transposition(1, 2, 2), pseudo_product(b, a));
    return sign == Sign::plus ? ab + ba : ab - ba;
}

} // namespace confalg
