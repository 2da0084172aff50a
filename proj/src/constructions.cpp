#include "confalg/constructions.hpp"

#include <algorithm>
#include <functional>
#include <regex>

namespace confalg {

// ---------------------------------------------------------------------------
// Ordinary algebras

Vector OrdinaryAlgebraDef::unit_vector(std::size_t i) const
{
    Vector v(dim(), 0);
    v.at(i) = 1;
    return v;
}

Vector OrdinaryAlgebraDef::multiply(const Vector& u, const Vector& v) const
{
    Vector r(dim(), 0);
    for (const auto& [ij, w] : table) {
        const Rational& a = u[ij.first];
        const Rational& b = v[ij.second];
        if (a == 0 || b == 0) {
            continue;
        }
        Rational ab = a * b;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] != 0) {
                r[k] += ab * w[k];
            }
        }
    }
    return r;
}

namespace {

void set_product(OrdinaryAlgebraDef& alg, std::size_t i, std::size_t j, std::size_t k, const Rational& c)
{
    auto& v = alg.table[{i, j}];
    if (v.empty()) {
        v.assign(alg.dim(), 0);
    }
    v[k] += c;
}

} // namespace

OrdinaryAlgebraDef octonions()
{
    OrdinaryAlgebraDef o;
    o.name = "octonions";
    for (int i = 0; i < 8; ++i) {
        o.basis.push_back("e" + std::to_string(i));
    }
    for (std::size_t i = 0; i < 8; ++i) {
        set_product(o, 0, i, i, 1);
        if (i > 0) {
            set_product(o, i, 0, i, 1);
            set_product(o, i, i, 0, -1);
        }
    }
    const std::size_t triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& t : triples) {
        for (int r = 0; r < 3; ++r) {
            std::size_t a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
            set_product(o, a, b, c, 1);
            set_product(o, b, a, c, -1);
        }
    }
    return o;
}

OrdinaryAlgebraDef matrix_algebra(unsigned n)
{
    OrdinaryAlgebraDef m;
    m.name = "m" + std::to_string(n);
    for (unsigned r = 1; r <= n; ++r) {
        for (unsigned c = 1; c <= n; ++c) {
            m.basis.push_back("e" + std::to_string(r) + std::to_string(c));
        }
    }
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) {
            for (unsigned d = 0; d < n; ++d) {
                set_product(m, a * n + b, b * n + d, a * n + d, 1);
            }
        }
    }
    return m;
}

OrdinaryAlgebraDef sl2()
{
    OrdinaryAlgebraDef s;
    s.name = "sl2";
    s.basis = {"e", "f", "h"};
    const std::size_t e = 0, f = 1, h = 2;
    set_product(s, e, f, h, 1);
    set_product(s, f, e, h, -1);
    set_product(s, h, e, e, 2);
    set_product(s, e, h, e, -2);
    set_product(s, h, f, f, -2);
    set_product(s, f, h, f, 2);
    return s;
}

Vector evaluate_ordinary(const OrdinaryAlgebraDef& alg, const Identity& f, const std::vector<Vector>& args)
{
    Vector acc(alg.dim(), 0);
    auto mul = [&](const Vector& u, const Vector& v) { return alg.multiply(u, v); };
    for (const auto& t : f.terms()) {
        Vector v = evaluate_tree(t.monomial(), args, mul);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            acc[k] += t.coeff * v[k];
        }
    }
    return acc;
}

std::optional<std::vector<std::size_t>> ordinary_witness(const OrdinaryAlgebraDef& alg, const Identity& f)
{
    const unsigned n = f.arity();
    if (f.is_zero() || alg.dim() == 0) {
        return std::nullopt;
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<Vector> args;
        for (auto i : idx) {
            args.push_back(alg.unit_vector(i));
        }
        Vector v = evaluate_ordinary(alg, f, args);
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) {
            return idx;
        }
        // odometer, last position fastest
        int k = static_cast<int>(n) - 1;
        while (k >= 0 && ++idx[k] == alg.dim()) {
            idx[k--] = 0;
        }
        if (k < 0) {
            return std::nullopt;
        }
    }
}

ConformalAlgebraDef current_algebra(const OrdinaryAlgebraDef& alg)
{
    ConformalAlgebraDef def;
    def.name = "cur-" + alg.name;
    def.basis = alg.basis;
    for (const auto& [ij, w] : alg.table) {
        Coords c;
        for (std::size_t k = 0; k < w.size(); ++k) {
            add_to(c, k, DPoly(w[k]));
        }
        if (!c.empty()) {
            def.table[{ij.first, ij.second, 0}] = c;
            def.locality[ij] = 1;
        }
    }
    return def;
}

ConformalAlgebraDef virasoro()
{
    ConformalAlgebraDef def;
    def.name = "virasoro";
    def.basis = {"L"};
    def.table[{0, 0, 0}] = Coords{{0, DPoly::d()}};
    def.table[{0, 0, 1}] = Coords{{0, DPoly(2)}};
    def.locality[{0, 0}] = 2;
    return def;
}

// ---------------------------------------------------------------------------
// Comodule algebras

FiniteComoduleAlgebra::FiniteComoduleAlgebra(ComoduleAlgebraDef def) : def_(std::move(def))
{
    for (const auto& [i, terms] : def_.coaction) {
        if (i >= def_.base.dim()) {
            throw DefinitionError("coaction given for basis index " + std::to_string(i) + " beyond the dimension");
        }
        for (const auto& t : terms) {
            if (t.basis >= def_.base.dim()) {
                throw DefinitionError("coaction of " + def_.base.basis[i] + " refers to basis index "
                                      + std::to_string(t.basis));
            }
        }
    }
    auto problems = validate_comodule(*this, def_.base.dim());
    if (!problems.empty()) {
        std::string msg = "not an H-comodule algebra:";
        for (const auto& p : problems) {
            msg += "\n  " + p;
        }
        throw DefinitionError(msg);
    }
}

std::map<std::size_t, Rational> FiniteComoduleAlgebra::multiply(std::size_t i, std::size_t j) const
{
    std::map<std::size_t, Rational> r;
    auto it = def_.base.table.find({i, j});
    if (it != def_.base.table.end()) {
        for (std::size_t k = 0; k < it->second.size(); ++k) {
            if (it->second[k] != 0) {
                r[k] = it->second[k];
            }
        }
    }
    return r;
}

std::vector<CoactionTerm> FiniteComoduleAlgebra::coaction(std::size_t i) const
{
    auto it = def_.coaction.find(i);
    if (it == def_.coaction.end()) {
        // unspecified basis elements are coinvariant
        return {{0, i, Rational(1)}};
    }
    return it->second;
}

PolynomialComodule::PolynomialComodule(OrdinaryAlgebraDef base, unsigned max_degree)
    : base_(std::move(base)), max_degree_(max_degree)
{
}

std::string PolynomialComodule::name() const
{
    return base_.name + "[t]<=" + std::to_string(max_degree_);
}

std::string PolynomialComodule::basis_label(std::size_t i) const
{
    std::size_t d = base_.dim();
    std::size_t deg = i / d;
    std::string a = base_.basis.at(i % d);
    if (deg == 0) {
        return a + "⊗1";
    }
    return a + (deg == 1 ? "⊗t" : "⊗t^" + std::to_string(deg));
}

std::map<std::size_t, Rational> PolynomialComodule::multiply(std::size_t i, std::size_t j) const
{
    std::size_t d = base_.dim();
    std::map<std::size_t, Rational> r;
    auto it = base_.table.find({i % d, j % d});
    if (it == base_.table.end()) {
        return r;
    }
    std::size_t deg = i / d + j / d;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
        if (it->second[k] != 0) {
            r[deg * d + k] = it->second[k];
        }
    }
    return r;
}

std::vector<CoactionTerm> PolynomialComodule::coaction(std::size_t i) const
{
    std::size_t d = base_.dim();
    auto n = static_cast<unsigned>(i / d);
    std::size_t a = i % d;
    std::vector<CoactionTerm> r;
    for (unsigned s = 0; s <= n; ++s) {
        r.push_back({s, (n - s) * d + a, Rational(binomial(n, s))});
    }
    return r;
}

OrdinaryAlgebraDef polynomial_base(const OrdinaryAlgebraDef& alg, unsigned max_degree)
{
    PolynomialComodule m(alg, max_degree);
    OrdinaryAlgebraDef r;
    r.name = m.name();
    std::size_t count = m.generator_count();
    for (std::size_t i = 0; i < count; ++i) {
        r.basis.push_back(m.basis_label(i));
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            for (const auto& [k, c] : m.multiply(i, j)) {
                if (k >= count) {
                    throw ClosureError("A[t] truncated at degree " + std::to_string(max_degree)
                                       + " is not closed: " + m.basis_label(i) + " · " + m.basis_label(j)
                                       + " has degree " + std::to_string(k / alg.dim()));
                }
                set_product(r, i, j, k, c);
            }
        }
    }
    return r;
}

ComoduleAlgebraDef PolynomialComodule::to_definition() const
{
    ComoduleAlgebraDef def;
    def.base = polynomial_base(base_, max_degree_);
    for (std::size_t i = 0; i < generator_count(); ++i) {
        def.coaction[i] = coaction(i);
    }
    return def;
}

ComoduleAlgebraDef trivial_comodule(const OrdinaryAlgebraDef& alg)
{
    ComoduleAlgebraDef def;
    def.base = alg;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        def.coaction[i] = {{0, i, Rational(1)}};
    }
    return def;
}

std::vector<std::string> validate_comodule(const ComoduleAlgebra& m, std::size_t count)
{
    using Key2 = std::pair<unsigned, std::size_t>;
    using Key3 = std::tuple<unsigned, unsigned, std::size_t>;
    auto add = [](auto& map, const auto& key, const Rational& c) {
        auto& v = map[key];
        v += c;
        if (v == 0) {
            map.erase(key);
        }
    };
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < count; ++i) {
        const auto delta = m.coaction(i);
        std::map<std::size_t, Rational> counit;
        std::map<Key3, Rational> left;
        std::map<Key3, Rational> right;
        for (const auto& t : delta) {
            if (t.exponent == 0) {
                add(counit, t.basis, t.coeff);
            }
            for (unsigned r = 0; r <= t.exponent; ++r) {
                add(left, Key3{r, t.exponent - r, t.basis}, t.coeff * binomial(t.exponent, r));
            }
            for (const auto& u : m.coaction(t.basis)) {
                add(right, Key3{t.exponent, u.exponent, u.basis}, t.coeff * u.coeff);
            }
        }
        if (counit != std::map<std::size_t, Rational>{{i, Rational(1)}}) {
            problems.push_back("counit law fails on " + m.basis_label(i));
        }
        if (left != right) {
            problems.push_back("coassociativity fails on " + m.basis_label(i));
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            std::map<Key2, Rational> lhs;
            for (const auto& [k, c] : m.multiply(i, j)) {
                for (const auto& t : m.coaction(k)) {
                    add(lhs, Key2{t.exponent, t.basis}, c * t.coeff);
                }
            }
            std::map<Key2, Rational> rhs;
            for (const auto& t : m.coaction(i)) {
                for (const auto& u : m.coaction(j)) {
                    for (const auto& [k, c] : m.multiply(t.basis, u.basis)) {
                        add(rhs, Key2{t.exponent + u.exponent, k}, t.coeff * u.coeff * c);
                    }
                }
            }
            if (lhs != rhs) {
                problems.push_back("coaction is not multiplicative on " + m.basis_label(i) + ", "
                                   + m.basis_label(j));
            }
        }
    }
    return problems;
}

namespace {

// a ∘_s b = (-1)^s s! · (coefficient of the key (s) in the normal form of a*b).
std::vector<Coords> products_from_pseudo(const std::map<unsigned, Coords>& keyed)
{
    std::vector<Coords> out;
    for (const auto& [s, c] : keyed) {
        if (c.empty()) {
            continue;
        }
        if (out.size() <= s) {
            out.resize(s + 1);
        }
        add_to(out[s], c, sign_power(s) * Rational(factorial(s)));
    }
    return out;
}

class ComodulePseudoAlgebra final : public LazyConformalAlgebra {
public:
    explicit ComodulePseudoAlgebra(std::shared_ptr<const ComoduleAlgebra> m) : m_(std::move(m)) {}

    std::string name() const override { return "P(" + m_->name() + ")"; }
    std::size_t generator_count() const override { return m_->generator_count(); }
    std::optional<std::size_t> rank() const override { return m_->rank(); }
    std::string basis_label(std::size_t i) const override { return m_->basis_label(i); }

protected:
    std::vector<Coords> compute_products(std::size_t i, std::size_t j) const override
    {
        // e_i * e_j = Σ D^q ⊗ D^p ⊗_H e_{i'j'}, where Δ(e_i) ∋ D^p ⊗ e_{i'}, Δ(e_j) ∋ D^q ⊗ e_{j'};
        // normalized: (q + r) ↦ C(p,r)(-1)^r D^{p-r} e_{i'j'}.
        std::map<unsigned, Coords> keyed;
        for (const auto& a : m_->coaction(i)) {
            for (const auto& b : m_->coaction(j)) {
                auto prod = m_->multiply(a.basis, b.basis);
                if (prod.empty()) {
                    continue;
                }
                Rational c = a.coeff * b.coeff;
                for (unsigned r = 0; r <= a.exponent; ++r) {
                    Rational cr = c * binomial(a.exponent, r) * sign_power(r);
                    for (const auto& [k, v] : prod) {
                        add_to(keyed[b.exponent + r], k, DPoly::monomial(a.exponent - r, cr * v));
                    }
                }
            }
        }
        return products_from_pseudo(keyed);
    }

private:
    std::shared_ptr<const ComoduleAlgebra> m_;
};

class PlusMinusAlgebra final : public LazyConformalAlgebra {
public:
    PlusMinusAlgebra(std::shared_ptr<const ConformalAlgebra> base, Sign sign)
        : base_(std::move(base)), sign_(sign)
    {
    }

    std::string name() const override { return base_->name() + (sign_ == Sign::plus ? "+" : "-"); }
    std::size_t generator_count() const override { return base_->generator_count(); }
    std::optional<std::size_t> rank() const override { return base_->rank(); }
    std::string basis_label(std::size_t i) const override { return base_->basis_label(i); }

protected:
    std::vector<Coords> compute_products(std::size_t i, std::size_t j) const override
    {
        PseudoElement pm = plus_minus_product(ConformalElement::basis(*base_, i),
                                              ConformalElement::basis(*base_, j), sign_);
        std::map<unsigned, Coords> keyed;
        for (const auto& [key, c] : pm.terms()) {
            keyed[key[0]] = c;
        }
        return products_from_pseudo(keyed);
    }

private:
    std::shared_ptr<const ConformalAlgebra> base_;
    Sign sign_;
};

} // namespace

std::shared_ptr<const ConformalAlgebra> pseudo_of_comodule(std::shared_ptr<const ComoduleAlgebra> m)
{
    return std::make_shared<ComodulePseudoAlgebra>(std::move(m));
}

std::shared_ptr<const ConformalAlgebra> plus_minus_algebra(std::shared_ptr<const ConformalAlgebra> base,
                                                           Sign sign)
{
    return std::make_shared<PlusMinusAlgebra>(std::move(base), sign);
}

// ---------------------------------------------------------------------------
// Registry

namespace {

std::optional<OrdinaryAlgebraDef> ordinary_by_short_name(const std::string& s)
{
    if (s == "oct" || s == "octonions") {
        return octonions();
    }
    if (s == "m2") {
        return matrix_algebra(2);
    }
    if (s == "sl2") {
        return sl2();
    }
    return std::nullopt;
}

} // namespace

const std::vector<std::string>& builtin_algebra_names()
{
    static const std::vector<std::string> names = {"virasoro", "cur-m2",   "cur-sl2",
                                                   "cur-octonions", "p-m2-t1", "p-oct-t1"};
    return names;
}

std::shared_ptr<const ConformalAlgebra> builtin_algebra(const std::string& name)
{
    if (!name.empty() && (name.back() == '+' || name.back() == '-')) {
        Sign sign = name.back() == '+' ? Sign::plus : Sign::minus;
        return plus_minus_algebra(builtin_algebra(name.substr(0, name.size() - 1)), sign);
    }
    if (name == "virasoro") {
        return std::make_shared<FiniteConformalAlgebra>(virasoro());
    }
    if (name.rfind("cur-", 0) == 0) {
        if (auto a = ordinary_by_short_name(name.substr(4))) {
            return std::make_shared<FiniteConformalAlgebra>(current_algebra(*a));
        }
    }
    static const std::regex poly(R"(p-([a-z0-9]+)-t([0-9]))");
    std::smatch m;
    if (std::regex_match(name, m, poly)) {
        if (auto a = ordinary_by_short_name(m[1].str())) {
            auto k = static_cast<unsigned>(std::stoul(m[2].str()));
            return pseudo_of_comodule(std::make_shared<PolynomialComodule>(*a, k));
        }
    }
    throw std::invalid_argument("unknown algebra '" + name + "'");
}

ArtinReport artin_counterexample(const OrdinaryAlgebraDef& alg, std::size_t a, std::size_t b, std::size_t c)
{
    auto comodule = std::make_shared<PolynomialComodule>(alg, 1);
    auto p = pseudo_of_comodule(comodule);
    const ConformalAlgebra& P = *p;

    ConformalElement x = ConformalElement::basis(P, comodule->index(a, 1))
                         + ConformalElement::basis(P, comodule->index(b, 0));
    ConformalElement y = ConformalElement::basis(P, comodule->index(c, 0));
    PseudoElement X = PseudoElement::from_element(x);
    PseudoElement result = expanded_product(pseudo_product(x, y), X) - expanded_product(X, pseudo_product(y, x));

    auto associator = [&](std::size_t u, std::size_t v, std::size_t w) {
        Vector eu = alg.unit_vector(u), ev = alg.unit_vector(v), ew = alg.unit_vector(w);
        Vector l = alg.multiply(alg.multiply(eu, ev), ew);
        Vector r = alg.multiply(eu, alg.multiply(ev, ew));
        Coords out;
        for (std::size_t k = 0; k < l.size(); ++k) {
            add_to(out, comodule->index(k, 0), DPoly(l[k] - r[k]));
        }
        return ConformalElement(P, out);
    };
    ConformalElement bca = associator(b, c, a);
    ConformalElement acb = associator(a, c, b);

    RawPseudoElement raw;
    raw.arity = 3;
    raw.terms[Exponents{1, 0, 0}] = bca.coords();
    add_to(raw.terms[Exponents{0, 0, 1}], acb.coords());
    PseudoElement expected = to_normal_form(P, raw);
    return ArtinReport{p, std::move(result), std::move(expected), std::move(bca), std::move(acb)};
}

ArtinReport artin_counterexample() { return artin_counterexample(octonions(), 1, 2, 4); }

} // namespace confalg
