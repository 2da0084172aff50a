#include "confalg/coeff.hpp"

#include <sstream>
#include <stdexcept>

namespace confalg {

namespace {

const ConformalAlgebra* common(const CoeffElement& u, const CoeffElement& v)
{
    if (u.is_zero()) {
        return v.parent() ? v.parent() : u.parent();
    }
    if (v.is_zero() || u.parent() == v.parent()) {
        return u.parent();
    }
    throw std::invalid_argument("coefficient elements of different algebras");
}

std::string render(const CoeffElement& x, bool latex)
{
    if (x.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [key, c] : x.coords()) {
        if (first) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        Rational mag = abs(c);
        if (mag != 1) {
            out += latex && mag.get_den() != 1
                       ? "\\frac{" + mag.get_num().get_str() + "}{" + mag.get_den().get_str() + "} "
                       : to_string(mag) + " ";
        }
        out += x.parent()->basis_label(key.first) + "(" + std::to_string(key.second) + ")";
    }
    return out;
}

} // namespace

Rational CoeffElement::coefficient(std::size_t basis, long degree) const
{
    auto it = coords_.find({basis, degree});
    return it == coords_.end() ? Rational(0) : it->second;
}

void CoeffElement::add(std::size_t basis, long degree, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, fresh] = coords_.try_emplace({basis, degree}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) {
            coords_.erase(it);
        }
    }
}

void CoeffElement::adopt(const CoeffElement& o) { parent_ = common(*this, o); }

CoeffElement& CoeffElement::operator+=(const CoeffElement& o)
{
    adopt(o);
    for (const auto& [k, c] : o.coords_) {
        add(k.first, k.second, c);
    }
    return *this;
}

CoeffElement& CoeffElement::operator-=(const CoeffElement& o)
{
    adopt(o);
    for (const auto& [k, c] : o.coords_) {
        add(k.first, k.second, -c);
    }
    return *this;
}

CoeffElement& CoeffElement::operator*=(const Rational& c)
{
    if (c == 0) {
        coords_.clear();
        return *this;
    }
    for (auto& [k, v] : coords_) {
        v *= c;
    }
    return *this;
}

bool operator==(const CoeffElement& a, const CoeffElement& b)
{
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    return a.parent_ == b.parent_ && a.coords_ == b.coords_;
}

std::string CoeffElement::to_string() const { return render(*this, false); }
std::string CoeffElement::to_latex() const { return render(*this, true); }

CoeffElement coeff_inject(const ConformalElement& a, long n)
{
    CoeffElement out;
    if (a.parent()) {
        out = CoeffElement(*a.parent());
    }
    for (const auto& [i, p] : a.coords()) {
        for (const auto& [k, c] : p.terms()) {
            out.add(i, n - static_cast<long>(k), c * sign_power(k) * Rational(falling_factorial(Integer(n), k)));
        }
    }
    return out;
}

CoeffElement coeff_product(const CoeffElement& u, const CoeffElement& v)
{
    const ConformalAlgebra* alg = common(u, v);
    CoeffElement out;
    if (alg) {
        out = CoeffElement(*alg);
    }
    for (const auto& [ka, x] : u.coords()) {
        for (const auto& [kb, y] : v.coords()) {
            const auto& products = alg->basis_products(ka.first, kb.first);
            for (unsigned s = 0; s < products.size(); ++s) {
                if (products[s].empty()) {
                    continue;
                }
                Rational c = x * y * binomial(Integer(ka.second), s);
                if (c == 0) {
                    continue;
                }
                out += coeff_inject(ConformalElement(*alg, products[s]), ka.second + kb.second - s) * c;
            }
        }
    }
    return out;
}

CoeffElement evaluate_identity_coeff(const Identity& f, const CoeffAssignment& assignment)
{
    if (assignment.size() != f.arity()) {
        throw std::invalid_argument("identity of arity " + std::to_string(f.arity()) + " given "
                                    + std::to_string(assignment.size()) + " coefficient arguments");
    }
    std::vector<CoeffElement> args;
    for (const auto& [a, n] : assignment) {
        args.push_back(coeff_inject(a, n));
    }
    CoeffElement sum;
    for (const auto& [a, n] : assignment) {
        if (a.parent()) {
            sum = CoeffElement(*a.parent());
            break;
        }
    }
    for (const auto& t : f.terms()) {
        sum += evaluate_tree(t.monomial(), args, coeff_product) * t.coeff;
    }
    return sum;
}

CoeffElement reconstruct_n_product(const ConformalElement& a, const ConformalElement& b, unsigned n, long k)
{
    CoeffElement out;
    if (const ConformalAlgebra* p = common_parent(a, b)) {
        out = CoeffElement(*p);
    }
    for (unsigned s = 0; s <= n; ++s) {
        Rational c = sign_power(s) * binomial(Integer(n), s);
        out += coeff_product(coeff_inject(a, static_cast<long>(n) - s), coeff_inject(b, k + s)) * c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// DegreePoly

DegreePoly DegreePoly::constant(unsigned variables, const Rational& c)
{
    DegreePoly p(variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
}

DegreePoly DegreePoly::variable(unsigned variables, unsigned v)
{
    DegreePoly p(variables);
    Exponents e(variables, 0);
    e.at(v) = 1;
    p.add_term(e, 1);
    return p;
}

void DegreePoly::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

unsigned DegreePoly::total_degree() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (unsigned x : e) {
            s += x;
        }
        d = std::max(d, s);
    }
    return d;
}

Rational DegreePoly::evaluate(const std::vector<long>& point) const
{
    if (point.size() != vars_) {
        throw std::invalid_argument("degree point has the wrong number of coordinates");
    }
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Integer m = 1;
        for (unsigned v = 0; v < vars_; ++v) {
            if (e[v] > 0) {
                Integer x = point[v];
                Integer pw;
                mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), e[v]);
                m *= pw;
            }
        }
        sum += c * m;
    }
    return sum;
}

DegreePoly& DegreePoly::operator+=(const DegreePoly& o)
{
    if (vars_ != o.vars_ && !o.is_zero()) {
        if (!is_zero()) {
            throw std::invalid_argument("degree polynomials in different variable sets");
        }
        vars_ = o.vars_;
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

DegreePoly& DegreePoly::operator*=(const Rational& c)
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

DegreePoly operator*(const DegreePoly& a, const DegreePoly& b)
{
    if (a.vars_ != b.vars_) {
        throw std::invalid_argument("degree polynomials in different variable sets");
    }
    DegreePoly out(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = ea;
            for (unsigned v = 0; v < e.size(); ++v) {
                e[v] += eb[v];
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::string DegreePoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (unsigned v = 0; v < e.size(); ++v) {
            if (e[v] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : " ") + std::string("n") + std::to_string(v + 1);
            if (e[v] > 1) {
                mono += "^" + std::to_string(e[v]);
            }
        }
        if (first) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        Rational mag = abs(c);
        if (mono.empty()) {
            out += confalg::to_string(mag);
        } else {
            out += (mag == 1 ? "" : confalg::to_string(mag) + " ") + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// SymbolicCoeff

namespace {

/// (L - c)(L - c - 1)…(L - c - k + 1) with L the sum of the variables in `support`.
DegreePoly falling(unsigned vars, std::uint32_t support, long c, unsigned k)
{
    DegreePoly lin(vars);
    for (unsigned v = 0; v < vars; ++v) {
        if (support & (1u << v)) {
            lin += DegreePoly::variable(vars, v);
        }
    }
    DegreePoly out = DegreePoly::constant(vars, 1);
    for (unsigned i = 0; i < k; ++i) {
        out = out * (lin + DegreePoly::constant(vars, Rational(-(c + static_cast<long>(i)))));
    }
    return out;
}

long degree_at(std::uint32_t support, unsigned shift, const std::vector<long>& point)
{
    long d = 0;
    for (unsigned v = 0; v < point.size(); ++v) {
        if (support & (1u << v)) {
            d += point[v];
        }
    }
    return d - static_cast<long>(shift);
}

} // namespace

SymbolicCoeff::SymbolicCoeff(const ConformalAlgebra& alg, unsigned variables, std::uint32_t support)
    : alg_(&alg), vars_(variables), support_(support)
{
    if (variables > 31) {
        throw std::invalid_argument("too many degree variables");
    }
}

SymbolicCoeff SymbolicCoeff::basis(const ConformalAlgebra& alg, std::size_t i, unsigned v, unsigned variables)
{
    SymbolicCoeff out(alg, variables, 1u << v);
    out.add({i, 0}, DegreePoly::constant(variables, 1));
    return out;
}

void SymbolicCoeff::add(const Key& key, const DegreePoly& p)
{
    if (p.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.try_emplace(key, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

SymbolicCoeff& SymbolicCoeff::operator+=(const SymbolicCoeff& o)
{
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        support_ = o.support_;
    } else if (support_ != o.support_) {
        throw std::invalid_argument("adding symbolic coefficients of different degree forms");
    }
    for (const auto& [k, p] : o.terms_) {
        add(k, p);
    }
    return *this;
}

SymbolicCoeff& SymbolicCoeff::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, p] : terms_) {
        p *= c;
    }
    return *this;
}

CoeffElement SymbolicCoeff::at(const std::vector<long>& point) const
{
    CoeffElement out(*alg_);
    for (const auto& [k, p] : terms_) {
        out.add(k.first, degree_at(support_, k.second, point), p.evaluate(point));
    }
    return out;
}

bool SymbolicCoeff::vanishes_at(const std::vector<long>& point) const
{
    // Distinct shifts are distinct elements at any point, so termwise is enough.
    for (const auto& [k, p] : terms_) {
        if (p.evaluate(point) != 0) {
            return false;
        }
    }
    return true;
}

SymbolicCoeff symbolic_product(const SymbolicCoeff& u, const SymbolicCoeff& v)
{
    if (&u.algebra() != &v.algebra() || u.variables() != v.variables()) {
        throw std::invalid_argument("symbolic coefficients of different algebras or variable sets");
    }
    if (u.support() & v.support()) {
        throw std::invalid_argument("symbolic product of elements sharing a degree variable");
    }
    const ConformalAlgebra& alg = u.algebra();
    unsigned vars = u.variables();
    std::uint32_t support = u.support() | v.support();
    SymbolicCoeff out(alg, vars, support);
    for (const auto& [ka, pa] : u.terms()) {
        for (const auto& [kb, pb] : v.terms()) {
            const auto& products = alg.basis_products(ka.first, kb.first);
            DegreePoly base = pa * pb;
            for (unsigned s = 0; s < products.size(); ++s) {
                if (products[s].empty()) {
                    continue;
                }
                // C(N, s) with N = L_u - p.
                DegreePoly bin = falling(vars, u.support(), ka.second, s) * (Rational(1) / Rational(factorial(s)));
                DegreePoly head = base * bin;
                unsigned shift = ka.second + kb.second + s;
                for (const auto& [c, poly] : products[s]) {
                    for (const auto& [k, coef] : poly.terms()) {
                        // (D^k e)(K) = (-1)^k (K)_k e(K-k), K = L - shift.
                        DegreePoly term = head * falling(vars, support, shift, k) * (coef * sign_power(k));
                        out.add({c, shift + k}, term);
                    }
                }
            }
        }
    }
    return out;
}

const SymbolicCoeff& SymbolicEvaluator::subtree(const MonomialTree& t, const std::vector<std::size_t>& generators,
                                                unsigned vars)
{
    std::string key = std::to_string(vars) + ":";
    auto build = [&](auto&& self, const MonomialTree& node) -> void {
        if (node.is_leaf()) {
            key += std::to_string(generators.at(node.variable() - 1)) + "@" + std::to_string(node.variable());
            return;
        }
        key += '(';
        self(self, node.left());
        key += ' ';
        self(self, node.right());
        key += ')';
    };
    build(build, t);
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    SymbolicCoeff v = t.is_leaf()
                          ? SymbolicCoeff::basis(*alg_, generators.at(t.variable() - 1), t.variable() - 1, vars)
                          : symbolic_product(subtree(t.left(), generators, vars), subtree(t.right(), generators, vars));
    return cache_.emplace(std::move(key), std::move(v)).first->second;
}

SymbolicCoeff SymbolicEvaluator::evaluate(const Identity& f, const std::vector<std::size_t>& generators)
{
    if (generators.size() != f.arity()) {
        throw std::invalid_argument("wrong number of generators for the identity");
    }
    unsigned vars = f.arity();
    std::uint32_t all = vars >= 32 ? ~0u : (1u << vars) - 1;
    SymbolicCoeff sum(*alg_, vars, all);
    for (const auto& t : f.terms()) {
        SymbolicCoeff v = subtree(t.monomial(), generators, vars);
        v *= t.coeff;
        sum += v;
    }
    return sum;
}

} // namespace confalg
