#include "confalg/conformal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace confalg {

void add_to(Coords& acc, std::size_t basis, const DPoly& p)
{
    if (p.is_zero()) {
        return;
    }
    auto [it, inserted] = acc.try_emplace(basis, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) {
            acc.erase(it);
        }
    }
}

void add_to(Coords& acc, const Coords& x, const Rational& scale)
{
    if (scale == 0) {
        return;
    }
    for (const auto& [i, p] : x) {
        add_to(acc, i, scale == 1 ? p : p * scale);
    }
}

Coords h_action(const DPoly& p, const Coords& x)
{
    Coords r;
    for (const auto& [i, q] : x) {
        add_to(r, i, p * q);
    }
    return r;
}

const std::vector<Coords>& LazyConformalAlgebra::basis_products(std::size_t i, std::size_t j) const
{
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find({i, j});
        if (it != cache_.end()) {
            return it->second;
        }
    }
    auto computed = compute_products(i, j);
    while (!computed.empty() && computed.back().empty()) {
        computed.pop_back();
    }
    std::lock_guard lock(mutex_);
    // std::map nodes are stable, so the reference survives later insertions.
    return cache_.try_emplace({i, j}, std::move(computed)).first->second;
}

// ---------------------------------------------------------------------------
// ConformalElement

ConformalElement::ConformalElement(const ConformalAlgebra& parent, Coords coords)
    : parent_(&parent), coords_(std::move(coords))
{
    for (auto it = coords_.begin(); it != coords_.end();) {
        it = it->second.is_zero() ? coords_.erase(it) : std::next(it);
    }
}

ConformalElement ConformalElement::basis(const ConformalAlgebra& parent, std::size_t i,
                                         const DPoly& coeff)
{
    Coords c;
    add_to(c, i, coeff);
    return ConformalElement(parent, std::move(c));
}

const ConformalAlgebra* common_parent(const ConformalElement& a, const ConformalElement& b)
{
    if (a.parent() == b.parent() || b.parent() == nullptr) {
        return a.parent();
    }
    if (a.parent() == nullptr) {
        return b.parent();
    }
    if (a.is_zero()) {
        return b.parent();
    }
    if (b.is_zero()) {
        return a.parent();
    }
    throw DefinitionError("elements belong to different conformal algebras ('" + a.parent()->name()
                          + "' vs '" + b.parent()->name() + "')");
}

void ConformalElement::adopt_parent(const ConformalElement& o) { parent_ = common_parent(*this, o); }

ConformalElement& ConformalElement::operator+=(const ConformalElement& o)
{
    adopt_parent(o);
    add_to(coords_, o.coords_);
    return *this;
}

ConformalElement& ConformalElement::operator-=(const ConformalElement& o)
{
    adopt_parent(o);
    add_to(coords_, o.coords_, Rational(-1));
    return *this;
}

ConformalElement& ConformalElement::operator*=(const Rational& c)
{
    if (c == 0) {
        coords_.clear();
        return *this;
    }
    for (auto& [i, p] : coords_) {
        p *= c;
    }
    return *this;
}

ConformalElement operator*(const DPoly& p, const ConformalElement& a)
{
    if (a.parent_ == nullptr) {
        return a;
    }
    return ConformalElement(*a.parent_, h_action(p, a.coords_));
}

bool operator==(const ConformalElement& a, const ConformalElement& b)
{
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    return a.parent_ == b.parent_ && a.coords_ == b.coords_;
}

namespace {

std::string render_element(const ConformalElement& e, bool latex)
{
    if (e.is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [i, p] : e.coords()) {
        std::string label = e.parent()->basis_label(i);
        bool monomial = p.terms().size() == 1;
        bool negative = monomial && p.terms().begin()->second < 0;
        DPoly mag = negative ? -p : p;
        if (!first) {
            out << (negative ? " - " : " + ");
        } else if (negative) {
            out << "-";
        }
        first = false;
        if (mag == DPoly(1)) {
            out << label;
        } else if (monomial) {
            out << (latex ? mag.to_latex() : mag.to_string()) << " " << label;
        } else {
            out << "(" << (latex ? p.to_latex() : p.to_string()) << ") " << label;
        }
    }
    return out.str();
}

} // namespace

std::string ConformalElement::to_string() const { return render_element(*this, false); }
std::string ConformalElement::to_latex() const { return render_element(*this, true); }

// ---------------------------------------------------------------------------
// n-products

Coords basis_n_product(const ConformalAlgebra& alg, std::size_t i, unsigned p, std::size_t j,
                       unsigned q, unsigned n)
{
    Coords result;
    if (n < p) {
        return result; // (n)_p = 0
    }
    const auto& table = alg.basis_products(i, j);
    // Left rule p times: (D^p a) ∘_n b = (-1)^p (n)_p a ∘_{n-p} b.
    Rational left = sign_power(p) * Rational(falling_factorial(n, p));
    unsigned m = n - p;
    // Right rule q times: a ∘_m D^q b = Σ_r C(q,r) (m)_r D^{q-r} (a ∘_{m-r} b).
    for (unsigned r = 0; r <= std::min(q, m); ++r) {
        unsigned idx = m - r;
        if (idx >= table.size()) {
            continue;
        }
        Rational c = left * Rational(binomial(q, r)) * Rational(falling_factorial(m, r));
        add_to(result, h_action(DPoly::monomial(q - r, c), table[idx]));
    }
    return result;
}

ConformalElement n_product(const ConformalElement& a, const ConformalElement& b, unsigned n)
{
    const ConformalAlgebra* parent = common_parent(a, b);
    if (a.is_zero() || b.is_zero()) {
        return parent ? ConformalElement(*parent) : ConformalElement();
    }
    Coords result;
    for (const auto& [i, pa] : a.coords()) {
        for (const auto& [j, pb] : b.coords()) {
            for (const auto& [p, ca] : pa.terms()) {
                for (const auto& [q, cb] : pb.terms()) {
                    add_to(result, basis_n_product(*parent, i, p, j, q, n), ca * cb);
                }
            }
        }
    }
    return ConformalElement(*parent, std::move(result));
}

unsigned locality_estimate(const ConformalElement& a, const ConformalElement& b)
{
    const ConformalAlgebra* parent = common_parent(a, b);
    if (a.is_zero() || b.is_zero()) {
        return 0;
    }
    // Each D on either side can raise the bound by at most one.
    unsigned upper = 0;
    for (const auto& [i, pa] : a.coords()) {
        for (const auto& [j, pb] : b.coords()) {
            auto base = static_cast<unsigned>(parent->basis_products(i, j).size());
            if (base > 0) {
                upper = std::max(upper, base + pa.degree() + pb.degree());
            }
        }
    }
    return upper;
}

unsigned locality_bound(const ConformalElement& a, const ConformalElement& b)
{
    for (unsigned n = locality_estimate(a, b); n > 0; --n) {
        if (!n_product(a, b, n - 1).is_zero()) {
            return n;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Finite definitions

unsigned ConformalAlgebraDef::bound(std::size_t i, std::size_t j) const
{
    auto it = locality.find({i, j});
    return it == locality.end() ? 0 : it->second;
}

void ConformalAlgebraDef::infer_locality()
{
    locality.clear();
    for (const auto& [key, value] : table) {
        auto [i, j, n] = key;
        auto& bound = locality[{i, j}];
        bound = std::max(bound, n + 1);
    }
}

std::string ValidationReport::to_string() const
{
    std::ostringstream out;
    for (const auto& v : violations) {
        out << "violation: " << v.message << "\n";
    }
    for (const auto& [pair, n] : locality) {
        out << "locality N(" << pair.first << "," << pair.second << ") = " << n << "\n";
    }
    return out.str();
}

ValidationReport validate_definition(const ConformalAlgebraDef& def)
{
    ValidationReport report;
    const std::size_t r = def.rank();
    auto add = [&](Violation::Kind kind, std::string msg) {
        report.violations.push_back({kind, std::move(msg)});
    };
    std::set<std::string> seen;
    for (const auto& s : def.basis) {
        if (!seen.insert(s).second) {
            add(Violation::Kind::duplicate_symbol, "duplicate basis symbol '" + s + "'");
        }
    }
    for (const auto& [pair, n] : def.locality) {
        if (pair.first >= r || pair.second >= r) {
            add(Violation::Kind::locality_index, "locality declared for basis index out of range ("
                                                     + std::to_string(pair.first) + ","
                                                     + std::to_string(pair.second) + ")");
        } else {
            report.locality[pair] = n;
        }
    }
    for (const auto& [key, value] : def.table) {
        auto [i, j, n] = key;
        std::string where = "e" + std::to_string(i) + " ∘_" + std::to_string(n) + " e" + std::to_string(j);
        if (i >= r || j >= r) {
            add(Violation::Kind::basis_index, "product " + where + " references basis index >= rank "
                                                  + std::to_string(r));
            continue;
        }
        if (n >= def.bound(i, j)) {
            add(Violation::Kind::beyond_locality,
                "entry beyond declared locality: " + where + " but N = " + std::to_string(def.bound(i, j)));
        }
        for (const auto& [k, p] : value) {
            if (k >= r) {
                add(Violation::Kind::basis_index, "result of " + where + " references basis index "
                                                      + std::to_string(k) + " >= rank " + std::to_string(r));
            }
        }
    }
    for (const auto& [pair, bound] : report.locality) {
        for (unsigned n = 0; n < bound; ++n) {
            if (!def.table.count({pair.first, pair.second, n})) {
                add(Violation::Kind::missing_entry, "missing table entry e" + std::to_string(pair.first)
                                                        + " ∘_" + std::to_string(n) + " e"
                                                        + std::to_string(pair.second) + " below locality "
                                                        + std::to_string(bound));
            }
        }
    }
    return report;
}

FiniteConformalAlgebra::FiniteConformalAlgebra(ConformalAlgebraDef def) : def_(std::move(def))
{
    auto report = validate_definition(def_);
    if (!report.ok()) {
        throw DefinitionError("invalid conformal algebra '" + def_.name + "':\n" + report.to_string());
    }
    const std::size_t r = def_.rank();
    products_.assign(r, std::vector<std::vector<Coords>>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            unsigned n_max = def_.bound(i, j);
            auto& row = products_[i][j];
            for (unsigned n = 0; n < n_max; ++n) {
                row.push_back(def_.table.at({i, j, n}));
            }
            // Trailing zero entries do not count toward the effective bound.
            while (!row.empty() && row.back().empty()) {
                row.pop_back();
            }
        }
    }
}

const std::vector<Coords>& FiniteConformalAlgebra::basis_products(std::size_t i, std::size_t j) const
{
    return products_.at(i).at(j);
}

ConformalAlgebraDef to_definition(const ConformalAlgebra& alg, std::size_t basis_count)
{
    ConformalAlgebraDef def;
    def.name = alg.name();
    for (std::size_t i = 0; i < basis_count; ++i) {
        def.basis.push_back(alg.basis_label(i));
    }
    for (std::size_t i = 0; i < basis_count; ++i) {
        for (std::size_t j = 0; j < basis_count; ++j) {
            const auto& row = alg.basis_products(i, j);
            for (unsigned n = 0; n < row.size(); ++n) {
                for (const auto& [k, p] : row[n]) {
                    if (k >= basis_count) {
                        throw DefinitionError("product " + alg.basis_label(i) + " ∘_" + std::to_string(n) + " "
                                              + alg.basis_label(j) + " leaves the first "
                                              + std::to_string(basis_count) + " basis elements");
                    }
                }
                def.table[{i, j, n}] = row[n];
            }
            if (!row.empty()) {
                def.locality[{i, j}] = static_cast<unsigned>(row.size());
            }
        }
    }
    return def;
}

} // namespace confalg
