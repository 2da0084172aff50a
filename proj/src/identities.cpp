#include "confalg/identities.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace confalg {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position)
{
}

MultilinearityError::MultilinearityError(const std::string& message, unsigned variable)
    : std::runtime_error(message), variable_(variable)
{
}

// ---------------------------------------------------------------------------
// MonomialTree

struct MonomialTree::Node {
    MonomialTree left;
    MonomialTree right;
};

const MonomialTree& MonomialTree::left() const { return node_->left; }
const MonomialTree& MonomialTree::right() const { return node_->right; }

MonomialTree MonomialTree::leaf(unsigned variable)
{
    MonomialTree t;
    t.variable_ = variable;
    return t;
}

MonomialTree MonomialTree::product(MonomialTree left, MonomialTree right)
{
    MonomialTree t;
    t.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(right)});
    return t;
}

unsigned MonomialTree::degree() const { return is_leaf() ? 1 : left().degree() + right().degree(); }

void MonomialTree::collect(std::vector<unsigned>& out) const
{
    if (is_leaf()) {
        out.push_back(variable_);
        return;
    }
    left().collect(out);
    right().collect(out);
}

std::vector<unsigned> MonomialTree::variables() const
{
    std::vector<unsigned> out;
    collect(out);
    return out;
}

MonomialTree MonomialTree::relabel_from(const std::vector<unsigned>& labels, std::size_t& next) const
{
    if (is_leaf()) {
        return leaf(labels.at(next++));
    }
    MonomialTree l = left().relabel_from(labels, next);
    MonomialTree r = right().relabel_from(labels, next);
    return product(std::move(l), std::move(r));
}

MonomialTree MonomialTree::relabel(const std::vector<unsigned>& labels) const
{
    std::size_t next = 0;
    return relabel_from(labels, next);
}

MonomialTree MonomialTree::positions() const
{
    std::vector<unsigned> labels(degree());
    for (unsigned i = 0; i < labels.size(); ++i) {
        labels[i] = i + 1;
    }
    return relabel(labels);
}

std::string MonomialTree::shape() const
{
    return is_leaf() ? "." : "(" + left().shape() + right().shape() + ")";
}

namespace {

std::string render_tree(const MonomialTree& t, bool latex, bool top)
{
    if (t.is_leaf()) {
        return latex ? "x_{" + std::to_string(t.variable()) + "}" : "x" + std::to_string(t.variable());
    }
    std::string body = render_tree(t.left(), latex, false) + " " + render_tree(t.right(), latex, false);
    return top ? body : "(" + body + ")";
}

} // namespace

std::string MonomialTree::to_string() const { return render_tree(*this, false, true); }
std::string MonomialTree::to_latex() const { return render_tree(*this, true, true); }

bool operator==(const MonomialTree& a, const MonomialTree& b)
{
    if (a.is_leaf() || b.is_leaf()) {
        return a.is_leaf() && b.is_leaf() && a.variable_ == b.variable_;
    }
    return a.left() == b.left() && a.right() == b.right();
}

bool operator<(const MonomialTree& a, const MonomialTree& b)
{
    auto sa = a.shape();
    auto sb = b.shape();
    if (sa != sb) {
        return sa < sb;
    }
    return a.variables() < b.variables();
}

// ---------------------------------------------------------------------------
// Polynomials and parsing

namespace {

void add_term(Polynomial& p, const Rational& c, const MonomialTree& t)
{
    if (c == 0) {
        return;
    }
    for (auto it = p.terms.begin(); it != p.terms.end(); ++it) {
        if (it->tree == t) {
            it->coeff += c;
            if (it->coeff == 0) {
                p.terms.erase(it);
            }
            return;
        }
    }
    p.terms.push_back({c, t});
}

Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    for (const auto& x : a.terms) {
        for (const auto& y : b.terms) {
            add_term(r, x.coeff * y.coeff, MonomialTree::product(x.tree, y.tree));
        }
    }
    return r;
}

void add_scaled(Polynomial& acc, const Polynomial& p, const Rational& scale)
{
    for (const auto& t : p.terms) {
        add_term(acc, t.coeff * scale, t.tree);
    }
}

std::string coefficient_prefix(const Rational& mag, bool latex)
{
    if (mag == 1) {
        return "";
    }
    if (latex && mag.get_den() != 1) {
        return "\\frac{" + mag.get_num().get_str() + "}{" + mag.get_den().get_str() + "} ";
    }
    return mag.get_str() + " ";
}

template <class Iter, class Render>
std::string render_sum(Iter begin, Iter end, bool latex, Render render)
{
    if (begin == end) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (auto it = begin; it != end; ++it) {
        const Rational& c = it->coeff;
        if (first) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        out += coefficient_prefix(abs(c), latex) + render(*it);
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Polynomial parse()
    {
        Polynomial p = expr();
        skip();
        if (peek() == '=') {
            ++pos_;
            Polynomial rhs = expr();
            add_scaled(p, rhs, Rational(-1));
            skip();
        }
        if (pos_ < text_.size()) {
            fail(std::string("unexpected '") + text_[pos_] + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static bool starts_factor(char c) { return c == 'x' || c == '('; }

    Polynomial expr()
    {
        Polynomial p;
        bool first = true;
        while (true) {
            char c = peek();
            Rational sign(1);
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            add_scaled(p, term(), sign);
        }
        return p;
    }

    Polynomial term()
    {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            Rational coeff = number();
            if (peek() == '*') {
                ++pos_;
                if (!starts_factor(peek())) {
                    fail("expected a variable or '(' after '*'");
                }
            }
            if (!starts_factor(peek())) {
                if (coeff != 0) {
                    pos_ = start;
                    fail("constant term in a homogeneous identity");
                }
                return {};
            }
            Polynomial p = product();
            Polynomial r;
            add_scaled(r, p, coeff);
            return r;
        }
        if (!starts_factor(c)) {
            fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
        }
        return product();
    }

    Polynomial product()
    {
        Polynomial acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                if (!starts_factor(peek())) {
                    fail("expected a variable or '(' after '*'");
                }
            } else if (!starts_factor(c)) {
                break;
            }
            acc = multiply(acc, factor());
        }
        return acc;
    }

    Polynomial factor()
    {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return p;
        }
        // c == 'x'
        std::size_t start = pos_++;
        if (pos_ >= text_.size() || text_[pos_] < '1' || text_[pos_] > '9') {
            pos_ = start;
            fail("variables are x1 .. x9");
        }
        unsigned v = static_cast<unsigned>(text_[pos_++] - '0');
        if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
            pos_ = start;
            fail("variables are x1 .. x9");
        }
        Polynomial p;
        p.terms.push_back({Rational(1), MonomialTree::leaf(v)});
        return p;
    }

    Rational number()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t den = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (den == pos_) {
                fail("expected a denominator");
            }
        }
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument&) {
            pos_ = start;
            fail("bad number");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

std::string Polynomial::to_string() const
{
    return render_sum(terms.begin(), terms.end(), false, [](const Term& t) { return t.tree.to_string(); });
}

// ---------------------------------------------------------------------------
// Identity

MonomialTree Identity::Term::monomial() const { return tree.relabel(sigma.one_line()); }

Identity::Identity(unsigned arity, std::vector<Term> terms) : arity_(arity)
{
    auto key = [](const Term& t) { return std::make_pair(t.sigma.one_line(), t.tree.shape()); };
    for (auto& t : terms) {
        if (t.tree.degree() != arity || t.sigma.size() != arity) {
            throw MultilinearityError("term degree differs from the identity arity", 0);
        }
        t.tree = t.tree.positions();
    }
    std::stable_sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return key(a) < key(b); });
    for (auto& t : terms) {
        if (!terms_.empty() && key(terms_.back()) == key(t)) {
            terms_.back().coeff += t.coeff;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const Term& t) { return t.coeff == 0; });
}

Identity Identity::from_polynomial(const Polynomial& p)
{
    unsigned n = 0;
    std::vector<bool> used(10, false);
    for (const auto& t : p.terms) {
        for (unsigned v : t.tree.variables()) {
            n = std::max(n, v);
            used[v] = true;
        }
    }
    for (unsigned v = 1; v <= n; ++v) {
        if (!used[v]) {
            throw MultilinearityError("variables must be x1 .. x" + std::to_string(n) + "; x" + std::to_string(v)
                                          + " is never used",
                                      v);
        }
    }
    std::vector<Term> terms;
    for (const auto& t : p.terms) {
        std::vector<unsigned> vars = t.tree.variables();
        std::vector<int> count(n + 1, 0);
        for (unsigned v : vars) {
            if (++count[v] > 1) {
                throw MultilinearityError("x" + std::to_string(v) + " used twice in " + t.tree.to_string(), v);
            }
        }
        for (unsigned v = 1; v <= n; ++v) {
            if (count[v] == 0) {
                throw MultilinearityError("x" + std::to_string(v) + " missing from " + t.tree.to_string(), v);
            }
        }
        terms.push_back({t.coeff, Permutation::from_images(vars), t.tree.positions()});
    }
    return Identity(n, std::move(terms));
}

Polynomial Identity::to_polynomial() const
{
    Polynomial p;
    for (const auto& t : terms_) {
        p.terms.push_back({t.coeff, t.monomial()});
    }
    return p;
}

std::string Identity::to_string() const
{
    return render_sum(terms_.begin(), terms_.end(), false, [](const Term& t) { return t.monomial().to_string(); });
}

std::string Identity::to_latex() const
{
    return render_sum(terms_.begin(), terms_.end(), true, [](const Term& t) { return t.monomial().to_latex(); });
}

bool operator==(const Identity& a, const Identity& b)
{
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    if (a.is_zero()) {
        return true;
    }
    if (a.arity_ != b.arity_) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& x = a.terms_[i];
        const auto& y = b.terms_[i];
        if (x.coeff != y.coeff || x.sigma != y.sigma || !(x.tree == y.tree)) {
            return false;
        }
    }
    return true;
}

Identity parse_identity(std::string_view text) { return Identity::from_polynomial(parse_polynomial(text)); }

Identity multilinearize(const Polynomial& p)
{
    if (p.terms.empty()) {
        return Identity();
    }
    std::vector<unsigned> signature = p.terms.front().tree.variables();
    std::sort(signature.begin(), signature.end());
    for (const auto& t : p.terms) {
        auto vars = t.tree.variables();
        std::sort(vars.begin(), vars.end());
        if (vars != signature) {
            throw MultilinearityError("non-homogeneous polynomial: " + t.tree.to_string()
                                          + " has a different variable content",
                                      0);
        }
    }
    // degree and first fresh index of every variable, in variable order
    std::map<unsigned, unsigned> degree;
    for (unsigned v : signature) {
        ++degree[v];
    }
    std::map<unsigned, unsigned> base;
    unsigned next = 1;
    for (const auto& [v, d] : degree) {
        base[v] = next;
        next += d;
    }
    Polynomial out;
    for (const auto& t : p.terms) {
        std::vector<unsigned> vars = t.tree.variables();
        // Leaf slots grouped by variable; each group runs over all orderings of its fresh indices.
        std::vector<std::vector<std::size_t>> slots;
        std::vector<std::vector<unsigned>> fresh;
        for (const auto& [v, d] : degree) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == v) {
                    s.push_back(i);
                }
            }
            std::vector<unsigned> f(d);
            for (unsigned k = 0; k < d; ++k) {
                f[k] = base[v] + k;
            }
            slots.push_back(std::move(s));
            fresh.push_back(std::move(f));
        }
        std::vector<unsigned> labels(vars.size());
        auto rec = [&](auto&& self, std::size_t group) -> void {
            if (group == slots.size()) {
                add_term(out, t.coeff, t.tree.relabel(labels));
                return;
            }
            std::vector<unsigned> perm = fresh[group];
            do {
                for (std::size_t k = 0; k < perm.size(); ++k) {
                    labels[slots[group][k]] = perm[k];
                }
                self(self, group + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(rec, 0);
    }
    if (out.terms.empty()) {
        return Identity();
    }
    return Identity::from_polynomial(out);
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

struct BuiltinSpec {
    const char* name;
    const char* text;
    bool polarize;
};

// J(a,b,c) = (ab)c - a(bc) + b(ac); the Mal'cev law J(a,b,ac) = J(a,b,c)a with a = x1, b = x2, c = x3.
const BuiltinSpec kBuiltins[] = {
    {"associative", "(x1 x2) x3 - x1 (x2 x3)", false},
    {"commutative", "x1 x2 - x2 x1", false},
    {"anticommutative", "x1 x2 + x2 x1", false},
    {"jacobi", "(x1 x2) x3 - x1 (x2 x3) + x2 (x1 x3)", false},
    {"jordan",
     "x1 (x2 (x3 x4)) + (x2 (x1 x3)) x4 + x3 (x2 (x1 x4))"
     " - (x1 x2) (x3 x4) - (x1 x3) (x2 x4) - (x3 x2) (x1 x4)",
     false},
    {"left-alternative", "(x1 x1) x2 - x1 (x1 x2)", true},
    {"right-alternative", "x1 (x2 x2) - (x1 x2) x2", true},
    {"malcev",
     "(x1 x2) (x1 x3) - x1 (x2 (x1 x3)) + x2 (x1 (x1 x3))"
     " - ((x1 x2) x3) x1 + (x1 (x2 x3)) x1 - (x2 (x1 x3)) x1",
     true},
};

} // namespace

const std::vector<std::string>& builtin_identity_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> r;
        for (const auto& b : kBuiltins) {
            r.emplace_back(b.name);
        }
        return r;
    }();
    return names;
}

Identity builtin_identity(std::string_view name)
{
    // "left-alt" and "right-alt" are accepted as short forms.
    std::string key(name);
    if (key == "left-alt") {
        key = "left-alternative";
    } else if (key == "right-alt") {
        key = "right-alternative";
    }
    for (const auto& b : kBuiltins) {
        if (key == b.name) {
            Polynomial p = parse_polynomial(b.text);
            return b.polarize ? multilinearize(p) : Identity::from_polynomial(p);
        }
    }
    throw std::invalid_argument("unknown identity '" + std::string(name) + "'");
}

} // namespace confalg
