#include "confalg/translator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace confalg {

namespace {

std::string pseudo_monomial(const MonomialTree& t, bool latex, bool top)
{
    if (t.is_leaf()) {
        return variable_name(t.variable());
    }
    std::string s = pseudo_monomial(t.left(), latex, false) + (latex ? " * " : "*")
                    + pseudo_monomial(t.right(), latex, false);
    return top ? s : "(" + s + ")";
}

std::string sigma_label(const Permutation& sigma, bool latex)
{
    if (latex) {
        return "(\\sigma_{" + sigma.to_string() + "} \\otimes_H \\mathrm{id})";
    }
    return "(σ" + sigma.to_string() + " ⊗_H id)";
}

std::string render_pseudo_identity(const Identity& f, bool latex)
{
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational mag = abs(t.coeff);
        if (first) {
            out += t.coeff < 0 ? "-" : "";
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        if (mag != 1) {
            out += latex ? to_string(mag) + " " : to_string(mag) + " ";
        }
        std::string body = pseudo_monomial(t.monomial(), latex, true);
        if (t.sigma.is_identity()) {
            out += body;
        } else {
            out += sigma_label(t.sigma, latex) + "(" + body + ")";
        }
    }
    return out;
}

std::string index_name(std::size_t slot)
{
    static const char* names[] = {"n", "m", "l", "k", "p", "q", "r", "s"};
    if (slot < std::size(names)) {
        return names[slot];
    }
    return "n" + std::to_string(slot + 1);
}

} // namespace

std::string variable_name(unsigned one_based)
{
    if (one_based >= 1 && one_based <= 26) {
        return std::string(1, static_cast<char>('a' + one_based - 1));
    }
    return "x" + std::to_string(one_based);
}

std::string PseudoIdentity::to_string() const { return render_pseudo_identity(f_, false); }
std::string PseudoIdentity::to_latex() const { return render_pseudo_identity(f_, true); }

PseudoIdentity translate(const Identity& f) { return PseudoIdentity(f); }

PseudoElement evaluate_monomial(const MonomialTree& t, const std::vector<PseudoElement>& args)
{
    return evaluate_tree(t, args, [](const PseudoElement& x, const PseudoElement& y) {
        return expanded_product(x, y);
    });
}

PseudoElement evaluate(const PseudoIdentity& f, const std::vector<PseudoElement>& args)
{
    if (args.size() != f.arity()) {
        throw std::invalid_argument("identity of arity " + std::to_string(f.arity()) + " evaluated on "
                                    + std::to_string(args.size()) + " arguments");
    }
    if (args.empty()) {
        throw std::invalid_argument("cannot evaluate an identity without arguments");
    }
    std::vector<unsigned> blocks;
    unsigned total = 0;
    for (const auto& a : args) {
        blocks.push_back(a.arity());
        total += a.arity();
    }
    PseudoElement sum(args.front().algebra(), total);
    for (const auto& t : f.terms()) {
        PseudoElement v = evaluate_monomial(t.monomial(), args);
        sum += permute(expand_permutation(t.sigma, blocks), v) * t.coeff;
    }
    return sum;
}

PseudoElement evaluate(const PseudoIdentity& f, const std::vector<ConformalElement>& args)
{
    std::vector<PseudoElement> lifted;
    lifted.reserve(args.size());
    for (const auto& a : args) {
        lifted.push_back(PseudoElement::from_element(a));
    }
    return evaluate(f, lifted);
}

// ---------------------------------------------------------------------------

const PseudoElement& BasisEvaluator::subtree(const MonomialTree& t, const std::vector<std::size_t>& generators)
{
    std::string key;
    auto build = [&](auto&& self, const MonomialTree& node) -> void {
        if (node.is_leaf()) {
            key += std::to_string(generators.at(node.variable() - 1));
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
    PseudoElement v = t.is_leaf()
                          ? PseudoElement::from_element(ConformalElement::basis(*alg_, generators.at(t.variable() - 1)))
                          : expanded_product(subtree(t.left(), generators), subtree(t.right(), generators));
    return cache_.emplace(std::move(key), std::move(v)).first->second;
}

PseudoElement BasisEvaluator::evaluate_term(const Identity::Term& term, const std::vector<std::size_t>& generators)
{
    return permute(term.sigma, subtree(term.monomial(), generators)) * term.coeff;
}

PseudoElement BasisEvaluator::evaluate(const PseudoIdentity& f, const std::vector<std::size_t>& generators)
{
    if (generators.size() != f.arity()) {
        throw std::invalid_argument("wrong number of generators for the identity");
    }
    PseudoElement sum(*alg_, f.arity());
    for (const auto& t : f.terms()) {
        sum += evaluate_term(t, generators);
    }
    return sum;
}

PseudoElement malcev_pseudo_expression(const ConformalElement& a, const ConformalElement& b,
                                       const ConformalElement& c, const ConformalElement& d)
{
    static const PseudoIdentity jac = translate(builtin_identity("jacobi"));
    auto J = [](const PseudoElement& x, const PseudoElement& y, const PseudoElement& z) {
        return evaluate(jac, {x, y, z});
    };
    PseudoElement A = PseudoElement::from_element(a);
    PseudoElement B = PseudoElement::from_element(b);
    PseudoElement C = PseudoElement::from_element(c);
    PseudoElement Dd = PseudoElement::from_element(d);

    PseudoElement lhs = J(A, B, expanded_product(C, Dd)) + expanded_product(J(A, B, C), Dd);
    PseudoElement inner = expanded_product(A, J(C, B, Dd)) + J(expanded_product(A, C), B, Dd);
    return lhs + permute(Permutation::transposition(2, 3, 4), inner);
}

// ---------------------------------------------------------------------------
// WordAlgebra

WordAlgebra::WordAlgebra(unsigned generators, unsigned cutoff) : generators_(generators), cutoff_(cutoff)
{
    if (cutoff == 0) {
        throw std::invalid_argument("cutoff must be at least 1");
    }
}

WordAlgebra::Word WordAlgebra::word(std::size_t i) const
{
    if (i < generators_) {
        throw std::invalid_argument("generator is not a word");
    }
    std::lock_guard lock(words_mutex_);
    return words_.at(i - generators_);
}

std::size_t WordAlgebra::intern(std::size_t left, unsigned index, std::size_t right) const
{
    std::lock_guard lock(words_mutex_);
    auto key = std::make_tuple(left, index, right);
    if (auto it = index_.find(key); it != index_.end()) {
        return it->second;
    }
    std::size_t id = generators_ + words_.size();
    words_.push_back({left, index, right});
    index_.emplace(key, id);
    return id;
}

std::vector<Coords> WordAlgebra::compute_products(std::size_t i, std::size_t j) const
{
    std::vector<Coords> out(cutoff_);
    for (unsigned k = 0; k < cutoff_; ++k) {
        out[k].emplace(intern(i, k, j), DPoly(1));
    }
    return out;
}

std::string WordAlgebra::render(std::size_t i, bool latex, bool top) const
{
    if (i < generators_) {
        return variable_name(static_cast<unsigned>(i + 1));
    }
    Word w = word(i);
    std::string op = latex ? " \\circ_{" + std::to_string(w.index) + "} " : " ∘_" + std::to_string(w.index) + " ";
    std::string s = render(w.left, latex, false) + op + render(w.right, latex, false);
    return top ? s : "(" + s + ")";
}

// ---------------------------------------------------------------------------
// Coordinates

namespace {

using CoordMap = std::map<Exponents, Coords>;

void accumulate(CoordMap& m, const Exponents& key, const Coords& c, const Rational& scale)
{
    Coords& slot = m[key];
    add_to(slot, c, scale);
    if (slot.empty()) {
        m.erase(key);
    }
}

/// Keys are r-tuples of D-exponents on the first r slots (the last slot is 1).
CoordMap left_normed(const CoordMap& x, unsigned r)
{
    if (r == 0) {
        return x;
    }
    // Split D^k on slot r as ((ΔD) - D')^k, D' the diagonal D on slots 1..r-1,
    // and collect by powers of ΔD = Δ^{(r)}(D).
    std::map<unsigned, CoordMap> z;
    for (const auto& [key, value] : x) {
        unsigned k = key[r - 1];
        Exponents head(key.begin(), key.end() - 1);
        for (unsigned m = (r == 1 ? k : 0); m <= k; ++m) {
            // (ΔD)^m = (-1)^m m! Δ(h_m).
            Rational c = binomial(Integer(k), m) * sign_power(k) * Rational(factorial(m));
            if (r == 1) {
                accumulate(z[m], head, value, c);
                continue;
            }
            TensorPoly shift = coproduct_iter(DPoly::monomial(k - m), r - 1) * TensorPoly::monomial(head);
            for (const auto& [e, q] : shift.terms()) {
                accumulate(z[m], e, value, c * q);
            }
        }
    }
    CoordMap out;
    for (const auto& [m, zm] : z) {
        for (auto& [key, value] : left_normed(zm, r - 1)) {
            Exponents full = key;
            full.push_back(m);
            accumulate(out, full, value, 1);
        }
    }
    return out;
}

} // namespace

std::map<Exponents, Coords> coordinates(const PseudoElement& a, Coordinates coords)
{
    CoordMap direct;
    for (const auto& [key, value] : a.terms()) {
        Rational c = 1;
        for (unsigned k : key) {
            c *= sign_power(k) * Rational(factorial(k));
        }
        accumulate(direct, key, value, c);
    }
    if (coords == Coordinates::direct) {
        return direct;
    }
    // D^k = (-1)^k k! h_k, so the left-normed recursion can start from the raw keys.
    CoordMap raw;
    for (const auto& [key, value] : a.terms()) {
        accumulate(raw, key, value, 1);
    }
    return left_normed(raw, a.arity() - 1);
}

Coordinates default_coordinates(unsigned arity)
{
    return arity <= 3 ? Coordinates::left_normed : Coordinates::direct;
}

const char* coordinates_name(Coordinates c)
{
    return c == Coordinates::direct ? "direct" : "left-normed";
}

// ---------------------------------------------------------------------------
// Instances

namespace {

std::string render_instance_value(const ConformalElement& v, bool latex)
{
    if (v.is_zero()) {
        return "0";
    }
    // Words are numbered in the order the evaluation meets them, which follows the identity's terms.
    const auto& words = dynamic_cast<const WordAlgebra&>(*v.parent());
    std::string out;
    bool first = true;
    for (const auto& [i, p] : v.coords()) {
        std::string w = words.render(i, latex, true);
        for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
            const auto& [e, c] = *it;
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
            if (e == 0) {
                out += w;
            } else {
                std::string d = e == 1 ? "D" : (latex ? "D^{" : "D^") + std::to_string(e) + (latex ? "}" : "");
                out += d + "(" + w + ")";
            }
        }
    }
    return out;
}

std::string render_indices(const std::vector<unsigned>& idx)
{
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out += (i ? ", " : "") + index_name(i) + "=" + std::to_string(idx[i]);
    }
    return out;
}

} // namespace

std::string ConformalInstance::to_string() const
{
    return render_indices(indices) + ": " + render_instance_value(value, false) + " = 0";
}

std::string ConformalInstance::to_latex() const
{
    return "% " + render_indices(indices) + "\n" + render_instance_value(value, true) + " = 0";
}

std::string EmittedFamily::to_string() const
{
    std::ostringstream out;
    out << "f* = " << identity.to_string() << "\n";
    out << "conformal form (" << coordinates_name(coords) << " coordinates, indices < " << cutoff << ", "
        << instances.size() << " instances):\n";
    for (const auto& inst : instances) {
        out << "  " << inst.to_string() << "\n";
    }
    return out.str();
}

std::string EmittedFamily::to_latex() const
{
    std::ostringstream out;
    out << "\\[ " << identity.to_latex() << " = 0 \\]\n";
    out << "% " << coordinates_name(coords) << " coordinates, indices < " << cutoff << "\n";
    out << "\\begin{gather*}\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
        out << instances[i].to_latex() << (i + 1 < instances.size() ? " \\\\\n" : "\n");
    }
    out << "\\end{gather*}\n";
    return out.str();
}

std::string EmittedFamily::to_json() const
{
    nlohmann::json doc;
    doc["identity"] = identity.ordinary().to_string();
    doc["pseudo"] = identity.to_string();
    doc["cutoff"] = cutoff;
    doc["coordinates"] = coordinates_name(coords);
    doc["instances"] = nlohmann::json::array();
    for (const auto& inst : instances) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [i, p] : inst.value.coords()) {
            for (const auto& [e, c] : p.terms()) {
                terms.push_back(nlohmann::json{
                    {"coeff", confalg::to_string(c)}, {"d", e}, {"word", words->render(i, false, true)}});
            }
        }
        doc["instances"].push_back(
            nlohmann::json{{"indices", inst.indices}, {"text", inst.to_string()}, {"terms", std::move(terms)}});
    }
    return doc.dump(2);
}

EmittedFamily emit_conformal_form(const Identity& f, unsigned cutoff, Coordinates coords, bool all_indices)
{
    if (cutoff == 0) {
        throw std::invalid_argument("cutoff must be at least 1");
    }
    if (f.arity() == 0) {
        throw std::invalid_argument("cannot emit the zero identity");
    }
    auto words = std::make_shared<WordAlgebra>(f.arity(), cutoff);
    std::vector<ConformalElement> gens;
    for (unsigned i = 0; i < f.arity(); ++i) {
        gens.push_back(ConformalElement::basis(*words, i));
    }
    PseudoIdentity pf = translate(f);
    PseudoElement value = evaluate(pf, gens);

    EmittedFamily family{words, pf, cutoff, coords, {}};
    for (auto& [key, c] : coordinates(value, coords)) {
        bool inside = std::all_of(key.begin(), key.end(), [&](unsigned k) { return k < cutoff; });
        if (!inside && !all_indices) {
            continue;
        }
        family.instances.push_back({std::vector<unsigned>(key.begin(), key.end()), ConformalElement(*words, c)});
    }
    return family;
}

ConformalElement instantiate(const WordAlgebra& words, const ConformalElement& value,
                             const std::vector<ConformalElement>& args)
{
    if (args.size() != words.generator_count()) {
        throw std::invalid_argument("instantiate needs one element per generator");
    }
    std::map<std::size_t, ConformalElement> memo;
    auto eval = [&](auto&& self, std::size_t i) -> ConformalElement {
        if (words.is_generator(i)) {
            return args[i];
        }
        if (auto it = memo.find(i); it != memo.end()) {
            return it->second;
        }
        WordAlgebra::Word w = words.word(i);
        ConformalElement r = n_product(self(self, w.left), self(self, w.right), w.index);
        memo.emplace(i, r);
        return r;
    };
    ConformalElement sum(*args.front().parent());
    for (const auto& [i, p] : value.coords()) {
        sum += p * eval(eval, i);
    }
    return sum;
}

} // namespace confalg
