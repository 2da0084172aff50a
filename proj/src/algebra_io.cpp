#include "confalg/algebra_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <toml.hpp>

namespace confalg {

namespace {

[[noreturn]] void fail(const std::string& source, const toml::node* at, const std::string& message)
{
    std::string where = source;
    if (at && at->source().begin) {
        where += ":" + std::to_string(at->source().begin.line);
    }
    throw DefinitionError(where + ": " + message);
}

std::string need_string(const std::string& source, const toml::table& t, const char* key)
{
    const toml::node* n = t.get(key);
    if (!n || !n->is_string()) {
        fail(source, n ? n : &t, std::string("expected string field '") + key + "'");
    }
    return n->as_string()->get();
}

long need_integer(const std::string& source, const toml::table& t, const char* key)
{
    const toml::node* n = t.get(key);
    if (!n || !n->is_integer()) {
        fail(source, n ? n : &t, std::string("expected integer field '") + key + "'");
    }
    return static_cast<long>(n->as_integer()->get());
}

const toml::array* optional_tables(const std::string& source, const toml::table& doc, const char* key)
{
    const toml::node* n = doc.get(key);
    if (!n) {
        return nullptr;
    }
    if (!n->is_array_of_tables()) {
        fail(source, n, std::string("'") + key + "' must be an array of tables ([[" + key + "]])");
    }
    return n->as_array();
}

std::string quoted(const std::string& s)
{
    std::ostringstream out;
    out << toml::value<std::string>(s);
    return out.str();
}

} // namespace

ConformalAlgebraDef parse_algebra_toml(std::string_view text, const std::string& source)
{
    toml::table doc;
    try {
        doc = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw DefinitionError(source + ":" + std::to_string(e.source().begin.line) + ": "
                              + std::string(e.description()));
    }

    const toml::table* head = doc.get_as<toml::table>("algebra");
    if (!head) {
        fail(source, &doc, "missing [algebra] table");
    }
    ConformalAlgebraDef def;
    def.name = need_string(source, *head, "name");
    const toml::array* basis = head->get_as<toml::array>("basis");
    if (!basis) {
        fail(source, head, "[algebra] needs a basis array");
    }
    std::map<std::string, std::size_t> index;
    for (const auto& b : *basis) {
        if (!b.is_string()) {
            fail(source, &b, "basis symbols must be strings");
        }
        std::string sym = b.as_string()->get();
        index.emplace(sym, def.basis.size());
        def.basis.push_back(sym);
    }
    auto lookup = [&](const toml::table& t, const char* key) {
        std::string sym = need_string(source, t, key);
        auto it = index.find(sym);
        if (it == index.end()) {
            fail(source, t.get(key), "unknown basis symbol '" + sym + "'");
        }
        return it->second;
    };

    if (const toml::array* products = optional_tables(source, doc, "product")) {
        for (const auto& node : *products) {
            const toml::table& p = *node.as_table();
            std::size_t i = lookup(p, "left");
            std::size_t j = lookup(p, "right");
            long n = need_integer(source, p, "n");
            if (n < 0) {
                fail(source, p.get("n"), "product index n must be non-negative");
            }
            const toml::array* result = p.get_as<toml::array>("result");
            if (!result) {
                fail(source, &p, "[[product]] needs a result array");
            }
            Coords c;
            for (const auto& r : *result) {
                const toml::table* term = r.as_table();
                if (!term) {
                    fail(source, &r, "result entries must be { basis, coeff } tables");
                }
                std::size_t k = lookup(*term, "basis");
                DPoly coeff;
                if (const toml::node* q = term->get("coeff"); q && q->is_integer()) {
                    coeff = DPoly(Rational(static_cast<long>(q->as_integer()->get())));
                } else {
                    try {
                        coeff = DPoly::parse(need_string(source, *term, "coeff"));
                    } catch (const std::invalid_argument& e) {
                        fail(source, term->get("coeff"), std::string("bad coefficient: ") + e.what());
                    }
                }
                add_to(c, k, coeff);
            }
            auto key = std::make_tuple(i, j, static_cast<unsigned>(n));
            if (def.table.count(key)) {
                fail(source, &p, "duplicate product " + def.basis[i] + " ∘_" + std::to_string(n) + " " + def.basis[j]);
            }
            def.table.emplace(key, std::move(c));
        }
    }
    def.infer_locality();

    if (const toml::array* bounds = optional_tables(source, doc, "locality")) {
        for (const auto& node : *bounds) {
            const toml::table& l = *node.as_table();
            std::size_t i = lookup(l, "left");
            std::size_t j = lookup(l, "right");
            long b = need_integer(source, l, "bound");
            if (b < 0) {
                fail(source, l.get("bound"), "locality bound must be non-negative");
            }
            def.locality[{i, j}] = static_cast<unsigned>(b);
        }
    }
    for (const auto& [pair, bound] : def.locality) {
        for (unsigned n = 0; n < bound; ++n) {
            def.table.try_emplace(std::make_tuple(pair.first, pair.second, n));
        }
    }
    return def;
}

ConformalAlgebraDef load_algebra_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DefinitionError("cannot open algebra file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_algebra_toml(buf.str(), path);
}

std::string to_toml(const ConformalAlgebraDef& def)
{
    std::ostringstream out;
    out << "[algebra]\nname = " << quoted(def.name) << "\nbasis = [";
    for (std::size_t i = 0; i < def.basis.size(); ++i) {
        out << (i ? ", " : "") << quoted(def.basis[i]);
    }
    out << "]\n";
    for (const auto& [key, c] : def.table) {
        auto [i, j, n] = key;
        out << "\n[[product]]\nleft = " << quoted(def.basis.at(i)) << "\nright = " << quoted(def.basis.at(j))
            << "\nn = " << n << "\nresult = [";
        bool first = true;
        for (const auto& [k, p] : c) {
            out << (first ? "" : ", ") << "{ basis = " << quoted(def.basis.at(k)) << ", coeff = " << quoted(p.to_string())
                << " }";
            first = false;
        }
        out << "]\n";
    }
    ConformalAlgebraDef inferred = def;
    inferred.infer_locality();
    for (const auto& [pair, bound] : def.locality) {
        if (inferred.bound(pair.first, pair.second) != bound) {
            out << "\n[[locality]]\nleft = " << quoted(def.basis.at(pair.first))
                << "\nright = " << quoted(def.basis.at(pair.second)) << "\nbound = " << bound << "\n";
        }
    }
    return out.str();
}

} // namespace confalg
