#include "confalg/checker.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "confalg/constructions.hpp"
#include "confalg/translator.hpp"

namespace confalg {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::uint64_t tuple_count(std::size_t rank, unsigned arity)
{
    std::uint64_t total = 1;
    for (unsigned i = 0; i < arity; ++i) {
        if (rank != 0 && total > kNone / rank) {
            throw std::invalid_argument("too many generator tuples to enumerate");
        }
        total *= rank;
    }
    return total;
}

std::vector<std::size_t> tuple_at(std::uint64_t index, std::size_t rank, unsigned arity)
{
    std::vector<std::size_t> t(arity);
    for (unsigned i = arity; i-- > 0;) {
        t[i] = static_cast<std::size_t>(index % rank);
        index /= rank;
    }
    return t;
}

void check_arity(const Identity& f)
{
    if (f.arity() > kMaxCheckArity) {
        throw std::invalid_argument("identities of arity " + std::to_string(f.arity()) + " exceed the checker limit of "
                                    + std::to_string(kMaxCheckArity));
    }
}

unsigned worker_count(const CheckOptions& o, std::uint64_t total)
{
    unsigned n = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(total / 64, 1)));
}

/// Lowest index in [0, total) where `fails` is true, scanning in blocks across
/// workers. Every index below the result has been examined.
template <class MakeState, class Fails>
std::uint64_t first_failure(std::uint64_t total, unsigned workers, MakeState make_state, Fails fails)
{
    constexpr std::uint64_t block = 32;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{kNone};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        try {
            auto state = make_state();
            for (;;) {
                std::uint64_t start = next.fetch_add(block);
                if (start >= total || start > best.load()) {
                    return;
                }
                std::uint64_t end = std::min(total, start + block);
                for (std::uint64_t i = start; i < end && i < best.load(); ++i) {
                    if (fails(state, i)) {
                        std::uint64_t cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {
                        }
                        break;
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            error = std::current_exception();
            best.store(0);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return best.load();
}

/// Degree points of [-W, W]^k in lexicographic order; calls fn until it returns true.
template <class Fn>
bool for_each_point(unsigned arity, unsigned window, Fn&& fn)
{
    std::vector<long> p(arity, -static_cast<long>(window));
    for (;;) {
        if (fn(p)) {
            return true;
        }
        unsigned i = arity;
        while (i > 0 && p[i - 1] == static_cast<long>(window)) {
            p[i - 1] = -static_cast<long>(window);
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++p[i - 1];
    }
}

CoeffAssignment assignment_of(const ConformalAlgebra& alg, const Witness& w)
{
    CoeffAssignment a;
    for (std::size_t i = 0; i < w.generators.size(); ++i) {
        a.emplace_back(ConformalElement::basis(alg, w.generators[i]), w.degrees.at(i));
    }
    return a;
}

PseudoElement evaluate_fresh(const ConformalAlgebra& alg, const Identity& f, const std::vector<std::size_t>& g)
{
    std::vector<ConformalElement> args;
    for (auto i : g) {
        args.push_back(ConformalElement::basis(alg, i));
    }
    return evaluate(translate(f), args);
}

nlohmann::json verdict_json(const ConformalAlgebra& alg, const Verdict& v)
{
    nlohmann::json j{{"algebra", v.algebra},
                     {"identity", v.identity},
                     {"mode", mode_name(v.mode)},
                     {"verdict", v.pass ? "pass" : "fail"},
                     {"tuples", v.tuples}};
    if (v.mode == Mode::coeff) {
        j["window"] = v.window;
        j["holds_for_all_degrees"] = v.holds_for_all_degrees;
    }
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : v.witnesses) {
        nlohmann::json wj{{"assignment", w.assignment(alg)}, {"value", w.value_string()}};
        wj["generators"] = w.generators;
        if (v.mode == Mode::coeff) {
            wj["degrees"] = w.degrees;
        }
        j["witnesses"].push_back(std::move(wj));
    }
    return j;
}

} // namespace

const char* mode_name(Mode m) { return m == Mode::pseudo ? "pseudo" : "coeff"; }

std::string Witness::assignment(const ConformalAlgebra& alg) const
{
    std::string out = "(";
    for (std::size_t i = 0; i < generators.size(); ++i) {
        out += (i ? ", " : "") + alg.basis_label(generators[i]);
        if (!degrees.empty()) {
            out += "(" + std::to_string(degrees[i]) + ")";
        }
    }
    return out + ")";
}

std::string Witness::value_string() const
{
    if (pseudo_value) {
        return pseudo_value->to_string();
    }
    if (coeff_value) {
        return coeff_value->to_string();
    }
    return "";
}

std::string Verdict::to_string(const ConformalAlgebra& alg) const
{
    std::ostringstream out;
    out << algebra << " / " << identity << " [" << mode_name(mode);
    if (mode == Mode::coeff) {
        out << ", window " << window;
    }
    out << "]: " << (pass ? "pass" : "fail") << " (" << tuples << " generator tuples)";
    if (mode == Mode::coeff && pass && !holds_for_all_degrees) {
        out << "; fails outside the window";
    }
    for (const auto& w : witnesses) {
        out << "\n  witness " << w.assignment(alg) << " -> " << w.value_string();
    }
    return out.str();
}

std::string Verdict::to_json(const ConformalAlgebra& alg) const { return verdict_json(alg, *this).dump(2); }

Verdict check_pseudo(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                     const CheckOptions& options)
{
    check_arity(f);
    Verdict v;
    v.algebra = alg.name();
    v.identity = identity_name;
    v.mode = Mode::pseudo;
    if (f.is_zero()) {
        return v;
    }
    const std::size_t rank = alg.generator_count();
    const unsigned n = f.arity();
    const std::uint64_t total = tuple_count(rank, n);
    const PseudoIdentity pf = translate(f);

    std::uint64_t fail = first_failure(
        total, worker_count(options, total), [&] { return BasisEvaluator(alg); },
        [&](BasisEvaluator& ev, std::uint64_t i) { return !ev.evaluate(pf, tuple_at(i, rank, n)).is_zero(); });

    if (fail == kNone) {
        v.tuples = total;
        return v;
    }
    v.pass = false;
    v.tuples = fail + 1;
    Witness w;
    w.generators = tuple_at(fail, rank, n);
    w.pseudo_value = BasisEvaluator(alg).evaluate(pf, w.generators);
    v.witnesses.push_back(std::move(w));
    return v;
}

Verdict check_coeff(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                    const CheckOptions& options)
{
    check_arity(f);
    Verdict v;
    v.algebra = alg.name();
    v.identity = identity_name;
    v.mode = Mode::coeff;
    v.window = options.window;
    if (f.is_zero()) {
        return v;
    }
    const std::size_t rank = alg.generator_count();
    const unsigned n = f.arity();
    const std::uint64_t total = tuple_count(rank, n);
    std::atomic<bool> nonzero_somewhere{false};

    auto window_point = [&](const SymbolicCoeff& s) {
        std::optional<std::vector<long>> found;
        for_each_point(n, options.window, [&](const std::vector<long>& p) {
            if (!s.vanishes_at(p)) {
                found = p;
                return true;
            }
            return false;
        });
        return found;
    };

    std::uint64_t fail = first_failure(
        total, worker_count(options, total), [&] { return SymbolicEvaluator(alg); },
        [&](SymbolicEvaluator& ev, std::uint64_t i) {
            SymbolicCoeff s = ev.evaluate(f, tuple_at(i, rank, n));
            if (s.is_zero()) {
                return false;
            }
            nonzero_somewhere = true;
            return window_point(s).has_value();
        });

    v.holds_for_all_degrees = !nonzero_somewhere.load();
    if (fail == kNone) {
        v.tuples = total;
        return v;
    }
    v.pass = false;
    v.tuples = fail + 1;
    Witness w;
    w.generators = tuple_at(fail, rank, n);
    SymbolicCoeff s = SymbolicEvaluator(alg).evaluate(f, w.generators);
    w.degrees = *window_point(s);
    w.coeff_value = s.at(w.degrees);
    v.witnesses.push_back(std::move(w));
    return v;
}

bool verify_witness(const ConformalAlgebra& alg, const Identity& f, const Verdict& v)
{
    for (const auto& w : v.witnesses) {
        if (v.mode == Mode::pseudo) {
            PseudoElement fresh = evaluate_fresh(alg, f, w.generators);
            if (fresh.is_zero() || !w.pseudo_value || !(fresh == *w.pseudo_value)) {
                return false;
            }
        } else {
            CoeffElement fresh = evaluate_identity_coeff(f, assignment_of(alg, w));
            if (fresh.is_zero() || !w.coeff_value || !(fresh == *w.coeff_value)) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

bool CrossCheck::agree() const { return pseudo.pass == coeff.holds_for_all_degrees && (pseudo.pass || !coeff.pass); }

int CrossCheck::exit_code() const
{
    if (!agree()) {
        return 2;
    }
    return pseudo.pass ? 0 : 1;
}

std::string CrossCheck::to_string(const ConformalAlgebra& alg) const
{
    std::ostringstream out;
    out << pseudo.to_string(alg) << "\n" << coeff.to_string(alg) << "\n";
    if (!escalated_windows.empty()) {
        out << "window escalated to " << escalated_windows.back() << "\n";
    }
    out << (agree() ? "agree" : "DISAGREE") << ": " << (agree() ? (pseudo.pass ? "pass" : "fail") : "bug") << "\n";
    return out.str();
}

std::string CrossCheck::to_json(const ConformalAlgebra& alg) const
{
    nlohmann::json j{{"pseudo", verdict_json(alg, pseudo)},
                     {"coeff", verdict_json(alg, coeff)},
                     {"escalated_windows", escalated_windows},
                     {"agree", agree()},
                     {"exit_code", exit_code()}};
    return j.dump(2);
}

CrossCheck cross_check(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                       const CheckOptions& options, unsigned max_window)
{
    CrossCheck r{check_pseudo(alg, f, identity_name, options), check_coeff(alg, f, identity_name, options), {}};
    CheckOptions o = options;
    while (!r.pseudo.pass && r.coeff.pass && o.window < max_window) {
        ++o.window;
        r.escalated_windows.push_back(o.window);
        r.coeff = check_coeff(alg, f, identity_name, o);
    }
    return r;
}

// ---------------------------------------------------------------------------

const std::vector<Variety>& builtin_varieties()
{
    static const std::vector<Variety> v{
        {"associative", {"associative"}},
        {"commutative", {"commutative"}},
        {"anticommutative", {"anticommutative"}},
        {"Lie", {"anticommutative", "jacobi"}},
        {"Jordan", {"commutative", "jordan"}},
        {"left-alternative", {"left-alternative"}},
        {"right-alternative", {"right-alternative"}},
        {"alternative", {"left-alternative", "right-alternative"}},
        {"Mal'cev", {"anticommutative", "malcev"}},
    };
    return v;
}

const VarietyReport::Row& VarietyReport::row(const std::string& variety) const
{
    for (const auto& r : rows) {
        if (r.variety == variety) {
            return r;
        }
    }
    throw std::invalid_argument("no variety '" + variety + "' in the report");
}

std::string VarietyReport::to_string() const
{
    std::ostringstream out;
    out << algebra->name() << ":\n";
    for (const auto& r : rows) {
        out << "  " << r.variety << ": " << (r.pass ? "pass" : "fail");
        if (!r.failed.empty()) {
            out << " (fails";
            for (const auto& f : r.failed) {
                out << " " << f;
            }
            out << ")";
        }
        out << "\n";
    }
    for (const auto& v : verdicts) {
        for (const auto& w : v.witnesses) {
            out << "  witness for " << v.identity << ": " << w.assignment(*algebra) << " -> " << w.value_string()
                << "\n";
        }
    }
    for (const auto& d : derived) {
        out << d.to_string();
    }
    return out.str();
}

std::string VarietyReport::to_json() const
{
    nlohmann::json j;
    j["algebra"] = algebra->name();
    j["varieties"] = nlohmann::json::object();
    for (const auto& r : rows) {
        j["varieties"][r.variety] = {{"verdict", r.pass ? "pass" : "fail"}, {"failed", r.failed}};
    }
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts) {
        j["verdicts"].push_back(verdict_json(*algebra, v));
    }
    j["derived"] = nlohmann::json::array();
    for (const auto& d : derived) {
        j["derived"].push_back(nlohmann::json::parse(d.to_json()));
    }
    return j.dump(2);
}

VarietyReport variety_report(std::shared_ptr<const ConformalAlgebra> alg, bool with_plus_minus,
                             const CheckOptions& options)
{
    VarietyReport report;
    report.algebra = alg;
    std::map<std::string, bool> passed;
    for (const auto& variety : builtin_varieties()) {
        VarietyReport::Row row{variety.name, true, {}};
        for (const auto& id : variety.identities) {
            if (!passed.count(id)) {
                Verdict v = check_pseudo(*alg, builtin_identity(id), id, options);
                passed[id] = v.pass;
                report.verdicts.push_back(std::move(v));
            }
            if (!passed[id]) {
                row.pass = false;
                row.failed.push_back(id);
            }
        }
        report.rows.push_back(std::move(row));
    }
    if (with_plus_minus) {
        for (Sign s : {Sign::plus, Sign::minus}) {
            report.derived.push_back(variety_report(plus_minus_algebra(alg, s), false, options));
        }
    }
    return report;
}

} // namespace confalg
