#pragma once

// Identity verification at the pseudo level (f* on tuples of basis generators)
// and at the coefficient level (f on e_i(n), n in a window), and the reports
// built from them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confalg/coeff.hpp"
#include "confalg/conformal.hpp"
#include "confalg/identities.hpp"
#include "confalg/pseudo.hpp"

namespace confalg {

enum class Mode { pseudo, coeff };

const char* mode_name(Mode m);

struct Witness {
    std::vector<std::size_t> generators;
    std::vector<long> degrees; ///< coefficient mode only
    std::optional<PseudoElement> pseudo_value;
    std::optional<CoeffElement> coeff_value;

    /// "(e1, e2, e4)" or "(L(1), L(0))".
    std::string assignment(const ConformalAlgebra& alg) const;
    std::string value_string() const;
};

struct Verdict {
    std::string algebra;
    std::string identity;
    Mode mode = Mode::pseudo;
    bool pass = true;
    /// At most one: the first failing tuple in lexicographic order (generators, then degrees).
    std::vector<Witness> witnesses;
    unsigned window = 0;          ///< coefficient mode
    std::uint64_t tuples = 0;     ///< generator tuples examined
    /// Coefficient mode: no generator tuple gave a nonzero polynomial in the
    /// degrees, i.e. the identity holds for all integer degrees.
    bool holds_for_all_degrees = true;

    std::string to_string(const ConformalAlgebra& alg) const;
    std::string to_json(const ConformalAlgebra& alg) const;
};

struct CheckOptions {
    unsigned window = 4;
    /// 0 means one worker per hardware thread.
    unsigned threads = 0;
};

/// Largest arity accepted by the checkers.
inline constexpr unsigned kMaxCheckArity = 6;

/// Evaluates f* on all tuples of basis generators. Throws std::invalid_argument for arity > 6.
Verdict check_pseudo(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                     const CheckOptions& options = {});

/// Evaluates f on all e_{g_1}(n_1), ..., e_{g_k}(n_k) with n_i ∈ [-W, W].
/// Each generator tuple is first evaluated at symbolic degrees; only nonzero
/// polynomials are scanned over the window.
Verdict check_coeff(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                    const CheckOptions& options = {});

/// Recomputes the witness from scratch (no caches) and compares the value.
bool verify_witness(const ConformalAlgebra& alg, const Identity& f, const Verdict& v);

struct CrossCheck {
    Verdict pseudo;
    Verdict coeff;
    /// Windows tried after the requested one, when the pseudo level failed but the window did not.
    std::vector<unsigned> escalated_windows;

    /// Pseudo pass ⇔ the coefficient identity holds for all degrees.
    bool agree() const;
    /// 0 both pass, 1 both fail, 2 disagreement.
    int exit_code() const;
    std::string to_string(const ConformalAlgebra& alg) const;
    std::string to_json(const ConformalAlgebra& alg) const;
};

/// Runs both engines. If the pseudo level fails while the window passes, the
/// window grows up to `max_window` looking for a coefficient witness.
CrossCheck cross_check(const ConformalAlgebra& alg, const Identity& f, const std::string& identity_name,
                       const CheckOptions& options = {}, unsigned max_window = 16);

struct Variety {
    std::string name;
    /// Built-in identity names; all must pass.
    std::vector<std::string> identities;
};

/// associative, commutative, anticommutative, Lie, Jordan, left-alternative,
/// right-alternative, alternative, Mal'cev.
const std::vector<Variety>& builtin_varieties();

struct VarietyReport {
    struct Row {
        std::string variety;
        bool pass;
        /// Identity names that failed, in the variety's order.
        std::vector<std::string> failed;
    };
    std::shared_ptr<const ConformalAlgebra> algebra;
    std::vector<Row> rows;
    /// Verdict per identity name.
    std::vector<Verdict> verdicts;
    /// Reports for the plus and minus structures, when requested.
    std::vector<VarietyReport> derived;

    const Row& row(const std::string& variety) const;
    std::string to_string() const;
    std::string to_json() const;
};

VarietyReport variety_report(std::shared_ptr<const ConformalAlgebra> alg, bool with_plus_minus = true,
                             const CheckOptions& options = {});

} // namespace confalg
