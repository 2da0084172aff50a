#include "confalg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "confalg/algebra_io.hpp"
#include "confalg/checker.hpp"
#include "confalg/constructions.hpp"
#include "confalg/identities.hpp"
#include "confalg/translator.hpp"

namespace confalg {

namespace {

enum class Format { text, latex, json };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string algebra;
    std::string identity;
    std::string mode = "pseudo";
    std::string format;
    std::string coords = "auto";
    unsigned window = 4;
    unsigned cutoff = 0;
    unsigned threads = 0;
    bool no_derived = false;
};

Format resolve_format(const std::string& flag)
{
    std::string f = flag;
    if (f.empty()) {
        const char* env = std::getenv(kFormatEnv);
        f = env ? env : "text";
    }
    if (f == "text") {
        return Format::text;
    }
    if (f == "latex") {
        return Format::latex;
    }
    if (f == "json") {
        return Format::json;
    }
    throw InputError("unknown output format '" + f + "' (expected text, latex or json)");
}

bool is_builtin_identity(const std::string& s)
{
    const auto& names = builtin_identity_names();
    return std::find(names.begin(), names.end(), s) != names.end();
}

Identity resolve_identity(const std::string& s)
{
    if (is_builtin_identity(s)) {
        return builtin_identity(s);
    }
    try {
        return parse_identity(s);
    } catch (const ParseError& e) {
        std::string caret(e.position(), ' ');
        throw InputError(std::string("cannot parse identity at column ") + std::to_string(e.position() + 1) + ": "
                         + e.what() + "\n  " + s + "\n  " + caret + "^");
    } catch (const MultilinearityError& e) {
        throw InputError(std::string("identity is not multilinear: ") + e.what());
    }
}

std::shared_ptr<const ConformalAlgebra> resolve_algebra(const std::string& s)
{
    if (s.empty()) {
        throw InputError("--algebra is required");
    }
    namespace fs = std::filesystem;
    if (fs::exists(s) || fs::path(s).extension() == ".toml") {
        try {
            return std::make_shared<FiniteConformalAlgebra>(load_algebra_file(s));
        } catch (const DefinitionError& e) {
            throw InputError(e.what());
        }
    }
    try {
        return builtin_algebra(s);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Coordinates resolve_coords(const std::string& s, unsigned arity)
{
    if (s == "auto") {
        return default_coordinates(arity);
    }
    if (s == "direct") {
        return Coordinates::direct;
    }
    if (s == "left-normed") {
        return Coordinates::left_normed;
    }
    throw InputError("unknown coordinates '" + s + "'");
}

// ---------------------------------------------------------------------------

int cmd_translate(const Config& c, std::ostream& out)
{
    const Format fmt = resolve_format(c.format);
    const Identity f = resolve_identity(c.identity);
    const PseudoIdentity pf = translate(f);
    if (c.cutoff > 0) {
        EmittedFamily fam = emit_conformal_form(f, c.cutoff, resolve_coords(c.coords, f.arity()));
        switch (fmt) {
        case Format::text: out << fam.to_string(); break;
        case Format::latex: out << fam.to_latex(); break;
        case Format::json: out << fam.to_json() << "\n"; break;
        }
        return 0;
    }
    switch (fmt) {
    case Format::text: out << "f* = " << pf.to_string() << "\n"; break;
    case Format::latex: out << "\\[ " << pf.to_latex() << " = 0 \\]\n"; break;
    case Format::json:
        out << nlohmann::json{{"identity", f.to_string()}, {"arity", f.arity()}, {"pseudo", pf.to_string()},
                              {"latex", pf.to_latex()}}
                   .dump(2)
            << "\n";
        break;
    }
    return 0;
}

void verdict_latex(const ConformalAlgebra& alg, const Verdict& v, std::ostream& out)
{
    out << "% " << v.algebra << " / " << v.identity << " [" << mode_name(v.mode) << "]\n";
    out << "\\text{" << v.identity << " " << mode_name(v.mode) << ": " << (v.pass ? "pass" : "fail") << "}";
    for (const auto& w : v.witnesses) {
        out << " \\quad " << w.assignment(alg) << " \\mapsto ";
        out << (w.pseudo_value ? w.pseudo_value->to_latex() : w.coeff_value->to_latex());
    }
    out << "\n";
}

int cmd_check(const Config& c, std::ostream& out)
{
    const Format fmt = resolve_format(c.format);
    auto alg = resolve_algebra(c.algebra);
    const Identity f = resolve_identity(c.identity);
    const std::string name = c.identity;
    const CheckOptions options{c.window, c.threads};

    if (c.mode == "both") {
        CrossCheck r = cross_check(*alg, f, name, options);
        switch (fmt) {
        case Format::text: out << r.to_string(*alg); break;
        case Format::json: out << r.to_json(*alg) << "\n"; break;
        case Format::latex:
            verdict_latex(*alg, r.pseudo, out);
            verdict_latex(*alg, r.coeff, out);
            break;
        }
        return r.exit_code();
    }
    Verdict v = c.mode == "pseudo" ? check_pseudo(*alg, f, name, options) : check_coeff(*alg, f, name, options);
    switch (fmt) {
    case Format::text: out << v.to_string(*alg) << "\n"; break;
    case Format::json: out << v.to_json(*alg) << "\n"; break;
    case Format::latex: verdict_latex(*alg, v, out); break;
    }
    return v.pass ? 0 : 1;
}

void report_latex(const VarietyReport& r, std::ostream& out)
{
    out << "% " << r.algebra->name() << "\n\\begin{tabular}{ll}\n";
    for (const auto& row : r.rows) {
        out << row.variety << " & " << (row.pass ? "pass" : "fail") << " \\\\\n";
    }
    out << "\\end{tabular}\n";
    for (const auto& d : r.derived) {
        report_latex(d, out);
    }
}

int cmd_variety(const Config& c, std::ostream& out)
{
    const Format fmt = resolve_format(c.format);
    VarietyReport r = variety_report(resolve_algebra(c.algebra), !c.no_derived, {c.window, c.threads});
    switch (fmt) {
    case Format::text: out << r.to_string(); break;
    case Format::json: out << r.to_json() << "\n"; break;
    case Format::latex: report_latex(r, out); break;
    }
    return 0;
}

int cmd_artin(const Config& c, std::ostream& out)
{
    const Format fmt = resolve_format(c.format);
    ArtinReport r = artin_counterexample();
    const bool ok = r.nonzero() && r.matches();
    switch (fmt) {
    case Format::text:
        out << "algebra: " << r.algebra->name() << "\n";
        out << "(x*y)*x - x*(y*x) = " << r.result.to_string() << "\n";
        out << "expected           = " << r.expected.to_string() << "\n";
        out << "{b,c,a} = " << r.bca.to_string() << "\n";
        out << "{a,c,b} = " << r.acb.to_string() << "\n";
        out << (ok ? "PASS" : "FAIL") << "\n";
        break;
    case Format::latex:
        out << "\\[ (x*y)*x - x*(y*x) = " << r.result.to_latex() << " \\]\n";
        out << "% " << (ok ? "PASS" : "FAIL") << "\n";
        break;
    case Format::json:
        out << nlohmann::json{{"algebra", r.algebra->name()},
                              {"result", r.result.to_string()},
                              {"expected", r.expected.to_string()},
                              {"bca", r.bca.to_string()},
                              {"acb", r.acb.to_string()},
                              {"nonzero", r.nonzero()},
                              {"matches", r.matches()}}
                   .dump(2)
            << "\n";
        break;
    }
    return ok ? 0 : 1;
}

int cmd_export(const Config& c, std::ostream& out)
{
    auto alg = resolve_algebra(c.algebra);
    if (!alg->rank()) {
        throw InputError(alg->name() + " has no finite basis and cannot be exported");
    }
    try {
        out << to_toml(to_definition(*alg, *alg->rank()));
    } catch (const DefinitionError& e) {
        throw InputError(e.what());
    }
    return 0;
}

int cmd_list(const Config& c, std::ostream& out)
{
    const Format fmt = resolve_format(c.format);
    std::vector<std::string> varieties;
    for (const auto& v : builtin_varieties()) {
        varieties.push_back(v.name);
    }
    if (fmt == Format::json) {
        out << nlohmann::json{{"algebras", builtin_algebra_names()},
                              {"identities", builtin_identity_names()},
                              {"varieties", varieties}}
                   .dump(2)
            << "\n";
        return 0;
    }
    auto line = [&](const char* title, const std::vector<std::string>& names) {
        out << title << ":";
        for (const auto& n : names) {
            out << " " << n;
        }
        out << "\n";
    };
    line("algebras", builtin_algebra_names());
    line("identities", builtin_identity_names());
    line("varieties", varieties);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Conformal algebra identities: translation to pseudoalgebras and checking", "confalg"};
    app.require_subcommand(1, 1);
    Config c;

    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "text, latex or json (default from CONFALG_FORMAT)")
            ->check(CLI::IsMember({"text", "latex", "json"}));
    };
    auto algebra_opt = [&](CLI::App* sub) {
        sub->add_option("-a,--algebra", c.algebra, "built-in name or TOML file")->required();
    };
    auto window_opt = [&](CLI::App* sub) {
        sub->add_option("-w,--window", c.window, "coefficient degrees in [-W, W]")->check(CLI::Range(0u, kMaxWindow));
        sub->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    };

    auto* translate_cmd = app.add_subcommand("translate", "translate an identity to the pseudo level");
    translate_cmd->add_option("identity", c.identity, "built-in name or expression in x1, x2, ...")->required();
    translate_cmd->add_option("-n,--cutoff", c.cutoff, "emit conformal-form instances with indices < N")
        ->check(CLI::Range(1u, kMaxCutoff));
    translate_cmd->add_option("--coords", c.coords, "auto, direct or left-normed")
        ->check(CLI::IsMember({"auto", "direct", "left-normed"}));
    format_opt(translate_cmd);

    auto* check_cmd = app.add_subcommand("check", "check an identity on an algebra");
    algebra_opt(check_cmd);
    check_cmd->add_option("-i,--identity", c.identity, "built-in name or expression")->required();
    check_cmd->add_option("-m,--mode", c.mode, "pseudo, coeff or both")
        ->check(CLI::IsMember({"pseudo", "coeff", "both"}));
    window_opt(check_cmd);
    format_opt(check_cmd);

    auto* variety_cmd = app.add_subcommand("variety", "variety membership report");
    algebra_opt(variety_cmd);
    variety_cmd->add_flag("--no-derived", c.no_derived, "skip the plus and minus structures");
    window_opt(variety_cmd);
    format_opt(variety_cmd);

    auto* artin_cmd = app.add_subcommand("artin", "the two-generator counterexample in P(O[t]<=1)");
    format_opt(artin_cmd);

    auto* export_cmd = app.add_subcommand("export", "print an algebra as TOML");
    algebra_opt(export_cmd);

    auto* list_cmd = app.add_subcommand("list", "built-in algebras, identities and varieties");
    format_opt(list_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (translate_cmd->parsed()) {
            return cmd_translate(c, out);
        }
        if (check_cmd->parsed()) {
            return cmd_check(c, out);
        }
        if (variety_cmd->parsed()) {
            return cmd_variety(c, out);
        }
        if (artin_cmd->parsed()) {
            return cmd_artin(c, out);
        }
        if (export_cmd->parsed()) {
            return cmd_export(c, out);
        }
        return cmd_list(c, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const DefinitionError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitInputError;
}

} // namespace confalg
