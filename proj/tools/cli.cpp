#include "cli.hpp"

#include "causal/axioms.hpp"
#include "causal/decide.hpp"
#include "causal/error.hpp"
#include "causal/formula_text.hpp"
#include "causal/model_text.hpp"
#include "causal/proof.hpp"
#include "causal/semantics.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace causal::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

/// Bad flags, unreadable files: anything that maps to exit code 2 without
/// being a parse error in one of the text formats.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model_path;
    std::string sig_path;
    std::string formula;
    std::string formulas_path;
    std::string proof_path;
    std::string src;
    std::string dst;
    std::vector<std::string> set;
    std::vector<std::string> ctx;
    std::string cls = "all";
    std::vector<std::string> schemes;
    bool exhaustive = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t max_models = 0;
    std::size_t max_chain = 3;
    std::string order;
    std::string out_path;
    std::string format = "human";
    bool crosscheck = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        parts.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) {
            break;
        }
        start = at + 1;
    }
    return parts;
}

/// `X=1,Y=0` possibly spread over several flag occurrences.
std::vector<std::pair<std::string, std::string>> parse_pairs(const std::vector<std::string>& flags)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& flag : flags) {
        for (const auto& item : split(flag, ',')) {
            if (item.empty()) {
                continue;
            }
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw UsageError("expected NAME=VALUE, got '" + item + "'");
            }
            out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
        }
    }
    return out;
}

InterventionList parse_set(const std::vector<std::string>& flags, const Signature& sig)
{
    InterventionList iv;
    for (const auto& [name, value] : parse_pairs(flags)) {
        const auto var = sig.find_endogenous(name);
        if (!var) {
            throw UsageError("--set: unknown endogenous variable " + name);
        }
        const auto v = sig.value_index({VarKind::endogenous, *var}, value);
        if (!v) {
            throw UsageError("--set: " + value + " is not in the domain of " + name);
        }
        iv.push_back({*var, *v});
    }
    if (auto problem = sig.check_interventions(iv); !problem.empty()) {
        throw UsageError("--set: " + problem);
    }
    return iv;
}

std::optional<Context> parse_ctx(const std::vector<std::string>& flags, const Signature& sig)
{
    const auto pairs = parse_pairs(flags);
    if (pairs.empty()) {
        return std::nullopt;
    }
    Context ctx{std::vector<ValueIndex>(sig.exogenous_count(), kUnassigned)};
    for (const auto& [name, value] : pairs) {
        const auto ref = sig.find(name);
        if (!ref || ref->kind != VarKind::exogenous) {
            throw UsageError("--ctx: unknown exogenous variable " + name);
        }
        const auto v = sig.value_index(*ref, value);
        if (!v) {
            throw UsageError("--ctx: " + value + " is not in the domain of " + name);
        }
        ctx.values[ref->index] = *v;
    }
    if (!sig.is_valid_context(ctx)) {
        throw UsageError("--ctx must give a value to every exogenous variable");
    }
    return ctx;
}

std::vector<VarIndex> parse_order(const std::string& text, const Signature& sig)
{
    std::vector<VarIndex> order;
    for (const auto& name : split(text, '<')) {
        const auto var = sig.find_endogenous(name);
        if (!var) {
            throw UsageError("--order: unknown endogenous variable '" + name + "'");
        }
        order.push_back(*var);
    }
    return order;
}

VarIndex endogenous(const Signature& sig, const std::string& name)
{
    const auto var = sig.find_endogenous(name);
    if (!var) {
        throw UsageError("unknown endogenous variable " + name);
    }
    return *var;
}

ModelClass parse_class(const std::string& text)
{
    auto cls = parse_model_class(text);
    if (!cls) {
        throw UsageError("--class must be rec, uniq or all");
    }
    return *cls;
}

std::size_t model_budget(const Options& o)
{
    if (o.max_models > 0) {
        return o.max_models;
    }
    if (const char* env = std::getenv("CAUSAL_MAX_MODELS")) {
        try {
            const auto n = std::stoull(env);
            if (n > 0) {
                return static_cast<std::size_t>(n);
            }
        }
        catch (const std::exception&) {
        }
        throw UsageError("CAUSAL_MAX_MODELS must be a positive integer");
    }
    return kDefaultModelBudget;
}

/// Value for a structured `key=value` field; quoted when it would not
/// survive whitespace splitting.
std::string field(std::string_view v)
{
    const bool plain = !v.empty() && v.find_first_of(" \t\n\"\\=") == std::string_view::npos;
    if (plain) {
        return std::string(v);
    }
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        }
        else if (c == '\n') {
            out += "\\n";
        }
        else {
            out += c;
        }
    }
    return out + "\"";
}

class Record {
public:
    Record& add(std::string key, std::string_view value)
    {
        _fields.emplace_back(std::move(key), field(value));
        return *this;
    }
    Record& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }
    Record& add(std::string key, bool value) { return add(std::move(key), value ? "true" : "false"); }
    Record& add(std::string key, const char* value) { return add(std::move(key), std::string_view(value)); }

    void print(std::ostream& out) const
    {
        for (std::size_t i = 0; i < _fields.size(); ++i) {
            out << (i ? " " : "") << _fields[i].first << '=' << _fields[i].second;
        }
        out << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> _fields;
};

std::string join_names(const std::vector<VarIndex>& vars, const Signature& sig, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += sig.endogenous_name(vars[i]);
    }
    return out;
}

std::vector<std::string> formula_texts(const Options& o)
{
    std::vector<std::string> texts;
    if (!o.formula.empty()) {
        texts.push_back(o.formula);
    }
    if (!o.formulas_path.empty()) {
        std::istringstream in(read_file(o.formulas_path));
        for (std::string line; std::getline(in, line);) {
            auto t = trim(line);
            if (!t.empty() && t.front() != '#') {
                texts.push_back(std::move(t));
            }
        }
    }
    if (texts.empty()) {
        throw UsageError("no formula given (pass one inline or use --formulas FILE)");
    }
    return texts;
}

Signature load_signature(const Options& o)
{
    const auto& path = o.sig_path.empty() ? o.model_path : o.sig_path;
    if (path.empty()) {
        throw UsageError("--sig FILE is required");
    }
    return parse_signature(read_file(path));
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : _o(o), _out(out), _structured(o.format == "structured") {}

    int classify_cmd()
    {
        const auto model = parse_model(read_file(_o.model_path));
        const auto& sig = model.signature();
        const auto c = classify(model);
        if (_structured) {
            Record r;
            r.add("class", to_string(c.cls));
            if (c.cls == ModelClass::recursive) {
                r.add("order", join_names(c.order, sig, ","));
            }
            else {
                r.add("cycle", join_names(c.cycle, sig, ","));
            }
            if (c.counterexample) {
                r.add("intervention", print_intervention(c.counterexample->intervention, sig))
                    .add("context", print_context(c.counterexample->context, sig))
                    .add("solutions", c.counterexample->solution_count);
            }
            r.print(_out);
            return kOk;
        }
        _out << to_string(c.cls) << '\n';
        if (c.cls == ModelClass::recursive) {
            _out << "order: " << join_names(c.order, sig, " < ") << '\n';
        }
        else {
            _out << "cycle: " << join_names(c.cycle, sig, " -> ") << '\n';
        }
        if (c.counterexample) {
            _out << "witness: [" << print_intervention(c.counterexample->intervention, sig) << "] in context ("
                 << print_context(c.counterexample->context, sig) << ") has " << c.counterexample->solution_count
                 << " solutions\n";
        }
        return kOk;
    }

    int solve_cmd()
    {
        const auto model = parse_model(read_file(_o.model_path));
        const auto& sig = model.signature();
        const auto iv = parse_set(_o.set, sig);
        std::vector<Context> contexts;
        if (auto ctx = parse_ctx(_o.ctx, sig)) {
            contexts.push_back(*ctx);
        }
        else {
            contexts = sig.contexts();
        }
        std::size_t total = 0;
        for (const auto& ctx : contexts) {
            const auto sub = submodel(model, iv, ctx);
            const auto sols = solutions(sub);
            total += sols.size();
            const bool show_ctx = sig.exogenous_count() > 0;
            if (_structured) {
                for (const auto& s : sols) {
                    Record r;
                    if (show_ctx) {
                        r.add("context", print_context(ctx, sig));
                    }
                    r.add("solution", format_solution(sub, s)).print(_out);
                }
                continue;
            }
            if (show_ctx) {
                _out << "context (" << print_context(ctx, sig) << "): " << plural(sols.size(), "solution") << '\n';
            }
            for (const auto& s : sols) {
                _out << (show_ctx ? "  " : "") << format_solution(sub, s) << '\n';
            }
        }
        if (_structured) {
            Record().add("solutions", total).print(_out);
        }
        else {
            _out << plural(total, "solution") << '\n';
        }
        return total > 0 ? kOk : kNegative;
    }

    int check_cmd()
    {
        const auto model = parse_model(read_file(_o.model_path));
        const auto& sig = model.signature();
        Evaluator eval(model);
        bool all = true;
        for (const auto& text : formula_texts(_o)) {
            const auto f = parse_formula(text, sig);
            const auto report = eval.report(f);
            all = all && report.verdict;
            const auto printed = print_formula(f, sig);
            if (_structured) {
                Record().add("formula", printed).add("holds", report.verdict).print(_out);
                continue;
            }
            _out << (report.verdict ? "holds: " : "fails: ") << printed << '\n';
            if (!report.verdict) {
                for (std::size_t i = 0; i < report.trace.size(); ++i) {
                    const auto& t = report.trace[i];
                    _out << "  leaf " << i + 1 << ": " << (t.verdict ? "true" : "false") << ", "
                         << plural(t.solution_count, "solution");
                    if (t.witness) {
                        _out << ", decided by " << solution_text(*t.witness, sig);
                    }
                    _out << '\n';
                }
            }
        }
        return all ? kOk : kNegative;
    }

    int affects_cmd()
    {
        const auto model = parse_model(read_file(_o.model_path));
        const auto& sig = model.signature();
        const auto y = endogenous(sig, _o.src);
        const auto z = endogenous(sig, _o.dst);
        const auto r = affects(model, y, z);
        if (_structured) {
            Record rec;
            rec.add("source", _o.src).add("target", _o.dst).add("affects", r.affects);
            if (r.witness) {
                const auto& w = *r.witness;
                rec.add("base", print_intervention(w.base, sig))
                    .add("value", sig.endogenous_value(y, w.src_value))
                    .add("context", print_context(w.context, sig))
                    .add("from", sig.endogenous_value(z, w.original))
                    .add("to", sig.endogenous_value(z, w.changed));
            }
            rec.print(_out);
        }
        else {
            _out << _o.src << (r.affects ? " affects " : " does not affect ") << _o.dst << '\n';
            if (r.witness) {
                const auto& w = *r.witness;
                _out << "  under [" << print_intervention(w.base, sig) << "] in context ("
                     << print_context(w.context, sig) << "), setting " << _o.src << "<-"
                     << sig.endogenous_value(y, w.src_value) << " moves " << _o.dst << " from "
                     << sig.endogenous_value(z, w.original) << " to " << sig.endogenous_value(z, w.changed) << '\n';
            }
        }
        return r.affects ? kOk : kNegative;
    }

    int sat_cmd(bool validity)
    {
        const auto sig = load_signature(_o);
        const auto cls = parse_class(_o.cls);
        const auto budget = model_budget(_o);
        const auto texts = formula_texts(_o);
        int code = kOk;
        std::string witnesses;
        for (const auto& text : texts) {
            const auto f = parse_formula(text, sig);
            const auto printed = print_formula(f, sig);
            std::string verdict;
            std::optional<CausalModel> model;
            std::size_t examined = 0;
            int status = kOk;
            if (validity) {
                auto r = valid(f, sig, cls, budget);
                verdict = to_string(r.verdict);
                model = std::move(r.countermodel);
                examined = r.models_examined;
                status = r.verdict == Validity::valid ? kOk : r.verdict == Validity::invalid ? kNegative : kBudget;
            }
            else {
                auto r = satisfiable(f, sig, cls, budget);
                verdict = to_string(r.verdict);
                model = std::move(r.witness);
                examined = r.models_examined;
                status = r.verdict == Verdict::sat ? kOk : r.verdict == Verdict::unsat ? kNegative : kBudget;
            }
            code = std::max(code, status);
            if (model) {
                if (!witnesses.empty()) {
                    witnesses += "\n";
                }
                witnesses += "# " + std::string(validity ? "countermodel to " : "witness for ") + printed + "\n";
                witnesses += print_model(*model);
            }
            if (_structured) {
                Record r;
                r.add("formula", printed).add("class", to_string(cls)).add("verdict", verdict).add("models", examined);
                if (model && !_o.out_path.empty()) {
                    r.add("model_file", _o.out_path);
                }
                r.print(_out);
                continue;
            }
            _out << verdict << ": " << printed << " (" << plural(examined, "model") << " examined)\n";
            if (model && _o.out_path.empty()) {
                _out << print_model(*model);
            }
        }
        if (!witnesses.empty() && !_o.out_path.empty()) {
            write_file(_o.out_path, witnesses);
            if (!_structured) {
                _out << (validity ? "countermodel" : "witness") << " written to " << _o.out_path << '\n';
            }
        }
        return code;
    }

    int axioms_cmd()
    {
        const auto model = parse_model(read_file(_o.model_path));
        const auto& sig = model.signature();
        EnumerationBounds bounds;
        bounds.max_chain = _o.max_chain;
        if (!_o.order.empty()) {
            bounds.order = parse_order(_o.order, sig);
        }
        std::vector<Scheme> schemes;
        if (_o.schemes.empty()) {
            for (auto s : all_schemes()) {
                if (s != Scheme::Ord || bounds.order) {
                    schemes.push_back(s);
                }
            }
        }
        else {
            for (const auto& list : _o.schemes) {
                for (const auto& name : split(list, ',')) {
                    auto s = parse_scheme(name);
                    if (!s) {
                        throw UsageError("unknown scheme " + name);
                    }
                    if (*s == Scheme::Ord && !bounds.order) {
                        throw UsageError("Ord needs --order");
                    }
                    schemes.push_back(*s);
                }
            }
        }
        const auto mode = _o.samples > 0 && !_o.exhaustive ? SoundnessMode::sampled(_o.samples, _o.seed)
                                                           : SoundnessMode::all();
        bool clean = true;
        for (auto s : schemes) {
            const auto report = check_soundness(model, s, mode, bounds);
            clean = clean && report.failures.empty();
            if (_structured) {
                Record r;
                r.add("scheme", to_string(s)).add("checked", report.checked).add("failures", report.failures.size());
                if (report.seed) {
                    r.add("seed", std::to_string(*report.seed));
                }
                if (!report.failures.empty()) {
                    r.add("first_failure", print_formula(report.failures.front().formula, sig));
                }
                r.print(_out);
                continue;
            }
            _out << to_string(s) << ": " << plural(report.checked, "instance") << ", "
                 << plural(report.failures.size(), "failure") << '\n';
            constexpr std::size_t kShown = 5;
            for (std::size_t i = 0; i < report.failures.size() && i < kShown; ++i) {
                _out << "  fails: " << print_formula(report.failures[i].formula, sig) << '\n';
            }
        }
        return clean ? kOk : kNegative;
    }

    int reduce_cmd()
    {
        const auto sig = load_signature(_o);
        const auto cls = parse_class(_o.cls);
        const auto f = parse_formula(_o.formula, sig);
        const auto red = reduce(f, sig, cls);
        const auto& rs = red.reduced.signature;
        const auto formula = print_formula(red.formula, rs);
        if (!_o.out_path.empty()) {
            write_file(_o.out_path, print_signature(rs));
        }
        std::vector<VarIndex> all(rs.endogenous_count());
        for (VarIndex i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        if (_structured) {
            Record r;
            r.add("class", to_string(cls))
                .add("endogenous", join_names(all, rs, ","))
                .add("contexts", rs.context_count())
                .add("dummy", red.reduced.dummy)
                .add("formula", formula);
            if (auto n = model_count(rs)) {
                r.add("models", *n);
            }
            r.print(_out);
            return kOk;
        }
        _out << print_signature(rs);
        _out << "formula: " << formula << '\n';
        for (const auto& [ctx, value] : red.reduced.atom_rewrite) {
            _out << "context (" << print_context(ctx, sig) << ") -> "
                 << rs.value_name({VarKind::exogenous, 0}, value) << '\n';
        }
        if (auto n = model_count(rs)) {
            _out << plural(*n, "model") << " to scan\n";
        }
        return kOk;
    }

    int prove_check_cmd()
    {
        const auto sig = load_signature(_o);
        const auto proof = parse_proof(read_file(_o.proof_path), sig);
        const auto verdict = check_proof(proof, sig);
        std::optional<CrosscheckReport> cross;
        if (verdict.accepted && _o.crosscheck) {
            cross = soundness_crosscheck(proof, sig, model_budget(_o));
        }
        if (_structured) {
            Record r;
            r.add("system", proof.system.name()).add("accepted", verdict.accepted);
            if (!verdict.accepted) {
                r.add("line", verdict.line).add("reason", to_string(verdict.reason)).add("detail", verdict.detail);
            }
            if (cross) {
                r.add("goal", to_string(cross->outcome.verdict));
            }
            r.print(_out);
        }
        else if (verdict.accepted) {
            _out << "accepted: " << proof.lines.size() << " lines in " << proof.system.name() << '\n';
            if (cross) {
                _out << "goal is " << to_string(cross->outcome.verdict) << " in the "
                     << to_string(proof.system.model_class()) << " class\n";
            }
        }
        else {
            _out << "rejected at line " << verdict.line << ": " << to_string(verdict.reason);
            if (!verdict.detail.empty()) {
                _out << " (" << verdict.detail << ")";
            }
            _out << '\n';
        }
        if (cross && cross->outcome.verdict == Validity::budget_exceeded) {
            return kBudget;
        }
        if (cross && !cross->agrees) {
            // An accepted proof of an invalid goal means an unsound scheme.
            throw std::logic_error("accepted proof has an invalid goal");
        }
        return verdict.accepted ? kOk : kNegative;
    }

private:
    static std::string plural(std::size_t n, const std::string& noun)
    {
        return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
    }

    static std::string solution_text(const Solution& s, const Signature& sig)
    {
        std::string out;
        for (VarIndex v = 0; v < s.values.size(); ++v) {
            if (s.values[v] == kUnassigned) {
                continue;
            }
            if (!out.empty()) {
                out += ' ';
            }
            out += sig.endogenous_name(v) + "=" + sig.endogenous_value(v, s.values[v]);
        }
        return out.empty() ? "the empty solution" : out;
    }

    const Options& _o;
    std::ostream& _out;
    bool _structured;
};

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact reasoning over finite structural-equation models", "causal"};
    app.require_subcommand(1);
    Options o;

    auto format_flag = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output mode")->check(CLI::IsMember({"human", "structured"}));
    };
    auto budget_flag = [&](CLI::App* sub) {
        sub->add_option("--max-models", o.max_models, "Model budget (default: $CAUSAL_MAX_MODELS or 10^7)")
            ->check(CLI::PositiveNumber);
    };
    auto formula_inputs = [&](CLI::App* sub) {
        sub->add_option("formula", o.formula, "Formula text");
        sub->add_option("--formulas", o.formulas_path, "File with one formula per line")->check(CLI::ExistingFile);
    };
    auto class_flag = [&](CLI::App* sub) {
        sub->add_option("--class", o.cls, "Model class")->check(CLI::IsMember({"rec", "uniq", "all"}));
    };

    auto* classify_sub = app.add_subcommand("classify", "Recursive, unique-solutions or general, with a witness");
    classify_sub->add_option("model", o.model_path)->required()->check(CLI::ExistingFile);
    format_flag(classify_sub);

    auto* solve_sub = app.add_subcommand("solve", "List the solutions of a submodel");
    solve_sub->add_option("model", o.model_path)->required()->check(CLI::ExistingFile);
    solve_sub->add_option("--set", o.set, "Intervention, e.g. X=1,Y=0");
    solve_sub->add_option("--ctx", o.ctx, "Context, e.g. U=1");
    format_flag(solve_sub);

    auto* check_sub = app.add_subcommand("check", "Evaluate formulas in a model");
    check_sub->add_option("model", o.model_path)->required()->check(CLI::ExistingFile);
    formula_inputs(check_sub);
    format_flag(check_sub);

    auto* affects_sub = app.add_subcommand("affects", "Does Y affect Z");
    affects_sub->add_option("model", o.model_path)->required()->check(CLI::ExistingFile);
    affects_sub->add_option("Y", o.src)->required();
    affects_sub->add_option("Z", o.dst)->required();
    format_flag(affects_sub);

    auto* sat_sub = app.add_subcommand("sat", "Satisfiability over a class");
    auto* valid_sub = app.add_subcommand("valid", "Validity over a class");
    for (auto* sub : {sat_sub, valid_sub}) {
        sub->add_option("--sig", o.sig_path, "Signature or model file")->required()->check(CLI::ExistingFile);
        formula_inputs(sub);
        class_flag(sub);
        budget_flag(sub);
        sub->add_option("--out", o.out_path, "Write witness or countermodel here");
        format_flag(sub);
    }

    auto* axioms_sub = app.add_subcommand("axioms", "Check axiom instances against a model");
    axioms_sub->add_option("model", o.model_path)->required()->check(CLI::ExistingFile);
    axioms_sub->add_option("--schemes", o.schemes, "Comma-separated scheme names (default: all)");
    auto* exhaustive = axioms_sub->add_flag("--exhaustive", o.exhaustive, "Check every instance (default)");
    axioms_sub->add_option("--samples", o.samples, "Check N sampled instances")->excludes(exhaustive);
    axioms_sub->add_option("--seed", o.seed, "Sampling seed");
    axioms_sub->add_option("--order", o.order, "Causal order for Ord, e.g. X<Y<Z");
    axioms_sub->add_option("--max-chain", o.max_chain, "Longest C6/D6 chain")->check(CLI::PositiveNumber);
    format_flag(axioms_sub);

    auto* reduce_sub = app.add_subcommand("reduce", "Show the reduced signature a formula is decided over");
    reduce_sub->add_option("formula", o.formula)->required();
    reduce_sub->add_option("--sig", o.sig_path, "Signature or model file")->required()->check(CLI::ExistingFile);
    class_flag(reduce_sub);
    reduce_sub->add_option("--out", o.out_path, "Write the reduced signature here");
    format_flag(reduce_sub);

    auto* prove_sub = app.add_subcommand("prove-check", "Check a proof file");
    prove_sub->add_option("proof", o.proof_path)->required()->check(CLI::ExistingFile);
    prove_sub->add_option("--sig", o.sig_path, "Signature or model file")->required()->check(CLI::ExistingFile);
    prove_sub->add_flag("--crosscheck", o.crosscheck, "Also decide the goal over the system's class");
    budget_flag(prove_sub);
    format_flag(prove_sub);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Runner run(o, out);
    try {
        if (*classify_sub) {
            return run.classify_cmd();
        }
        if (*solve_sub) {
            return run.solve_cmd();
        }
        if (*check_sub) {
            return run.check_cmd();
        }
        if (*affects_sub) {
            return run.affects_cmd();
        }
        if (*sat_sub) {
            return run.sat_cmd(false);
        }
        if (*valid_sub) {
            return run.sat_cmd(true);
        }
        if (*axioms_sub) {
            return run.axioms_cmd();
        }
        if (*reduce_sub) {
            return run.reduce_cmd();
        }
        if (*prove_sub) {
            return run.prove_check_cmd();
        }
    }
    catch (const BudgetExceeded& e) {
        err << "causal: " << e.what() << '\n';
        return kBudget;
    }
    catch (const TautologyCapExceeded& e) {
        err << "causal: " << e.what() << '\n';
        return kBudget;
    }
    catch (const ParseError& e) {
        err << "causal: parse error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const ValidationError& e) {
        err << "causal: " << e.what() << '\n';
        return kUsage;
    }
    catch (const UsageError& e) {
        err << "causal: " << e.what() << '\n';
        return kUsage;
    }
    catch (const ContractError& e) {
        err << "causal: " << e.what() << '\n';
        return kUsage;
    }
    catch (const std::logic_error& e) {
        err << "causal: internal error: " << e.what() << '\n';
        return kNegative;
    }
    return kUsage;
}

} // namespace causal::cli
