#include "causal/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace causal {

namespace {

std::string row_label(const EquationDecl& eq, std::size_t row, const RowDecl& r)
{
    std::ostringstream out;
    out << "equation '" << eq.target << "', row " << (row + 1) << " (" << to_string(r.pos) << ")";
    return out.str();
}

/// Input positions of F_target in grid order.
std::vector<std::size_t> input_positions(const Signature& sig, VarIndex target)
{
    std::vector<std::size_t> pos;
    const auto m = sig.exogenous_count();
    for (std::size_t i = 0; i < m; ++i) {
        pos.push_back(i);
    }
    for (VarIndex j = 0; j < sig.endogenous_count(); ++j) {
        if (j != target) {
            pos.push_back(m + j);
        }
    }
    return pos;
}

std::size_t position_domain(const Signature& sig, std::size_t p)
{
    const auto m = sig.exogenous_count();
    return p < m ? sig.exogenous(p).domain.size() : sig.endogenous(p - m).domain.size();
}

std::size_t position_of(const Signature& sig, VarRef ref)
{
    return ref.kind == VarKind::exogenous ? ref.index : sig.exogenous_count() + ref.index;
}

void check_tables(const Signature& sig, const std::vector<EquationTable>& tables)
{
    std::vector<std::string> problems;
    if (tables.size() != sig.endogenous_count()) {
        problems.push_back("expected one equation per endogenous variable");
    }
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const auto& table = tables[t];
        if (table.target != t) {
            problems.push_back("equation " + std::to_string(t) + " has the wrong target");
            continue;
        }
        const auto& name = sig.endogenous_name(t);
        if (table.default_output >= sig.endogenous_domain_size(t)) {
            problems.push_back("equation '" + name + "': default output out of domain");
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            const std::string label = "equation '" + name + "', row " + std::to_string(r + 1);
            if (row.output >= sig.endogenous_domain_size(t)) {
                problems.push_back(label + ": output out of domain");
            }
            std::set<VarRef> seen;
            for (const auto& lit : row.condition) {
                bool exists = lit.var.kind == VarKind::exogenous ? lit.var.index < sig.exogenous_count()
                                                                 : lit.var.index < sig.endogenous_count();
                if (!exists) {
                    problems.push_back(label + ": unknown variable in condition");
                    continue;
                }
                if (lit.var.kind == VarKind::endogenous && lit.var.index == t) {
                    problems.push_back(label + ": condition mentions the target");
                }
                if (!seen.insert(lit.var).second) {
                    problems.push_back(label + ": variable repeated in condition");
                }
                if (lit.value >= sig.domain_size(lit.var)) {
                    problems.push_back(label + ": condition value out of domain");
                }
            }
        }
    }
    if (!problems.empty()) {
        throw ValidationError(std::move(problems));
    }
}

} // namespace

ValidationReport validate_model(const ModelDecl& decl)
{
    ValidationReport report;
    report.problems = Signature::problems(decl.signature);

    std::map<std::string, VarKind> kinds;
    std::map<std::string, const VariableDecl*> vars;
    for (const auto& v : decl.signature.exogenous) {
        kinds.emplace(v.name, VarKind::exogenous);
        vars.emplace(v.name, &v);
    }
    for (const auto& v : decl.signature.endogenous) {
        kinds.emplace(v.name, VarKind::endogenous);
        vars.emplace(v.name, &v);
    }
    auto in_domain = [&](const std::string& var, const std::string& token) {
        const auto& dom = vars.at(var)->domain;
        return std::find(dom.begin(), dom.end(), token) != dom.end();
    };

    std::set<std::string> defined;
    for (const auto& eq : decl.equations) {
        auto kind = kinds.find(eq.target);
        if (kind == kinds.end() || kind->second != VarKind::endogenous) {
            report.problems.push_back("equation for '" + eq.target + "' (" + to_string(eq.pos) +
                                      "): not an endogenous variable");
            continue;
        }
        if (!defined.insert(eq.target).second) {
            report.problems.push_back("equation for '" + eq.target + "' (" + to_string(eq.pos) +
                                      "): defined more than once");
        }
        for (std::size_t r = 0; r < eq.rows.size(); ++r) {
            const auto& row = eq.rows[r];
            const auto label = row_label(eq, r, row);
            std::set<std::string> seen;
            for (const auto& [var, token] : row.condition) {
                auto k = kinds.find(var);
                if (k == kinds.end()) {
                    report.problems.push_back(label + ": unknown variable '" + var + "'");
                    continue;
                }
                if (var == eq.target) {
                    report.problems.push_back(label + ": condition mentions the target '" + var + "'");
                }
                if (!seen.insert(var).second) {
                    report.problems.push_back(label + ": variable '" + var + "' repeated in condition");
                }
                if (!in_domain(var, token)) {
                    report.problems.push_back(label + ": value '" + token + "' not in the domain of '" + var + "'");
                }
            }
            if (!in_domain(eq.target, row.output)) {
                report.problems.push_back(label + ": output '" + row.output + "' not in the domain of '" +
                                          eq.target + "'");
            }
        }
        if (!eq.default_output) {
            report.problems.push_back("equation for '" + eq.target + "' (" + to_string(eq.pos) +
                                      "): missing default row");
        }
        else if (!in_domain(eq.target, *eq.default_output)) {
            report.problems.push_back("equation for '" + eq.target + "' (" + to_string(eq.pos) +
                                      "), default row: output '" + *eq.default_output +
                                      "' not in the domain of '" + eq.target + "'");
        }
    }
    for (const auto& v : decl.signature.endogenous) {
        if (!defined.count(v.name) && kinds.count(v.name) && kinds.at(v.name) == VarKind::endogenous) {
            report.problems.push_back("no equation for endogenous variable '" + v.name + "'");
        }
    }
    return report;
}

ValueIndex apply_table(const EquationTable& table, const Signature& sig, std::span<const ValueIndex> input)
{
    const auto m = sig.exogenous_count();
    if (input.size() != m + sig.endogenous_count()) {
        throw ContractError("apply_table: input has the wrong width");
    }
    for (std::size_t p = 0; p < input.size(); ++p) {
        if (p == m + table.target) {
            continue;
        }
        if (input[p] == kUnassigned) {
            const auto ref = p < m ? VarRef{VarKind::exogenous, p} : VarRef{VarKind::endogenous, p - m};
            throw ContractError("apply_table: missing input for '" + sig.name(ref) + "'");
        }
    }
    for (const auto& row : table.rows) {
        bool match = std::all_of(row.condition.begin(), row.condition.end(), [&](const Literal& lit) {
            return input[position_of(sig, lit.var)] == lit.value;
        });
        if (match) {
            return row.output;
        }
    }
    return table.default_output;
}

CausalModel CausalModel::build(const ModelDecl& decl)
{
    auto report = validate_model(decl);
    if (!report.ok()) {
        throw ValidationError(std::move(report.problems));
    }
    auto sig = Signature::build(decl.signature);
    std::vector<EquationTable> tables(sig.endogenous_count());
    for (const auto& eq : decl.equations) {
        const VarIndex target = *sig.find_endogenous(eq.target);
        auto& table = tables[target];
        table.target = target;
        const VarRef target_ref{VarKind::endogenous, target};
        for (const auto& row : eq.rows) {
            TableRow out;
            for (const auto& [var, token] : row.condition) {
                auto ref = *sig.find(var);
                out.condition.push_back({ref, *sig.value_index(ref, token)});
            }
            out.output = *sig.value_index(target_ref, row.output);
            table.rows.push_back(std::move(out));
        }
        table.default_output = *sig.value_index(target_ref, *eq.default_output);
    }
    return from_tables(std::move(sig), std::move(tables));
}

CausalModel CausalModel::from_tables(Signature sig, std::vector<EquationTable> tables)
{
    check_tables(sig, tables);
    CausalModel model;
    model._sig = std::move(sig);
    model._tables = std::move(tables);
    model.compile();
    return model;
}

CausalModel CausalModel::from_functions(Signature sig, const std::vector<std::vector<ValueIndex>>& outputs)
{
    if (outputs.size() != sig.endogenous_count()) {
        throw ContractError("from_functions: expected one output vector per endogenous variable");
    }
    std::vector<EquationTable> tables;
    for (VarIndex t = 0; t < outputs.size(); ++t) {
        const auto positions = input_positions(sig, t);
        std::size_t cells = 1;
        for (auto p : positions) {
            cells *= position_domain(sig, p);
        }
        const auto& out = outputs[t];
        if (out.size() != cells) {
            throw ContractError("from_functions: output vector for '" + sig.endogenous_name(t) +
                                "' does not cover its input grid");
        }
        // default = most frequent output, ties to the lowest value
        std::vector<std::size_t> freq(sig.endogenous_domain_size(t), 0);
        for (auto v : out) {
            if (v >= freq.size()) {
                throw ContractError("from_functions: output out of domain");
            }
            ++freq[v];
        }
        const auto def = static_cast<ValueIndex>(std::max_element(freq.begin(), freq.end()) - freq.begin());

        EquationTable table;
        table.target = t;
        table.default_output = def;
        const auto m = sig.exogenous_count();
        for (std::size_t cell = 0; cell < cells; ++cell) {
            if (out[cell] == def) {
                continue;
            }
            TableRow row;
            row.output = out[cell];
            std::size_t rest = cell;
            std::vector<Literal> lits(positions.size());
            for (std::size_t k = positions.size(); k-- > 0;) {
                const auto p = positions[k];
                const auto size = position_domain(sig, p);
                const auto ref = p < m ? VarRef{VarKind::exogenous, p} : VarRef{VarKind::endogenous, p - m};
                lits[k] = Literal{ref, rest % size};
                rest /= size;
            }
            row.condition = std::move(lits);
            table.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(table));
    }
    return from_tables(std::move(sig), std::move(tables));
}

void CausalModel::compile()
{
    const auto width = _sig.exogenous_count() + _sig.endogenous_count();
    _grid.assign(_sig.endogenous_count(), {});
    _strides.assign(_sig.endogenous_count(), std::vector<std::size_t>(width, 0));
    for (VarIndex t = 0; t < _sig.endogenous_count(); ++t) {
        const auto positions = input_positions(_sig, t);
        std::size_t cells = 1;
        for (std::size_t k = positions.size(); k-- > 0;) {
            _strides[t][positions[k]] = cells;
            cells *= position_domain(_sig, positions[k]);
            if (cells > kMaxGridCells) {
                throw ValidationError({"equation '" + _sig.endogenous_name(t) + "': input grid too large"});
            }
        }
        auto& grid = _grid[t];
        grid.resize(cells);
        FullAssignment full(width, 0);
        for (std::size_t cell = 0; cell < cells; ++cell) {
            std::size_t rest = cell;
            for (std::size_t k = positions.size(); k-- > 0;) {
                const auto size = position_domain(_sig, positions[k]);
                full[positions[k]] = rest % size;
                rest /= size;
            }
            grid[cell] = apply_table(_tables[t], _sig, full);
        }
    }
}

ModelDecl CausalModel::to_decl() const
{
    ModelDecl decl;
    decl.signature = _sig.decl();
    for (const auto& table : _tables) {
        EquationDecl eq;
        eq.target = _sig.endogenous_name(table.target);
        const VarRef target_ref{VarKind::endogenous, table.target};
        for (const auto& row : table.rows) {
            RowDecl r;
            for (const auto& lit : row.condition) {
                r.condition.emplace_back(_sig.name(lit.var), _sig.value_name(lit.var, lit.value));
            }
            r.output = _sig.value_name(target_ref, row.output);
            eq.rows.push_back(std::move(r));
        }
        eq.default_output = _sig.value_name(target_ref, table.default_output);
        decl.equations.push_back(std::move(eq));
    }
    return decl;
}

// ---------------------------------------------------------------------------

Submodel::Submodel(const CausalModel& base, InterventionList iv, Context ctx)
    : _base(&base), _iv(std::move(iv)), _ctx(std::move(ctx))
{
    const auto& sig = base.signature();
    if (auto problem = sig.check_interventions(_iv); !problem.empty()) {
        throw ContractError("submodel: " + problem);
    }
    if (!sig.is_valid_context(_ctx)) {
        throw ContractError("submodel: context does not cover the exogenous variables");
    }
    _pinned.assign(sig.endogenous_count(), kUnassigned);
    for (const auto& pin : _iv) {
        _pinned[pin.var] = pin.value;
    }
    for (VarIndex v = 0; v < sig.endogenous_count(); ++v) {
        if (_pinned[v] == kUnassigned) {
            _free.push_back(v);
        }
    }
}

Submodel submodel(const CausalModel& model, InterventionList iv, Context ctx)
{
    return Submodel(model, std::move(iv), std::move(ctx));
}

namespace {

/// Walks every candidate assignment to the free variables in canonical order
/// and calls `visit` on each that satisfies the equations. `visit` returns
/// false to stop.
template <class Visit>
void for_each_solution(const Submodel& sub, Visit&& visit)
{
    const auto& model = sub.base();
    const auto& sig = model.signature();
    const auto m = sig.exogenous_count();
    FullAssignment full(m + sig.endogenous_count(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        full[i] = sub.context().values[i];
    }
    for (const auto& pin : sub.intervention()) {
        full[m + pin.var] = pin.value;
    }
    const auto& free = sub.free();
    while (true) {
        bool ok = true;
        for (auto z : free) {
            if (model.evaluate(z, full) != full[m + z]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Solution sol;
            sol.values.assign(sig.endogenous_count(), kUnassigned);
            for (auto z : free) {
                sol.values[z] = full[m + z];
            }
            if (!visit(std::move(sol))) {
                return;
            }
        }
        std::size_t i = free.size();
        while (i > 0) {
            auto z = free[i - 1];
            if (++full[m + z] < sig.endogenous_domain_size(z)) {
                break;
            }
            full[m + z] = 0;
            --i;
        }
        if (i == 0) {
            return;
        }
    }
}

} // namespace

std::vector<Solution> solutions(const Submodel& sub)
{
    std::vector<Solution> out;
    for_each_solution(sub, [&](Solution sol) {
        out.push_back(std::move(sol));
        return true;
    });
    return out;
}

std::size_t count_solutions(const Submodel& sub, std::size_t stop_after)
{
    std::size_t n = 0;
    for_each_solution(sub, [&](Solution) { return ++n < stop_after; });
    return n;
}

bool satisfies(const Submodel& sub, const Solution& sol)
{
    const auto& model = sub.base();
    const auto& sig = model.signature();
    const auto m = sig.exogenous_count();
    if (sol.values.size() != sig.endogenous_count()) {
        return false;
    }
    FullAssignment full(m + sig.endogenous_count(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        full[i] = sub.context().values[i];
    }
    for (VarIndex v = 0; v < sig.endogenous_count(); ++v) {
        const auto pinned = sub.pinned(v);
        if ((pinned == kUnassigned) == (sol.values[v] == kUnassigned)) {
            return false;
        }
        full[m + v] = pinned != kUnassigned ? pinned : sol.values[v];
    }
    for (auto z : sub.free()) {
        if (apply_table(model.equation(z), sig, full) != full[m + z]) {
            return false;
        }
    }
    return true;
}

std::string format_solution(const Submodel& sub, const Solution& sol)
{
    const auto& sig = sub.base().signature();
    std::string out;
    for (auto z : sub.free()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += sig.endogenous_name(z) + "=" + sig.endogenous_value(z, sol.values.at(z));
    }
    return out;
}

// ---------------------------------------------------------------------------

bool depends_on(const CausalModel& model, VarIndex target, VarRef source)
{
    const auto& sig = model.signature();
    if (target >= sig.endogenous_count()) {
        throw ContractError("depends_on: unknown target variable");
    }
    const bool exists = source.kind == VarKind::exogenous ? source.index < sig.exogenous_count()
                                                          : source.index < sig.endogenous_count();
    if (!exists) {
        throw ContractError("depends_on: unknown source variable");
    }
    if (source.kind == VarKind::endogenous && source.index == target) {
        throw ContractError("depends_on: source equals target");
    }

    // Strides of the target's grid, recomputed from its input layout.
    const auto positions = input_positions(sig, target);
    const auto src_pos = position_of(sig, source);
    std::size_t stride = 1;
    std::size_t src_stride = 0;
    for (std::size_t k = positions.size(); k-- > 0;) {
        if (positions[k] == src_pos) {
            src_stride = stride;
        }
        stride *= position_domain(sig, positions[k]);
    }
    const auto& grid = model.function(target);
    const auto size = sig.domain_size(source);
    for (std::size_t cell = 0; cell < grid.size(); ++cell) {
        if ((cell / src_stride) % size != 0) {
            continue;
        }
        for (std::size_t v = 1; v < size; ++v) {
            if (grid[cell + v * src_stride] != grid[cell]) {
                return true;
            }
        }
    }
    return false;
}

std::vector<std::vector<VarIndex>> dependency_graph(const CausalModel& model)
{
    const auto n = model.signature().endogenous_count();
    std::vector<std::vector<VarIndex>> edges(n);
    for (VarIndex y = 0; y < n; ++y) {
        for (VarIndex x = 0; x < n; ++x) {
            if (x != y && depends_on(model, x, {VarKind::endogenous, y})) {
                edges[y].push_back(x);
            }
        }
    }
    return edges;
}

RecursionWitness is_recursive(const CausalModel& model)
{
    const auto n = model.signature().endogenous_count();
    const auto edges = dependency_graph(model);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& out : edges) {
        for (auto x : out) {
            ++indegree[x];
        }
    }
    // Kahn's algorithm, always taking the smallest ready variable
    std::set<VarIndex> ready;
    for (VarIndex v = 0; v < n; ++v) {
        if (indegree[v] == 0) {
            ready.insert(v);
        }
    }
    RecursionWitness witness;
    while (!ready.empty()) {
        auto v = *ready.begin();
        ready.erase(ready.begin());
        witness.order.push_back(v);
        for (auto x : edges[v]) {
            if (--indegree[x] == 0) {
                ready.insert(x);
            }
        }
    }
    if (witness.order.size() == n) {
        witness.recursive = true;
        return witness;
    }

    // Every leftover variable has a leftover predecessor; walk backwards from
    // the smallest until a variable repeats.
    std::vector<bool> left(n, true);
    for (auto v : witness.order) {
        left[v] = false;
    }
    std::vector<std::vector<VarIndex>> preds(n);
    for (VarIndex y = 0; y < n; ++y) {
        for (auto x : edges[y]) {
            preds[x].push_back(y);
        }
    }
    VarIndex start = 0;
    while (!left[start]) {
        ++start;
    }
    std::vector<VarIndex> walk{start};
    std::vector<std::size_t> seen_at(n, static_cast<std::size_t>(-1));
    seen_at[start] = 0;
    while (true) {
        VarIndex cur = walk.back();
        VarIndex next = *std::find_if(preds[cur].begin(), preds[cur].end(), [&](VarIndex p) { return left[p]; });
        if (seen_at[next] != static_cast<std::size_t>(-1)) {
            std::vector<VarIndex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[next]), walk.end());
            cycle.push_back(next);
            std::reverse(cycle.begin(), cycle.end());
            witness.order.clear();
            witness.cycle = std::move(cycle);
            return witness;
        }
        seen_at[next] = walk.size();
        walk.push_back(next);
    }
}

std::vector<std::vector<VarIndex>> causal_orders(const CausalModel& model)
{
    const auto n = model.signature().endogenous_count();
    const auto edges = dependency_graph(model);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& out : edges) {
        for (auto x : out) {
            ++indegree[x];
        }
    }
    std::vector<std::vector<VarIndex>> orders;
    std::vector<VarIndex> prefix;
    std::vector<bool> used(n, false);
    std::function<void()> extend = [&] {
        if (prefix.size() == n) {
            orders.push_back(prefix);
            return;
        }
        for (VarIndex v = 0; v < n; ++v) {
            if (used[v] || indegree[v] != 0) {
                continue;
            }
            used[v] = true;
            prefix.push_back(v);
            for (auto x : edges[v]) {
                --indegree[x];
            }
            extend();
            for (auto x : edges[v]) {
                ++indegree[x];
            }
            prefix.pop_back();
            used[v] = false;
        }
    };
    extend();
    return orders;
}

bool respects_order(const CausalModel& model, const std::vector<VarIndex>& order)
{
    const auto n = model.signature().endogenous_count();
    if (order.size() != n) {
        return false;
    }
    std::vector<std::size_t> rank(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || rank[order[i]] != n) {
            return false;
        }
        rank[order[i]] = i;
    }
    const auto edges = dependency_graph(model);
    for (VarIndex y = 0; y < n; ++y) {
        for (auto x : edges[y]) {
            if (rank[y] > rank[x]) {
                return false;
            }
        }
    }
    return true;
}

UniquenessWitness is_uniquely_solvable(const CausalModel& model, std::size_t budget)
{
    const auto& sig = model.signature();
    const auto all = endogenous_except(sig, {});
    const auto contexts = sig.contexts();
    UniquenessWitness witness;
    for (const auto& subset : subsets_by_size(all)) {
        for (auto& iv : assignments(sig, subset)) {
            for (const auto& ctx : contexts) {
                if (witness.submodels_examined >= budget) {
                    throw BudgetExceeded("uniqueness check", witness.submodels_examined);
                }
                ++witness.submodels_examined;
                const auto count = count_solutions(Submodel(model, iv, ctx), 2);
                if (count != 1) {
                    witness.counterexample = SolutionCountWitness{iv, ctx, count};
                    return witness;
                }
            }
        }
    }
    witness.unique = true;
    return witness;
}

std::string to_string(ModelClass cls)
{
    switch (cls) {
    case ModelClass::recursive:
        return "recursive";
    case ModelClass::unique_solutions:
        return "unique-solutions";
    case ModelClass::general:
        return "general";
    }
    return "general";
}

std::optional<ModelClass> parse_model_class(std::string_view text)
{
    if (text == "rec" || text == "recursive") {
        return ModelClass::recursive;
    }
    if (text == "uniq" || text == "unique-solutions") {
        return ModelClass::unique_solutions;
    }
    if (text == "all" || text == "general") {
        return ModelClass::general;
    }
    return std::nullopt;
}

bool class_within(ModelClass member, ModelClass cls)
{
    return static_cast<int>(member) <= static_cast<int>(cls);
}

Classification classify(const CausalModel& model, std::size_t budget)
{
    Classification out;
    auto rec = is_recursive(model);
    if (rec.recursive) {
        out.cls = ModelClass::recursive;
        out.order = std::move(rec.order);
        return out;
    }
    out.cycle = std::move(rec.cycle);
    auto uniq = is_uniquely_solvable(model, budget);
    if (uniq.unique) {
        out.cls = ModelClass::unique_solutions;
        return out;
    }
    out.cls = ModelClass::general;
    out.counterexample = std::move(uniq.counterexample);
    return out;
}

bool in_class(const CausalModel& model, ModelClass cls, std::size_t budget)
{
    switch (cls) {
    case ModelClass::general:
        return true;
    case ModelClass::recursive:
        return is_recursive(model).recursive;
    case ModelClass::unique_solutions:
        return is_recursive(model).recursive || is_uniquely_solvable(model, budget).unique;
    }
    return false;
}

} // namespace causal
