#include "causal/signature.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace causal {

namespace {

constexpr std::array kReserved = {
    "signature", "exogenous", "endogenous", "equations", "case", "default", "true", "false",
    "proof", "in", "of", "axiom", "mp", "qed", "order",
};

} // namespace

bool is_reserved_word(std::string_view word)
{
    return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

bool is_identifier(std::string_view token)
{
    if (token.empty()) {
        return false;
    }
    auto head = static_cast<unsigned char>(token.front());
    if (!std::isalpha(head) && head != '_') {
        return false;
    }
    return std::all_of(token.begin(), token.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

bool is_value_token(std::string_view token)
{
    if (is_identifier(token)) {
        return true;
    }
    std::string_view digits = token;
    if (!digits.empty() && digits.front() == '-') {
        digits.remove_prefix(1);
    }
    return !digits.empty() &&
           std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string> Signature::problems(const SignatureDecl& decl)
{
    std::vector<std::string> out;
    std::set<std::string> seen;

    auto check = [&](const VariableDecl& v, bool endogenous) {
        const char* kind = endogenous ? "endogenous" : "exogenous";
        if (!is_identifier(v.name)) {
            out.push_back(std::string(kind) + " variable '" + v.name + "': not an identifier");
        }
        else if (is_reserved_word(v.name)) {
            out.push_back(std::string(kind) + " variable '" + v.name + "': reserved word");
        }
        if (!seen.insert(v.name).second) {
            out.push_back("variable '" + v.name + "' declared more than once");
        }
        if (v.domain.empty()) {
            out.push_back(std::string(kind) + " variable '" + v.name + "': empty domain");
        }
        else if (endogenous && v.domain.size() < 2) {
            out.push_back("endogenous variable '" + v.name + "': domain must have at least 2 values");
        }
        std::set<std::string> values;
        for (const auto& token : v.domain) {
            if (!is_value_token(token)) {
                out.push_back("variable '" + v.name + "': bad value token '" + token + "'");
            }
            if (!values.insert(token).second) {
                out.push_back("variable '" + v.name + "': value '" + token + "' repeated");
            }
        }
    };

    for (const auto& v : decl.exogenous) {
        check(v, false);
    }
    for (const auto& v : decl.endogenous) {
        check(v, true);
    }
    return out;
}

Signature Signature::build(const SignatureDecl& decl)
{
    auto found = problems(decl);
    if (!found.empty()) {
        throw ValidationError(std::move(found));
    }
    Signature sig;
    sig._decl = decl;
    sig._context_count = 1;
    for (const auto& v : decl.exogenous) {
        sig._context_count *= v.domain.size();
    }
    return sig;
}

const VariableDecl& Signature::variable(VarRef ref) const
{
    return ref.kind == VarKind::exogenous ? _decl.exogenous.at(ref.index) : _decl.endogenous.at(ref.index);
}

std::optional<VarRef> Signature::find(std::string_view name) const
{
    for (VarIndex i = 0; i < _decl.exogenous.size(); ++i) {
        if (_decl.exogenous[i].name == name) {
            return VarRef{VarKind::exogenous, i};
        }
    }
    for (VarIndex i = 0; i < _decl.endogenous.size(); ++i) {
        if (_decl.endogenous[i].name == name) {
            return VarRef{VarKind::endogenous, i};
        }
    }
    return std::nullopt;
}

std::optional<VarIndex> Signature::find_endogenous(std::string_view name) const
{
    auto ref = find(name);
    if (ref && ref->kind == VarKind::endogenous) {
        return ref->index;
    }
    return std::nullopt;
}

std::optional<ValueIndex> Signature::value_index(VarRef ref, std::string_view token) const
{
    const auto& domain = variable(ref).domain;
    auto it = std::find(domain.begin(), domain.end(), token);
    if (it == domain.end()) {
        return std::nullopt;
    }
    return static_cast<ValueIndex>(it - domain.begin());
}

const std::string& Signature::value_name(VarRef ref, ValueIndex v) const
{
    return variable(ref).domain.at(v);
}

Context Signature::context_at(std::size_t n) const
{
    if (n >= _context_count) {
        throw ContractError("context number out of range");
    }
    Context ctx;
    ctx.values.assign(_decl.exogenous.size(), 0);
    for (std::size_t i = _decl.exogenous.size(); i-- > 0;) {
        auto size = _decl.exogenous[i].domain.size();
        ctx.values[i] = n % size;
        n /= size;
    }
    return ctx;
}

std::size_t Signature::context_number(const Context& ctx) const
{
    if (!is_valid_context(ctx)) {
        throw ContractError("invalid context");
    }
    std::size_t n = 0;
    for (std::size_t i = 0; i < ctx.values.size(); ++i) {
        n = n * _decl.exogenous[i].domain.size() + ctx.values[i];
    }
    return n;
}

std::vector<Context> Signature::contexts() const
{
    std::vector<Context> out;
    out.reserve(_context_count);
    for (std::size_t n = 0; n < _context_count; ++n) {
        out.push_back(context_at(n));
    }
    return out;
}

bool Signature::is_valid_context(const Context& ctx) const
{
    if (ctx.values.size() != _decl.exogenous.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ctx.values.size(); ++i) {
        if (ctx.values[i] >= _decl.exogenous[i].domain.size()) {
            return false;
        }
    }
    return true;
}

std::string Signature::check_interventions(const InterventionList& iv) const
{
    std::vector<bool> used(endogenous_count(), false);
    for (const auto& pin : iv) {
        if (pin.var >= endogenous_count()) {
            return "intervention on unknown variable";
        }
        if (used[pin.var]) {
            return "variable '" + endogenous_name(pin.var) + "' intervened more than once";
        }
        used[pin.var] = true;
        if (pin.value >= endogenous_domain_size(pin.var)) {
            return "value out of domain for '" + endogenous_name(pin.var) + "'";
        }
    }
    return {};
}

std::vector<std::vector<VarIndex>> subsets_by_size(const std::vector<VarIndex>& pool, std::size_t max_size)
{
    std::vector<std::vector<VarIndex>> out;
    const std::size_t n = pool.size();
    const std::size_t top = std::min(n, max_size);
    for (std::size_t k = 0; k <= top; ++k) {
        // lexicographic k-combinations of positions
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) {
            pick[i] = i;
        }
        while (true) {
            std::vector<VarIndex> subset;
            subset.reserve(k);
            for (auto p : pick) {
                subset.push_back(pool[p]);
            }
            out.push_back(std::move(subset));
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + (i - 1)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return out;
}

std::vector<InterventionList> assignments(const Signature& sig, const std::vector<VarIndex>& vars)
{
    std::vector<InterventionList> out;
    InterventionList current;
    for (auto v : vars) {
        current.push_back({v, 0});
    }
    while (true) {
        out.push_back(current);
        std::size_t i = current.size();
        while (i > 0) {
            auto& pin = current[i - 1];
            if (++pin.value < sig.endogenous_domain_size(pin.var)) {
                break;
            }
            pin.value = 0;
            --i;
        }
        if (i == 0) {
            break;
        }
    }
    return out;
}

std::vector<InterventionList> all_interventions(const Signature& sig, const std::vector<VarIndex>& pool,
                                                std::size_t max_size)
{
    std::vector<InterventionList> out;
    for (const auto& subset : subsets_by_size(pool, max_size)) {
        auto lists = assignments(sig, subset);
        out.insert(out.end(), std::make_move_iterator(lists.begin()), std::make_move_iterator(lists.end()));
    }
    return out;
}

std::vector<VarIndex> endogenous_except(const Signature& sig, std::initializer_list<VarIndex> excluded)
{
    std::vector<VarIndex> out;
    for (VarIndex i = 0; i < sig.endogenous_count(); ++i) {
        if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace causal
