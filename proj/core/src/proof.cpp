#include "causal/proof.hpp"

#include "causal/error.hpp"
#include "causal/formula_text.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace causal {

namespace {

constexpr std::array<std::pair<SystemId, std::string_view>, 5> kSystems{{
    {SystemId::ax_rec, "AX_rec"},
    {SystemId::ax_uniq, "AX_uniq"},
    {SystemId::ax_plus, "AX+"},
    {SystemId::ax_plus_uniq, "AX+_uniq"},
    {SystemId::ax_plus_rec, "AX+_rec"},
}};

struct RawLine {
    std::string_view text;
    SourcePosition pos; ///< of text[0]
};

std::vector<RawLine> split_lines(std::string_view text)
{
    std::vector<RawLine> out;
    std::size_t start = 0, line = 1;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        out.push_back({text.substr(start, end - start), {start, line, 1}});
        start = end + 1;
        ++line;
    }
    return out;
}

/// Moves `pos` forward over `text[0..n)`; `text` holds no newline.
SourcePosition advance(SourcePosition pos, std::size_t n)
{
    pos.offset += n;
    pos.column += n;
    return pos;
}

/// Drops a trailing comment and surrounding blanks; reports the shift.
std::string_view strip(std::string_view s, std::size_t* lead = nullptr)
{
    if (auto hash = s.find('#'); hash != std::string_view::npos) {
        s = s.substr(0, hash);
    }
    std::size_t a = 0;
    while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    std::size_t b = s.size();
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    if (lead) {
        *lead = a;
    }
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& message, SourcePosition pos)
{
    throw ParseError(message, pos);
}

std::size_t parse_number(std::string_view s, SourcePosition pos, const char* what)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        fail(std::string("expected ") + what + " but found '" + std::string(s) + "'", pos);
    }
    if (s.size() > 9) {
        fail(std::string(what) + " is too large", pos);
    }
    return std::stoul(std::string(s));
}

std::vector<VarIndex> parse_order(const RawLine& raw, std::size_t lead, const Signature& sig)
{
    detail::TokenStream in(detail::tokenize(strip(raw.text), advance(raw.pos, lead)));
    in.expect_word("order");
    std::vector<VarIndex> order;
    std::vector<bool> seen(sig.endogenous_count(), false);
    do {
        const auto t = in.expect_identifier("an endogenous variable name");
        auto v = sig.find_endogenous(t.text);
        if (!v) {
            detail::TokenStream::fail_at(t, "'" + t.text + "' is not an endogenous variable");
        }
        if (seen[*v]) {
            detail::TokenStream::fail_at(t, "'" + t.text + "' listed twice in the order");
        }
        seen[*v] = true;
        order.push_back(*v);
    } while (in.accept("<"));
    if (!in.at_end()) {
        in.fail("unexpected " + detail::describe(in.peek()));
    }
    if (order.size() != sig.endogenous_count()) {
        fail("the order must list every endogenous variable", raw.pos);
    }
    return order;
}

Justification parse_justification(std::string_view text, SourcePosition pos)
{
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        if (j > i) {
            words.push_back(text.substr(i, j - i));
        }
        i = j;
    }
    Justification why;
    if (words.size() == 2 && words[0] == "axiom") {
        why.kind = Justification::Kind::axiom;
        why.scheme = std::string(words[1]);
        return why;
    }
    if (words.size() == 3 && words[0] == "mp") {
        why.kind = Justification::Kind::mp;
        why.premise = parse_number(words[1], pos, "a line number");
        why.implication = parse_number(words[2], pos, "a line number");
        return why;
    }
    fail("expected 'axiom <SCHEME>' or 'mp <i> <j>'", pos);
}

ProofVerdict reject(std::size_t line, RejectReason reason, std::string detail)
{
    return {false, line, reason, std::move(detail)};
}

} // namespace

std::string to_string(SystemId id)
{
    for (const auto& [sys, name] : kSystems) {
        if (sys == id) {
            return std::string(name);
        }
    }
    return "?";
}

std::optional<SystemId> parse_system(std::string_view name)
{
    for (const auto& [sys, text] : kSystems) {
        if (text == name) {
            return sys;
        }
    }
    return std::nullopt;
}

std::string ProofSystem::name() const
{
    return to_string(id) + (order ? "+Ord" : "");
}

std::set<Scheme> ProofSystem::schemes() const
{
    using S = Scheme;
    std::set<Scheme> out;
    switch (id) {
    case SystemId::ax_uniq:
        out = {S::C0, S::C1, S::C2, S::C3, S::C4, S::C5};
        break;
    case SystemId::ax_rec:
        out = {S::C0, S::C1, S::C2, S::C3, S::C4, S::C6};
        break;
    case SystemId::ax_plus:
        out = {S::D0, S::D1, S::D2, S::D3, S::D4, S::D5, S::D7, S::D8, S::D9};
        break;
    case SystemId::ax_plus_uniq:
        out = {S::D0, S::D1, S::D2, S::D3, S::D4, S::D5, S::D7, S::D8, S::D9, S::D10};
        break;
    case SystemId::ax_plus_rec:
        out = {S::D0, S::D1, S::D2, S::D3, S::D4, S::D5, S::D6, S::D7, S::D8, S::D9, S::D10};
        break;
    }
    if (order) {
        out.insert(S::Ord);
    }
    return out;
}

ModelClass ProofSystem::model_class() const
{
    switch (id) {
    case SystemId::ax_rec:
    case SystemId::ax_plus_rec:
        return ModelClass::recursive;
    case SystemId::ax_uniq:
    case SystemId::ax_plus_uniq:
        return ModelClass::unique_solutions;
    case SystemId::ax_plus:
        return ModelClass::general;
    }
    return ModelClass::general;
}

bool ProofSystem::single_atom_language() const
{
    return id == SystemId::ax_rec || id == SystemId::ax_uniq;
}

std::string to_string(RejectReason r)
{
    switch (r) {
    case RejectReason::none:
        return "none";
    case RejectReason::not_an_instance:
        return "not-an-instance";
    case RejectReason::not_a_tautology:
        return "not-a-tautology";
    case RejectReason::scheme_not_in_system:
        return "scheme-not-in-system";
    case RejectReason::unknown_scheme:
        return "unknown-scheme";
    case RejectReason::dangling_reference:
        return "dangling-reference";
    case RejectReason::mp_shape:
        return "mp-shape";
    case RejectReason::tautology_cap:
        return "tautology-cap";
    case RejectReason::goal_mismatch:
        return "goal-mismatch";
    case RejectReason::language:
        return "language";
    }
    return "?";
}

Proof parse_proof(std::string_view text, const Signature& sig)
{
    Proof proof;
    bool have_header = false, done = false;
    for (const auto& raw : split_lines(text)) {
        std::size_t lead = 0;
        const auto body = strip(raw.text, &lead);
        const auto pos = advance(raw.pos, lead);
        if (body.empty()) {
            continue;
        }
        if (done) {
            fail("text after 'qed'", pos);
        }
        if (!have_header) {
            if (body.substr(0, 6) == "order " || body == "order") {
                if (proof.system.order) {
                    fail("second 'order' line", pos);
                }
                proof.system.order = parse_order(raw, lead, sig);
                continue;
            }
            // proof in <SYSTEM> of <formula>
            std::size_t at = 0;
            auto word = [&] {
                while (at < body.size() && std::isspace(static_cast<unsigned char>(body[at]))) {
                    ++at;
                }
                auto start = at;
                while (at < body.size() && !std::isspace(static_cast<unsigned char>(body[at]))) {
                    ++at;
                }
                return std::make_pair(body.substr(start, at - start), start);
            };
            if (word().first != "proof" || word().first != "in") {
                fail("expected the header 'proof in <SYSTEM> of <formula>'", pos);
            }
            const auto [system, system_at] = word();
            auto id = parse_system(system);
            if (!id) {
                fail("unknown proof system '" + std::string(system) + "'", advance(pos, system_at));
            }
            proof.system.id = *id;
            if (word().first != "of") {
                fail("expected 'of' after the system name", advance(pos, at));
            }
            proof.goal = parse_formula(body.substr(at), sig, advance(pos, at));
            have_header = true;
            continue;
        }
        if (body == "qed") {
            done = true;
            continue;
        }
        const auto colon = body.find(':');
        const auto semi = body.rfind(';');
        if (colon == std::string_view::npos || semi == std::string_view::npos || semi < colon) {
            fail("expected '<n>: <formula> ; <justification>'", pos);
        }
        ProofLine line;
        line.pos = pos;
        line.number = parse_number(strip(body.substr(0, colon)), pos, "a line number");
        if (line.number != proof.lines.size() + 1) {
            fail("expected line number " + std::to_string(proof.lines.size() + 1), pos);
        }
        line.formula = parse_formula(body.substr(colon + 1, semi - colon - 1), sig, advance(pos, colon + 1));
        line.why = parse_justification(body.substr(semi + 1), advance(pos, semi + 1));
        proof.lines.push_back(std::move(line));
    }
    if (!have_header) {
        fail("missing 'proof in <SYSTEM> of <formula>' header", {text.size(), 1, 1});
    }
    if (!done) {
        fail("missing 'qed'", {text.size(), 1, 1});
    }
    return proof;
}

ProofVerdict check_proof(const Proof& p, const Signature& sig, std::size_t tautology_cap)
{
    const auto allowed = p.system.schemes();
    MatchOptions options;
    options.order = p.system.order;
    options.tautology_cap = tautology_cap;

    for (std::size_t k = 0; k < p.lines.size(); ++k) {
        const auto& line = p.lines[k];
        const auto n = line.number;
        const auto& f = line.formula;
        if (p.system.single_atom_language() && classify_language(f) == LanguageClass::plus) {
            return reject(n, RejectReason::language, p.system.name() + " lines must use single-atom boxes");
        }
        if (line.why.kind == Justification::Kind::mp) {
            const auto i = line.why.premise, j = line.why.implication;
            if (i < 1 || i >= n || j < 1 || j >= n) {
                return reject(n, RejectReason::dangling_reference,
                              "mp must cite two earlier lines, got " + std::to_string(i) + " and " + std::to_string(j));
            }
            if (!(p.lines[j - 1].formula == Formula::implication(p.lines[i - 1].formula, f))) {
                return reject(n, RejectReason::mp_shape,
                              "line " + std::to_string(j) + " is not line " + std::to_string(i) + " -> line " +
                                  std::to_string(n));
            }
            continue;
        }
        const auto scheme = parse_scheme(line.why.scheme);
        if (!scheme) {
            return reject(n, RejectReason::unknown_scheme, "no axiom scheme named '" + line.why.scheme + "'");
        }
        if (!allowed.count(*scheme)) {
            return reject(n, RejectReason::scheme_not_in_system,
                          line.why.scheme + " is not part of " + p.system.name());
        }
        try {
            if (*scheme == Scheme::C0 || *scheme == Scheme::D0) {
                if (!tautology(f, tautology_cap)) {
                    return reject(n, RejectReason::not_a_tautology, "not a propositional tautology");
                }
                continue;
            }
            if (*scheme == Scheme::D8 && f.is(Formula::Op::leaf) && f.leaf().mode == Modality::box &&
                !tautology(f.leaf().body, tautology_cap)) {
                return reject(n, RejectReason::not_a_tautology, "box body is not a propositional tautology");
            }
            if (!is_instance(f, *scheme, sig, options)) {
                return reject(n, RejectReason::not_an_instance, "not an instance of " + line.why.scheme);
            }
        }
        catch (const TautologyCapExceeded& e) {
            return reject(n, RejectReason::tautology_cap, e.what());
        }
    }
    if (p.lines.empty()) {
        return reject(0, RejectReason::goal_mismatch, "the proof has no lines");
    }
    if (!(p.lines.back().formula == p.goal)) {
        return reject(p.lines.back().number, RejectReason::goal_mismatch, "the last line is not the goal");
    }
    return {true, 0, RejectReason::none, {}};
}

CrosscheckReport soundness_crosscheck(const Proof& p, const Signature& sig, std::size_t budget)
{
    CrosscheckReport r;
    const auto cls = p.system.model_class();
    if (p.system.order) {
        const auto order = *p.system.order;
        r.outcome = valid_in(p.goal, sig, cls, budget,
                             [order](const CausalModel& m) { return respects_order(m, order); });
    }
    else {
        r.outcome = valid(p.goal, sig, cls, budget);
    }
    r.agrees = r.outcome.verdict == Validity::valid;
    return r;
}

} // namespace causal
