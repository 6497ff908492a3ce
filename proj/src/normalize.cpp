#include "deduce/theory.hpp"

#include <algorithm>

namespace deduce {

namespace {

// Adds sign·t to an abelian-group exponent map. Assumes the children of t are
// already normal, so inverses only wrap atoms.
void collect_group(const TermBank& bank, TheoryId th, Term t, std::int64_t sign, std::map<Term, std::int64_t>& acc)
{
    const Node& n = bank.node(t);
    const auto& def = bank.signature().theory(th);
    if (n.theory == th && n.kind == HeadKind::AC) {
        for (Term c : n.children) collect_group(bank, th, c, sign, acc);
        return;
    }
    if (n.theory == th && n.kind == HeadKind::Symbol) {
        if (n.symbol == def.zero()) return;
        if (n.symbol == def.inverse()) {
            collect_group(bank, th, n.children.front(), -sign, acc);
            return;
        }
    }
    acc[t] += sign;
}

Term build_group(TermBank& bank, TheoryId th, const std::map<Term, std::int64_t>& acc)
{
    const auto& def = bank.signature().theory(th);
    std::vector<Term> summands;
    for (auto [atom, e] : acc) {
        if (e == 0) continue;
        Term unit = atom;
        if (e < 0) {
            const Term args[1] = {atom};
            unit = bank.symbol(th, *def.inverse(), args);
        }
        for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) summands.push_back(unit);
    }
    if (summands.empty()) return bank.symbol(th, *def.zero(), {});
    return bank.ac(th, std::move(summands));
}

Term build_xor(TermBank& bank, TheoryId th, std::span<const Term> normal_children)
{
    const auto& def = bank.signature().theory(th);
    std::map<Term, int> parity;
    for (Term c : normal_children) {
        const Node& n = bank.node(c);
        if (n.theory == th && n.kind == HeadKind::AC)
            for (Term g : n.children) parity[g] ^= 1;
        else if (n.theory == th && n.kind == HeadKind::Symbol && n.symbol == def.zero())
            continue;
        else
            parity[c] ^= 1;
    }
    std::vector<Term> odd;
    for (auto [t, p] : parity)
        if (p) odd.push_back(t);
    if (odd.empty()) return bank.symbol(th, *def.zero(), {});
    return bank.ac(th, std::move(odd));
}

} // namespace

Term normalize(TermBank& bank, Term t)
{
    if (auto it = bank.normal_cache().find(t); it != bank.normal_cache().end()) return it->second;

    // Copy: interning below may grow the node table.
    const Node n = bank.node(t);
    Term result = t;
    if (n.kind == HeadKind::Ctor || n.kind == HeadKind::Symbol || n.kind == HeadKind::AC) {
        std::vector<Term> kids;
        kids.reserve(n.children.size());
        for (Term c : n.children) kids.push_back(normalize(bank, c));

        if (n.kind == HeadKind::Ctor) {
            result = bank.ctor(n.ctor, kids);
        } else {
            const auto& def = bank.signature().theory(n.theory);
            const auto role = def.symbols[n.symbol].role;
            if (role == SymbolRole::Inverse) {
                std::map<Term, std::int64_t> acc;
                collect_group(bank, n.theory, kids.front(), -1, acc);
                result = build_group(bank, n.theory, acc);
            } else if (role == SymbolRole::Zero) {
                result = t;
            } else if (def.kind == TheoryKind::Xor) {
                result = build_xor(bank, n.theory, kids);
            } else if (def.kind == TheoryKind::AbelianGroup) {
                std::map<Term, std::int64_t> acc;
                for (Term k : kids) collect_group(bank, n.theory, k, 1, acc);
                result = build_group(bank, n.theory, acc);
            } else {
                result = bank.ac(n.theory, std::move(kids));
            }
        }
    }
    bank.normal_cache()[t] = result;
    bank.normal_cache()[result] = result;
    return result;
}

bool is_normal(TermBank& bank, Term t) { return normalize(bank, t) == t; }

std::map<Term, std::int64_t> exponents(const TermBank& bank, Term pure_normal, TheoryId th)
{
    std::map<Term, std::int64_t> acc;
    collect_group(bank, th, pure_normal, 1, acc);
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return acc;
}

Term VarAssignment::variable_for(TermBank& bank, Term t)
{
    Term nf = normalize(bank, t);
    auto it = vars_.find(nf);
    if (it != vars_.end()) return it->second;
    Term v = bank.fresh_var();
    vars_.emplace(nf, v);
    return v;
}

Term abstract(TermBank& bank, Term t, TheoryId th, VarAssignment& va)
{
    auto key = std::make_pair(index(th), t);
    if (auto it = va.memo_.find(key); it != va.memo_.end()) return it->second;

    const Node n = bank.node(t);
    Term result;
    if (n.kind == HeadKind::Name || n.kind == HeadKind::Var) {
        result = t;
    } else if ((n.kind == HeadKind::Symbol || n.kind == HeadKind::AC) && n.theory == th) {
        std::vector<Term> kids;
        kids.reserve(n.children.size());
        for (Term c : n.children) kids.push_back(abstract(bank, c, th, va));
        result = n.kind == HeadKind::AC ? bank.ac(th, std::move(kids)) : bank.symbol(th, n.symbol, kids);
    } else {
        result = va.variable_for(bank, t);
    }
    va.memo_.emplace(key, result);
    return result;
}

} // namespace deduce
