#include "deduce/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace deduce {

OracleVerdict nd_prove(TermBank& bank, std::span<const Term> gamma, Term m, const OracleBudget& budget)
{
    const Term goal = normalize(bank, m);
    std::unordered_set<Term> known;
    std::vector<Term> order;
    std::vector<Term> fresh;
    auto add = [&](Term t) {
        if (known.insert(t).second) fresh.push_back(t);
    };
    for (Term g : gamma) add(normalize(bank, g));

    std::vector<Term> everything(gamma.begin(), gamma.end());
    for (auto& t : everything) t = normalize(bank, t);
    everything.push_back(goal);
    std::vector<Term> buildable;
    for (Term t : subterms(bank, everything)) {
        const Node& n = bank.node(t);
        if (n.kind == HeadKind::Ctor && n.ctor != Ctor::Pub) buildable.push_back(t);
    }

    // Known terms small enough to appear in a sum, grouped by size.
    std::vector<std::vector<Term>> by_size(budget.max_term_size + 1);
    auto commit = [&] {
        std::vector<Term> frontier = std::move(fresh);
        fresh.clear();
        order.insert(order.end(), frontier.begin(), frontier.end());
        for (Term t : frontier)
            if (bank.size_of(t) < budget.max_term_size) by_size[bank.size_of(t)].push_back(t);
        return frontier;
    };
    std::vector<Term> frontier = commit();
    if (known.contains(goal)) return OracleVerdict::Provable;

    const auto& sig = bank.signature();
    for (std::size_t depth = 0; depth < budget.max_depth; ++depth) {
        // eliminations
        for (std::size_t i = 0; i < order.size(); ++i) {
            const Node n = bank.node(order[i]);
            if (n.kind != HeadKind::Ctor) continue;
            switch (n.ctor) {
            case Ctor::Pair:
                add(n.children[0]);
                add(n.children[1]);
                break;
            case Ctor::Enc:
            case Ctor::Blind:
                if (known.contains(n.children[1])) add(n.children[0]);
                break;
            case Ctor::Sign: {
                const Term key[1] = {n.children[1]};
                if (auto pub = bank.find_ctor(Ctor::Pub, key); pub && known.contains(*pub)) add(n.children[0]);
                const Node inner = bank.node(n.children[0]);
                if (inner.kind == HeadKind::Ctor && inner.ctor == Ctor::Blind && known.contains(inner.children[1]))
                    add(bank.sign(inner.children[0], n.children[1]));
                break;
            }
            case Ctor::Pub: break;
            }
        }
        // constructor introduction
        for (Term t : buildable) {
            if (known.contains(t)) continue;
            const Node& n = bank.node(t);
            if (known.contains(n.children[0]) && known.contains(n.children[1])) add(t);
        }
        // theory symbols
        auto full = [&] { return known.size() >= budget.max_closure; };
        for (std::size_t ti = 0; ti < sig.size() && !full(); ++ti) {
            const TheoryId th = theory_id(ti);
            const auto& def = sig.theory(th);
            auto keep = [&](Term raw) {
                Term t = normalize(bank, raw);
                if (bank.size_of(t) <= budget.max_term_size) add(t);
            };
            if (auto z = def.zero()) keep(bank.symbol(th, *z, {}));
            if (auto inv = def.inverse())
                for (std::size_t i = 0; i < frontier.size() && !full(); ++i) {
                    const Term a[1] = {frontier[i]};
                    keep(bank.symbol(th, *inv, a));
                }
            if (auto plus = def.plus())
                for (std::size_t i = 0; i < frontier.size() && !full(); ++i) {
                    const std::size_t room = budget.max_term_size - std::min<std::size_t>(budget.max_term_size, bank.size_of(frontier[i]) + 1);
                    for (std::size_t sz = 1; sz <= room && !full(); ++sz)
                        for (std::size_t j = 0; j < by_size[sz].size() && !full(); ++j) {
                            const Term a[2] = {frontier[i], by_size[sz][j]};
                            keep(bank.symbol(th, *plus, a));
                        }
                }
        }
        if (known.contains(goal)) return OracleVerdict::Provable;
        if (fresh.empty()) break;
        frontier = commit();
    }
    return known.contains(goal) ? OracleVerdict::Provable : OracleVerdict::Unknown;
}

namespace {

Context::Node sum_of(const TheoryDef& def, std::vector<Context::Node> parts)
{
    if (parts.empty()) return Context::Node{Context::Kind::Symbol, *def.zero(), {}};
    if (parts.size() == 1) return std::move(parts.front());
    return Context::Node{Context::Kind::Symbol, *def.plus(), std::move(parts)};
}

} // namespace

std::optional<Recipe> elem_bruteforce(TermBank& bank, std::span<const Term> gamma, Term m, TheoryId th,
                                      const OracleBudget& budget)
{
    const auto& def = bank.signature().theory(th);
    const std::size_t k = gamma.size();

    // Candidate from a coefficient vector; negative coefficients become
    // repeated inverses of single holes.
    auto attempt = [&](const std::vector<std::int64_t>& coeffs) -> std::optional<Recipe> {
        std::vector<Context::Node> parts;
        Recipe r{Context{th, {}}, {}};
        for (std::size_t j = 0; j < k; ++j) {
            for (std::int64_t c = 0; c < std::abs(coeffs[j]); ++c) {
                r.hole_args.push_back(gamma[j]);
                if (coeffs[j] > 0)
                    parts.push_back(Context::Node{});
                else
                    parts.push_back(Context::Node{Context::Kind::Symbol, *def.inverse(), {Context::Node{}}});
            }
        }
        if (parts.empty() && !def.zero()) return std::nullopt;
        r.context.root = sum_of(def, std::move(parts));
        if (normalize(bank, apply_context(bank, r.context, r.hole_args)) != m) return std::nullopt;
        return r;
    };

    if (def.kind == TheoryKind::Empty) {
        for (Term g : gamma)
            if (g == m) return Recipe{Context::hole(th), {g}};
        return std::nullopt;
    }

    std::int64_t lo = 0;
    std::int64_t hi = 1;
    if (def.kind == TheoryKind::ACOnly) hi = budget.coeff_bound;
    if (def.kind == TheoryKind::AbelianGroup) {
        lo = -budget.coeff_bound;
        hi = budget.coeff_bound;
    }
    std::vector<std::int64_t> coeffs(k, lo);
    for (;;) {
        const bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
        if (!(all_zero && def.kind == TheoryKind::ACOnly))
            if (auto r = attempt(coeffs)) return r;
        std::size_t j = 0;
        while (j < k && coeffs[j] == hi) coeffs[j++] = lo;
        if (j == k) break;
        ++coeffs[j];
    }
    return std::nullopt;
}

} // namespace deduce
