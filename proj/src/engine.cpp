#include "deduce/engine.hpp"

#include <algorithm>
#include <chrono>

namespace deduce {

std::string_view rule_name(Rule r)
{
    switch (r) {
    case Rule::Id: return "id";
    case Rule::PairL: return "p_L";
    case Rule::PairR: return "p_R";
    case Rule::EncL: return "e_L";
    case Rule::EncR: return "e_R";
    case Rule::SignL: return "sign_L";
    case Rule::SignR: return "sign_R";
    case Rule::BlindL1: return "blind_L1";
    case Rule::BlindL2: return "blind_L2";
    case Rule::BlindR: return "blind_R";
    case Rule::Gs: return "gs";
    case Rule::Cs: return "cs";
    }
    return "?";
}

std::optional<Rule> parse_rule(std::string_view name)
{
    for (auto r : {Rule::Id, Rule::PairL, Rule::PairR, Rule::EncL, Rule::EncR, Rule::SignL, Rule::SignR,
                   Rule::BlindL1, Rule::BlindL2, Rule::BlindR, Rule::Gs, Rule::Cs})
        if (rule_name(r) == name) return r;
    return std::nullopt;
}

std::string_view linear_rule_name(LinearRule r)
{
    switch (r) {
    case LinearRule::Lp: return "lp";
    case LinearRule::Le: return "le";
    case LinearRule::Sign: return "sign";
    case LinearRule::Blind1: return "blind1";
    case LinearRule::Blind2: return "blind2";
    case LinearRule::Ls: return "ls";
    case LinearRule::Lcs: return "lcs";
    }
    return "?";
}

std::size_t Proof::node_count() const
{
    std::size_t n = 1;
    for (const auto& p : premises) n += p.node_count();
    return n;
}

namespace {

Rule sequent_rule(LinearRule r)
{
    switch (r) {
    case LinearRule::Lp: return Rule::PairL;
    case LinearRule::Le: return Rule::EncL;
    case LinearRule::Sign: return Rule::SignL;
    case LinearRule::Blind1: return Rule::BlindL1;
    case LinearRule::Blind2: return Rule::BlindL2;
    case LinearRule::Ls: return Rule::Gs;
    case LinearRule::Lcs: return Rule::Cs;
    }
    return Rule::Gs;
}

Rule right_rule(Ctor c)
{
    switch (c) {
    case Ctor::Pair: return Rule::PairR;
    case Ctor::Enc: return Rule::EncR;
    case Ctor::Sign: return Rule::SignR;
    case Ctor::Blind: return Rule::BlindR;
    case Ctor::Pub: break;
    }
    throw InvariantViolation("pub has no right rule");
}

} // namespace

// ---------------------------------------------------------------------------
// right rules and id

std::optional<Recipe> Prover::elementary(const TermSet& gamma, Term goal)
{
    for (std::size_t th = 0; th < bank_.signature().size(); ++th)
        if (auto r = elem_deduce(bank_, gamma.view(), goal, theory_id(th), va_, &elem_stats_)) return r;
    return std::nullopt;
}

bool Prover::derivable(Frame& f, Term goal)
{
    if (auto it = f.memo.find(goal); it != f.memo.end()) return it->second;
    bool ok = elementary(f.delta, goal).has_value();
    if (!ok) {
        const Node n = bank_.node(goal);
        if (n.kind == HeadKind::Ctor && n.ctor != Ctor::Pub)
            ok = derivable(f, n.children[0]) && derivable(f, n.children[1]);
    }
    f.memo[goal] = ok;
    return ok;
}

Proof Prover::build_right(const TermSet& gamma, Term goal)
{
    Proof p;
    p.conclusion = Sequent{gamma, goal};
    if (auto r = elementary(gamma, goal)) {
        p.rule = Rule::Id;
        p.recipe = std::move(*r);
        return p;
    }
    const Node n = bank_.node(goal);
    if (n.kind != HeadKind::Ctor || n.ctor == Ctor::Pub)
        throw InvariantViolation("no right-rule derivation of " + to_string(bank_, goal));
    p.rule = right_rule(n.ctor);
    p.premises.push_back(build_right(gamma, n.children[0]));
    p.premises.push_back(build_right(gamma, n.children[1]));
    return p;
}

std::optional<Proof> Prover::right_prove(const Sequent& s)
{
    Frame f = make_frame(s);
    if (!derivable(f, s.goal)) return std::nullopt;
    return build_right(s.gamma, s.goal);
}

// ---------------------------------------------------------------------------
// left rules

Prover::Frame Prover::make_frame(const Sequent& s)
{
    Frame f{s.gamma, s.goal, {}, {}, {}};
    std::vector<Term> all(s.gamma.begin(), s.gamma.end());
    all.push_back(s.goal);
    f.delta_subterms = subterms(bank_, all);
    if (bank_.signature().size() > 1)
        for (Term t : all) f.cross.insert_all(cross_theory_subterms(bank_, t).view());
    return f;
}

void Prover::grow(Frame& f, const std::vector<Term>& added)
{
    f.delta.insert_all(added);
    for (Term t : added) {
        if (f.delta_subterms.contains(t)) continue;
        f.delta_subterms.insert_all(subterms(bank_, t).view());
        if (bank_.signature().size() > 1) f.cross.insert_all(cross_theory_subterms(bank_, t).view());
    }
    // Positive answers survive growth of Δ; negative ones do not.
    std::erase_if(f.memo, [](const auto& kv) { return !kv.second; });
}

std::optional<Prover::Step> Prover::try_rule(Frame& f, Term principal, LinearRule rule)
{
    const Node n = bank_.node(principal);
    Step step{rule, principal, std::nullopt, std::nullopt, {}, {}};
    auto fresh = [&](std::initializer_list<Term> ts) {
        for (Term t : ts)
            if (!f.delta.contains(t) && std::find(step.added.begin(), step.added.end(), t) == step.added.end())
                step.added.push_back(t);
        return !step.added.empty();
    };
    auto is_ctor = [](const Node& x, Ctor c) { return x.kind == HeadKind::Ctor && x.ctor == c; };

    switch (rule) {
    case LinearRule::Lp:
        if (!f.delta.contains(principal) || !is_ctor(n, Ctor::Pair)) return std::nullopt;
        if (!fresh({n.children[0], n.children[1]})) return std::nullopt;
        break;
    case LinearRule::Le:
    case LinearRule::Blind1: {
        if (!f.delta.contains(principal) || !is_ctor(n, rule == LinearRule::Le ? Ctor::Enc : Ctor::Blind))
            return std::nullopt;
        if (!fresh({n.children[0], n.children[1]})) return std::nullopt;
        if (!derivable(f, n.children[1])) return std::nullopt;
        step.side_goal = n.children[1];
        break;
    }
    case LinearRule::Sign: {
        if (!f.delta.contains(principal) || !is_ctor(n, Ctor::Sign)) return std::nullopt;
        const Term key[1] = {n.children[1]};
        auto pub = bank_.find_ctor(Ctor::Pub, key);
        if (!pub || !f.delta.contains(*pub)) return std::nullopt;
        if (!fresh({n.children[0]})) return std::nullopt;
        step.pub_key = *pub;
        break;
    }
    case LinearRule::Blind2: {
        if (!f.delta.contains(principal) || !is_ctor(n, Ctor::Sign)) return std::nullopt;
        const Node inner = bank_.node(n.children[0]);
        if (!is_ctor(inner, Ctor::Blind)) return std::nullopt;
        const Term unblinded = bank_.sign(inner.children[0], n.children[1]);
        const Term r = inner.children[1];
        if (!fresh({unblinded, r})) return std::nullopt;
        if (!derivable(f, r)) return std::nullopt;
        step.side_goal = r;
        break;
    }
    case LinearRule::Ls:
    case LinearRule::Lcs: {
        if (f.delta.contains(principal)) return std::nullopt;
        if (rule == LinearRule::Ls && !(is_guarded(bank_, principal) && f.delta_subterms.contains(principal)))
            return std::nullopt;
        if (rule == LinearRule::Lcs && !f.cross.contains(principal)) return std::nullopt;
        if (!derivable(f, principal)) return std::nullopt;
        step.added.push_back(principal);
        step.side_goal = principal;
        break;
    }
    }
    step.before = f.delta;
    return step;
}

std::optional<Sequent> Prover::applicable(Term principal, LinearRule rule, const Sequent& s)
{
    Frame f = make_frame(s);
    auto step = try_rule(f, principal, rule);
    if (!step) return std::nullopt;
    Sequent premise = s;
    premise.gamma.insert_all(step->added);
    return premise;
}

// ---------------------------------------------------------------------------
// search

Decision Prover::linear_search(const Sequent& s)
{
    const auto start = std::chrono::steady_clock::now();
    const std::size_t calls_before = elem_stats_.calls;

    Decision d;
    const SaturatedSet st = saturate(bank_, s.gamma, s.goal);
    const std::size_t n = st.members.size();
    d.stats.saturated_size = n;

    Frame f = make_frame(s);
    std::vector<Step> steps;
    bool found = false;
    for (std::size_t j = 1; j <= n + 1; ++j) {
        d.stats.iterations = j;
        if (derivable(f, s.goal)) {
            found = true;
            break;
        }
        if (j > n) break;
        // Candidate principals: Δ ∪ st(Δ ∪ {M}); both lie inside St.
        std::vector<Term> candidates;
        std::set_union(f.delta.begin(), f.delta.end(), f.delta_subterms.begin(), f.delta_subterms.end(),
                       std::back_inserter(candidates));
        bool grew = false;
        for (Term principal : candidates) {
            for (LinearRule rule : kSweepOrder) {
                if (auto step = try_rule(f, principal, rule)) {
                    grow(f, step->added);
                    steps.push_back(std::move(*step));
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }

    d.stats.linear_steps = steps.size();
    d.explored = f.delta;
    if (found) {
        Proof top = build_right(f.delta, s.goal);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            Proof node;
            node.rule = sequent_rule(it->rule);
            node.conclusion = Sequent{it->before, s.goal};
            node.principal = it->principal;
            node.pub_key = it->pub_key;
            if (it->side_goal) node.premises.push_back(build_right(it->before, *it->side_goal));
            node.premises.push_back(std::move(top));
            top = std::move(node);
        }
        d.provable = true;
        d.proof = std::move(top);
    }
    d.stats.elementary_calls = elem_stats_.calls - calls_before;
    d.stats.max_recipe_size = elem_stats_.max_recipe_size;
    d.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return d;
}

Decision decide(TermBank& bank, std::span<const Term> gamma, Term goal)
{
    std::vector<Term> normal;
    normal.reserve(gamma.size());
    for (Term g : gamma) normal.push_back(normalize(bank, g));
    const Sequent s{TermSet(std::move(normal)), normalize(bank, goal)};
    Decision d = Prover(bank).linear_search(s);
    if (d.provable) {
        auto verdict = check_proof(bank, *d.proof, s);
        if (!verdict)
            throw InvariantViolation("checker rejected the search's own proof at [" + verdict.path +
                                     "]: " + verdict.reason);
    }
    return d;
}

Decision decide(TermBank& bank, std::span<const RawTerm> gamma, const RawTerm& goal)
{
    std::vector<Term> terms;
    terms.reserve(gamma.size());
    for (const auto& g : gamma) terms.push_back(bank.intern(g));
    Term m = bank.intern(goal);
    return decide(bank, terms, m);
}

} // namespace deduce
