#include "deduce/engine.hpp"

namespace deduce {

namespace {

class Checker {
public:
    explicit Checker(TermBank& bank) : bank_(bank) {}

    CheckResult run(const Proof& p, const Sequent& expected)
    {
        check(p, expected, "");
        return result_;
    }

private:
    bool reject(const std::string& path, std::string reason)
    {
        if (result_.accepted) result_ = CheckResult{false, path.empty() ? "root" : path, std::move(reason)};
        return false;
    }

    bool is_ctor(Term t, Ctor c) const
    {
        const Node& n = bank_.node(t);
        return n.kind == HeadKind::Ctor && n.ctor == c;
    }

    bool premises(const Proof& p, const std::string& path, std::initializer_list<Sequent> expected)
    {
        if (p.premises.size() != expected.size())
            return reject(path, std::string(rule_name(p.rule)) + " expects " + std::to_string(expected.size()) +
                                    " premise(s), found " + std::to_string(p.premises.size()));
        std::size_t i = 0;
        for (const auto& e : expected) {
            std::string sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
            if (!check(p.premises[i], e, sub)) return false;
            ++i;
        }
        return true;
    }

    Sequent extend(const Sequent& s, std::initializer_list<Term> ts) const
    {
        Sequent out = s;
        for (Term t : ts) out.gamma.insert(t);
        return out;
    }

    std::optional<Term> principal_in_gamma(const Proof& p, const std::string& path, Ctor c)
    {
        if (!p.principal) {
            reject(path, std::string(rule_name(p.rule)) + " without principal term");
            return std::nullopt;
        }
        if (!p.conclusion.gamma.contains(*p.principal)) {
            reject(path, "principal " + to_string(bank_, *p.principal) + " is not a hypothesis");
            return std::nullopt;
        }
        if (!is_ctor(*p.principal, c)) {
            reject(path, "principal " + to_string(bank_, *p.principal) + " has the wrong shape for " +
                             std::string(rule_name(p.rule)));
            return std::nullopt;
        }
        return p.principal;
    }

    bool check(const Proof& p, const Sequent& expected, const std::string& path)
    {
        const Sequent& s = p.conclusion;
        if (!(s == expected)) return reject(path, "conclusion does not match the expected sequent");
        for (Term t : s.gamma)
            if (!is_normal(bank_, t)) return reject(path, "hypothesis " + to_string(bank_, t) + " is not normal");
        if (!is_normal(bank_, s.goal)) return reject(path, "goal is not normal");

        const Node goal = bank_.node(s.goal);
        switch (p.rule) {
        case Rule::Id:
            if (!p.premises.empty()) return reject(path, "id has premises");
            if (!p.recipe) return reject(path, "id without recipe");
            if (!verify_recipe(bank_, *p.recipe, s.gamma.view(), s.goal)) return reject(path, "id recipe fails");
            return true;

        case Rule::PairR:
        case Rule::EncR:
        case Rule::SignR:
        case Rule::BlindR: {
            const Ctor want = p.rule == Rule::PairR  ? Ctor::Pair
                              : p.rule == Rule::EncR ? Ctor::Enc
                              : p.rule == Rule::SignR ? Ctor::Sign
                                                      : Ctor::Blind;
            if (!is_ctor(s.goal, want)) return reject(path, "goal does not match " + std::string(rule_name(p.rule)));
            return premises(p, path, {Sequent{s.gamma, goal.children[0]}, Sequent{s.gamma, goal.children[1]}});
        }

        case Rule::PairL: {
            auto pr = principal_in_gamma(p, path, Ctor::Pair);
            if (!pr) return false;
            const Node n = bank_.node(*pr);
            return premises(p, path, {extend(s, {n.children[0], n.children[1]})});
        }
        case Rule::EncL:
        case Rule::BlindL1: {
            auto pr = principal_in_gamma(p, path, p.rule == Rule::EncL ? Ctor::Enc : Ctor::Blind);
            if (!pr) return false;
            const Node n = bank_.node(*pr);
            return premises(p, path, {Sequent{s.gamma, n.children[1]}, extend(s, {n.children[0], n.children[1]})});
        }
        case Rule::SignL: {
            auto pr = principal_in_gamma(p, path, Ctor::Sign);
            if (!pr) return false;
            if (!p.pub_key || !s.gamma.contains(*p.pub_key) || !is_ctor(*p.pub_key, Ctor::Pub))
                return reject(path, "sign_L needs a public key among the hypotheses");
            const Node n = bank_.node(*pr);
            if (!ac_equal(bank_.node(*p.pub_key).children[0], n.children[1]))
                return reject(path, "sign_L key mismatch");
            return premises(p, path, {extend(s, {n.children[0]})});
        }
        case Rule::BlindL2: {
            auto pr = principal_in_gamma(p, path, Ctor::Sign);
            if (!pr) return false;
            const Node n = bank_.node(*pr);
            if (!is_ctor(n.children[0], Ctor::Blind)) return reject(path, "blind_L2 principal is not sign(blind(_,_),_)");
            const Node inner = bank_.node(n.children[0]);
            const Term unblinded = bank_.sign(inner.children[0], n.children[1]);
            return premises(p, path, {Sequent{s.gamma, inner.children[1]}, extend(s, {unblinded, inner.children[1]})});
        }
        case Rule::Gs:
        case Rule::Cs: {
            if (!p.principal) return reject(path, std::string(rule_name(p.rule)) + " without abstracted term");
            const Term a = *p.principal;
            std::vector<Term> all(s.gamma.begin(), s.gamma.end());
            all.push_back(s.goal);
            if (p.rule == Rule::Gs) {
                if (!is_guarded(bank_, a) || !subterms(bank_, all).contains(a))
                    return reject(path, "gs term " + to_string(bank_, a) + " is not a guarded subterm");
            } else {
                bool found = false;
                for (Term t : all) found = found || cross_theory_subterms(bank_, t).contains(a);
                if (!found) return reject(path, "cs term " + to_string(bank_, a) + " is not a cross-theory subterm");
            }
            return premises(p, path, {Sequent{s.gamma, a}, extend(s, {a})});
        }
        }
        return reject(path, "unknown rule");
    }

    TermBank& bank_;
    CheckResult result_;
};

} // namespace

CheckResult check_proof(TermBank& bank, const Proof& p, const Sequent& s) { return Checker(bank).run(p, s); }

} // namespace deduce
