#pragma once

// Decision procedure for Γ ⊢ M.
//
// Search runs in the linear system: starting from Δ = Γ it repeatedly checks
// whether Δ ⊢ M holds by right rules and id alone, and otherwise applies every
// applicable (principal term, left rule) pair to grow Δ. Left rules only ever
// add terms from the saturated set St(Γ ∪ {M}), so at most |St| rounds are
// needed. A successful search is expanded into a cut-free sequent proof that
// check_proof validates without reference to the search.

#include "deduce/term.hpp"
#include "deduce/theory.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace deduce {

/// Raised when the engine contradicts itself (e.g. the checker rejects a proof
/// the search produced).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Rule : std::uint8_t { Id, PairL, PairR, EncL, EncR, SignL, SignR, BlindL1, BlindL2, BlindR, Gs, Cs };

std::string_view rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view name);

struct Sequent {
    TermSet gamma;
    Term goal;

    friend bool operator==(const Sequent&, const Sequent&) = default;
};

/// A node of a sequent-calculus derivation. `recipe` is set for id,
/// `principal` for left rules and for gs/cs (the abstracted term),
/// `pub_key` for sign_L.
struct Proof {
    Rule rule = Rule::Id;
    Sequent conclusion;
    std::vector<Proof> premises;
    std::optional<Recipe> recipe;
    std::optional<Term> principal;
    std::optional<Term> pub_key;

    std::size_t node_count() const;
};

/// Left rules of the linear system, in sweep order.
enum class LinearRule : std::uint8_t { Lp, Le, Sign, Blind1, Blind2, Ls, Lcs };

inline constexpr std::array<LinearRule, 7> kSweepOrder = {LinearRule::Lp,     LinearRule::Le,     LinearRule::Sign,
                                                          LinearRule::Blind1, LinearRule::Blind2, LinearRule::Ls,
                                                          LinearRule::Lcs};

std::string_view linear_rule_name(LinearRule r);

struct SearchStats {
    std::size_t iterations = 0;
    std::size_t saturated_size = 0;
    std::size_t linear_steps = 0;
    std::size_t elementary_calls = 0;
    std::size_t max_recipe_size = 0;
    double wall_ms = 0.0;
};

struct Decision {
    bool provable = false;
    std::optional<Proof> proof;
    SearchStats stats;
    /// Hypotheses when the search stopped. Δ only grows, so every sequent
    /// visited has its hypotheses inside this set.
    TermSet explored;
};

class Prover {
public:
    explicit Prover(TermBank& bank) : bank_(bank) {}

    /// Γ ⊩ M using only right rules and id (one id_{E_i} attempt per theory).
    std::optional<Proof> right_prove(const Sequent& s);

    /// The unique premise of `rule` applied to `principal` on `s`, if the
    /// pair is applicable and strictly grows Γ.
    std::optional<Sequent> applicable(Term principal, LinearRule rule, const Sequent& s);

    Decision linear_search(const Sequent& s);

    const ElementaryStats& elementary_stats() const { return elem_stats_; }

private:
    struct Frame {
        TermSet delta;
        Term goal;
        TermSet delta_subterms;  // st(Δ ∪ {M})
        TermSet cross;           // cross-theory subterms of Δ ∪ {M}
        std::unordered_map<Term, bool> memo;
    };
    struct Step {
        LinearRule rule;
        Term principal;
        std::optional<Term> pub_key;
        std::optional<Term> side_goal;
        std::vector<Term> added;
        TermSet before;
    };

    Frame make_frame(const Sequent& s);
    void grow(Frame& f, const std::vector<Term>& added);
    bool derivable(Frame& f, Term goal);
    std::optional<Step> try_rule(Frame& f, Term principal, LinearRule rule);
    std::optional<Recipe> elementary(const TermSet& gamma, Term goal);
    Proof build_right(const TermSet& gamma, Term goal);

    TermBank& bank_;
    VarAssignment va_;
    ElementaryStats elem_stats_;
};

inline std::optional<Proof> right_prove(TermBank& bank, const Sequent& s) { return Prover(bank).right_prove(s); }
inline std::optional<Sequent> applicable(TermBank& bank, Term principal, LinearRule rule, const Sequent& s)
{
    return Prover(bank).applicable(principal, rule, s);
}
inline Decision linear_search(TermBank& bank, const Sequent& s) { return Prover(bank).linear_search(s); }

struct CheckResult {
    bool accepted = true;
    std::string path;    ///< premise indices from the root, e.g. "0.1"
    std::string reason;

    explicit operator bool() const { return accepted; }
};

/// Validates every node of `p` as an instance of its sequent rule, with all
/// side conditions recomputed, and that its root concludes `s`.
CheckResult check_proof(TermBank& bank, const Proof& p, const Sequent& s);

/// Normalizes Γ and M, searches, and checks the resulting proof. Throws
/// InvariantViolation if the checker rejects it.
Decision decide(TermBank& bank, std::span<const Term> gamma, Term goal);
Decision decide(TermBank& bank, std::span<const RawTerm> gamma, const RawTerm& goal);

} // namespace deduce
