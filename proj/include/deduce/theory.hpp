#pragma once

// Built-in equational theories: normal forms, variable abstraction and
// elementary deduction (applicability of the id rule) with checkable recipes.

#include "deduce/term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace deduce {

/// M↓ with respect to every declared theory. Idempotent; memoized in the bank.
Term normalize(TermBank& bank, Term t);
bool is_normal(TermBank& bank, Term t);

/// Assigns one abstraction variable per normal form (v_E). Also memoizes
/// abstractions per (theory, term). Not thread-safe; one per session.
class VarAssignment {
public:
    /// The variable standing for `t`'s equivalence class.
    Term variable_for(TermBank& bank, Term t);
    std::size_t size() const { return vars_.size(); }

private:
    friend Term abstract(TermBank&, Term, TheoryId, VarAssignment&);
    std::unordered_map<Term, Term> vars_;
    std::map<std::pair<std::size_t, Term>, Term> memo_;
};

/// F_{E_i}(t): keeps names, recurses through the symbols of theory `th` and
/// replaces every other subterm by the variable of its class. `t` should be
/// a quasi-term of `th` (every alien subterm normal).
Term abstract(TermBank& bank, Term t, TheoryId th, VarAssignment& va);

/// A witness for the id rule: `context` filled with `hole_args` (members of
/// Γ, with repetition) equals the goal modulo the theories.
struct Recipe {
    Context context;
    std::vector<Term> hole_args;
};

struct ElementaryStats {
    std::size_t calls = 0;
    std::size_t hits = 0;
    std::size_t max_recipe_size = 0;
};

/// Γ ⊩_{E_th} m. Γ and m must be in normal form.
std::optional<Recipe> elem_deduce(TermBank& bank, std::span<const Term> gamma, Term m, TheoryId th, VarAssignment& va,
                                  ElementaryStats* stats = nullptr);

/// hole_args ⊆ Γ and (context filled with hole_args)↓ ≡ m.
bool verify_recipe(TermBank& bank, const Recipe& r, std::span<const Term> gamma, Term m);

// ---------------------------------------------------------------------------
// exposed for tests

/// Exponent vector of a pure abelian-group or AC normal form over its atoms.
std::map<Term, std::int64_t> exponents(const TermBank& bank, Term pure_normal, TheoryId th);

/// Integer solution of A·x = b (A given column-wise), or nullopt if none.
std::optional<std::vector<std::int64_t>> solve_integer_system(const std::vector<std::vector<std::int64_t>>& columns,
                                                              const std::vector<std::int64_t>& rhs);

/// 0/1 solution over GF(2) of Σ x_j·columns_j = rhs, or nullopt.
std::optional<std::vector<bool>> solve_gf2(const std::vector<std::vector<bool>>& columns, const std::vector<bool>& rhs);

/// Non-negative integer combination (not all zero) of columns equal to rhs.
std::optional<std::vector<std::int64_t>> solve_multiset_union(const std::vector<std::vector<std::int64_t>>& columns,
                                                              const std::vector<std::int64_t>& rhs);

/// Builds the recipe Σ coeff_j · gamma_j in theory `th`: positive
/// coefficients repeat the hole, negative ones sit under the inverse.
/// An all-zero vector yields the zero constant.
std::optional<Recipe> recipe_from_coefficients(const Signature& sig, TheoryId th, std::span<const Term> gamma,
                                               std::span<const std::int64_t> coeffs);

} // namespace deduce
