#pragma once

// Brute-force reference procedures, deliberately naive. They share only the
// term bank and normalization with the engine and are used to cross-check it.

#include "deduce/term.hpp"
#include "deduce/theory.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace deduce {

/// Budget for the reference procedures. Defaults: depth 8, synthesized terms
/// of size at most 12, abelian-group coefficients in [-3, 3].
struct OracleBudget {
    std::size_t max_depth = 8;
    std::size_t max_term_size = 12;
    std::int64_t coeff_bound = 3;
    /// Theory-symbol synthesis stops once this many terms are known.
    std::size_t max_closure = 20000;
};

/// Bounded search can only confirm derivability, never refute it.
enum class OracleVerdict { Provable, Unknown };

/// Forward closure of Γ under the natural-deduction rules (constructor
/// introduction and elimination, blind-signature rules, theory symbol
/// introduction, normalization in place of the equality rule).
/// Constructor introduction only builds subterms of Γ ∪ {m}.
OracleVerdict nd_prove(TermBank& bank, std::span<const Term> gamma, Term m, const OracleBudget& budget = {});

/// Exhaustive search for an elementary-deduction recipe: subsets (xor),
/// bounded multisets (ac) or bounded integer coefficients (ag) of Γ, each
/// candidate checked by normalize-and-compare.
std::optional<Recipe> elem_bruteforce(TermBank& bank, std::span<const Term> gamma, Term m, TheoryId th,
                                      const OracleBudget& budget = {});

} // namespace deduce
