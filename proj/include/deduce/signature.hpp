#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace deduce {

/// Error raised for malformed terms: unknown symbols, arity mismatches,
/// non-ground input, inconsistent theory declarations.
class TermError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TheoryId : std::uint8_t {};

constexpr std::size_t index(TheoryId id) { return static_cast<std::size_t>(id); }
constexpr TheoryId theory_id(std::size_t i) { return static_cast<TheoryId>(i); }

enum class TheoryKind : std::uint8_t { Empty, ACOnly, Xor, AbelianGroup };

enum class SymbolRole : std::uint8_t { Plus, Zero, Inverse };

struct SymbolDecl {
    std::string name;
    int arity = 0;
    SymbolRole role = SymbolRole::Plus;
};

/// One equational theory of the catalog. Symbols are positional per kind:
///   ac    : plus
///   xor   : plus zero
///   ag    : plus inverse zero
///   empty : (none)
struct TheoryDef {
    std::string name;
    TheoryKind kind = TheoryKind::Empty;
    std::vector<SymbolDecl> symbols;

    /// Builds a theory with the given symbol names, falling back to the
    /// defaults `+`, `I`, `0` for any name not supplied.
    static TheoryDef make(std::string name, TheoryKind kind,
                          const std::vector<std::string>& symbol_names = {});

    std::optional<std::uint16_t> find_role(SymbolRole role) const;
    std::optional<std::uint16_t> plus() const { return find_role(SymbolRole::Plus); }
    std::optional<std::uint16_t> zero() const { return find_role(SymbolRole::Zero); }
    std::optional<std::uint16_t> inverse() const { return find_role(SymbolRole::Inverse); }
};

std::string_view kind_name(TheoryKind kind);
std::optional<TheoryKind> parse_kind(std::string_view text);

/// Reserved constructor names, in the order of the Ctor enum.
bool is_constructor_name(std::string_view name);

struct SymbolRef {
    TheoryId theory;
    std::uint16_t symbol;
};

/// The set of declared theories. Symbol names are pairwise distinct across
/// theories and disjoint from the constructor names.
class Signature {
public:
    Signature();
    explicit Signature(std::vector<TheoryDef> theories);

    std::size_t size() const { return theories_.size(); }
    const TheoryDef& theory(TheoryId id) const { return theories_.at(index(id)); }
    const std::vector<TheoryDef>& theories() const { return theories_; }

    std::optional<SymbolRef> lookup_symbol(std::string_view name) const;
    std::optional<TheoryId> find_theory(std::string_view name) const;

    const SymbolDecl& symbol(SymbolRef ref) const
    {
        return theory(ref.theory).symbols.at(ref.symbol);
    }

private:
    std::vector<TheoryDef> theories_;
    std::unordered_map<std::string, SymbolRef> symbols_;
};

} // namespace deduce
