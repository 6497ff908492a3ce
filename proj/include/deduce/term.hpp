#pragma once

// Hash-consed ground messages.
//
// Every term lives in a TermBank and is addressed by a Term handle. Nodes of
// an associative-commutative operator are flattened and their children sorted
// by handle when interned, so two terms are equal modulo AC exactly when their
// handles are equal.
//
// A TermBank is a single-owner object: it is not safe to intern from several
// threads at once. Terms are immutable once interned and may be read from
// anywhere while no thread is interning.

#include "deduce/signature.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace deduce {

struct Term {
    std::uint32_t id = 0;

    auto operator<=>(const Term&) const = default;
};

enum class Ctor : std::uint8_t { Pub, Sign, Blind, Pair, Enc };

constexpr int ctor_arity(Ctor c) { return c == Ctor::Pub ? 1 : 2; }
std::string_view ctor_name(Ctor c);
std::optional<Ctor> parse_ctor(std::string_view name);

enum class HeadKind : std::uint8_t { Name, Var, Ctor, Symbol, AC };

struct Node {
    HeadKind kind = HeadKind::Name;
    Ctor ctor = Ctor::Pub;
    TheoryId theory{};
    std::uint16_t symbol = 0;
    std::uint32_t atom = 0;
    std::vector<Term> children;
    std::uint32_t size = 1;
};

/// An uninterned term tree. `head` is a name, a constructor name or a
/// declared theory symbol.
struct RawTerm {
    std::string head;
    std::vector<RawTerm> args;
};

} // namespace deduce

template <>
struct std::hash<deduce::Term> {
    std::size_t operator()(deduce::Term t) const noexcept { return std::hash<std::uint32_t>{}(t.id); }
};

namespace deduce {

/// Sorted, duplicate-free set of terms ordered by handle.
class TermSet {
public:
    TermSet() = default;
    explicit TermSet(std::vector<Term> terms);
    TermSet(std::initializer_list<Term> terms) : TermSet(std::vector<Term>(terms)) {}

    bool contains(Term t) const;
    bool insert(Term t);
    /// Inserts every term of `ts`; returns the number actually added.
    std::size_t insert_all(std::span<const Term> ts);
    bool includes(const TermSet& other) const;

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    std::span<const Term> view() const { return items_; }
    const std::vector<Term>& items() const { return items_; }

    friend bool operator==(const TermSet&, const TermSet&) = default;

private:
    std::vector<Term> items_;
};

class TermBank {
public:
    explicit TermBank(Signature sig = Signature{});

    TermBank(const TermBank&) = delete;
    TermBank& operator=(const TermBank&) = delete;

    const Signature& signature() const { return sig_; }

    Term name(std::string_view n);
    Term var(std::uint32_t index);
    Term fresh_var() { return var(next_var_++); }

    Term ctor(Ctor c, std::span<const Term> args);
    Term pub(Term k) { return ctor(Ctor::Pub, std::span<const Term>(&k, 1)); }
    Term sign(Term m, Term k) { return binary(Ctor::Sign, m, k); }
    Term blind(Term m, Term r) { return binary(Ctor::Blind, m, r); }
    Term pair(Term m, Term n) { return binary(Ctor::Pair, m, n); }
    Term enc(Term m, Term k) { return binary(Ctor::Enc, m, k); }

    /// Applies a theory symbol. The AC symbol takes two or more arguments and
    /// yields a flattened, sorted node.
    Term symbol(TheoryId th, std::uint16_t sym, std::span<const Term> args);
    /// Builds the AC sum of `summands` for theory `th` (at least one summand;
    /// a single summand is returned unchanged).
    Term ac(TheoryId th, std::vector<Term> summands);

    /// Lookup without interning.
    std::optional<Term> find_ctor(Ctor c, std::span<const Term> args) const;

    /// Interns a raw description. Throws TermError on arity mismatch,
    /// undeclared symbols and variables.
    Term intern(const RawTerm& raw);

    const Node& node(Term t) const { return nodes_[t.id]; }
    std::size_t term_count() const { return nodes_.size(); }
    std::string_view name_of(Term t) const;
    std::uint32_t size_of(Term t) const { return nodes_[t.id].size; }

    /// Normal-form memo owned by the bank; filled by normalize().
    std::unordered_map<Term, Term>& normal_cache() { return normal_cache_; }

private:
    struct Key {
        HeadKind kind;
        Ctor ctor;
        TheoryId theory;
        std::uint16_t symbol;
        std::uint32_t atom;
        std::vector<Term> children;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    Term binary(Ctor c, Term a, Term b)
    {
        const Term args[2] = {a, b};
        return ctor(c, args);
    }
    Term insert(Key key);

    Signature sig_;
    std::vector<Node> nodes_;
    std::unordered_map<Key, Term, KeyHash> index_;
    std::unordered_map<std::string, std::uint32_t> name_index_;
    std::vector<std::string> names_;
    std::uint32_t next_var_ = 0;
    std::unordered_map<Term, Term> normal_cache_;
};

/// Equality modulo associativity and commutativity of every declared AC
/// operator.
inline bool ac_equal(Term s, Term t) { return s == t; }

std::string to_string(const TermBank& bank, Term t);
std::string to_string(const TermBank& bank, std::span<const Term> ts);

struct Classification {
    bool guarded = false;
    HeadKind kind = HeadKind::Name;
    std::optional<TheoryId> head_theory;
    std::vector<bool> alien;  ///< per theory: headed by a symbol outside it
    std::vector<bool> pure;   ///< per theory: only its symbols, names, variables

    bool alien_for(TheoryId th) const { return alien.at(index(th)); }
    bool pure_for(TheoryId th) const { return pure.at(index(th)); }
};

Classification classify(const TermBank& bank, Term t);
bool is_guarded(const TermBank& bank, Term t);
std::optional<TheoryId> head_theory(const TermBank& bank, Term t);

/// st(t): t and all its subterms.
TermSet subterms(const TermBank& bank, Term t);
TermSet subterms(const TermBank& bank, std::span<const Term> ts);
/// pst: subterms of some member that differ from that member.
TermSet proper_subterms(const TermBank& bank, std::span<const Term> ts);

struct SaturatedSet {
    TermSet members;
    TermSet gamma;
    Term goal;
};

/// St(Γ ∪ {m}) = Δ ∪ pst(Δ) ∪ { sign(x,y) | x,y ∈ pst(Δ) } with Δ = Γ ∪ {m}.
SaturatedSet saturate(TermBank& bank, const TermSet& gamma, Term m);

/// Subterms headed in one theory that sit directly under a symbol of another.
TermSet cross_theory_subterms(const TermBank& bank, Term t);

/// A context over the symbols of one theory. Holes are numbered by their
/// position in a left-to-right traversal.
struct Context {
    enum class Kind : std::uint8_t { Hole, Symbol };
    struct Node {
        Kind kind = Kind::Hole;
        std::uint16_t symbol = 0;
        std::vector<Node> children;
    };

    TheoryId theory{};
    Node root;

    static Context hole(TheoryId th) { return Context{th, Node{}}; }
    std::size_t hole_count() const;
    std::size_t size() const;
};

/// Checks that every symbol of the context belongs to its theory with the
/// right arity.
bool well_formed(const Signature& sig, const Context& c);

Term apply_context(TermBank& bank, const Context& c, std::span<const Term> fills);

std::string to_string(const Signature& sig, const Context& c);

/// Reads a context back out of `t` by turning every occurrence of a term in
/// `holes` into a hole. Returns the context and the hole fillings in hole
/// order, or nullopt if `t` uses a symbol outside theory `th` elsewhere.
std::optional<std::pair<Context, std::vector<Term>>> extract_context(const TermBank& bank, Term t, TheoryId th,
                                                                     const TermSet& holes);

} // namespace deduce
