#include "deduce/term.hpp"

#include <algorithm>
#include <cctype>

namespace deduce {

std::string_view ctor_name(Ctor c)
{
    switch (c) {
    case Ctor::Pub: return "pub";
    case Ctor::Sign: return "sign";
    case Ctor::Blind: return "blind";
    case Ctor::Pair: return "pair";
    case Ctor::Enc: return "enc";
    }
    return "?";
}

std::optional<Ctor> parse_ctor(std::string_view name)
{
    if (name == "pub") return Ctor::Pub;
    if (name == "sign") return Ctor::Sign;
    if (name == "blind") return Ctor::Blind;
    if (name == "pair") return Ctor::Pair;
    if (name == "enc") return Ctor::Enc;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// TermSet

TermSet::TermSet(std::vector<Term> terms) : items_(std::move(terms))
{
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool TermSet::contains(Term t) const { return std::binary_search(items_.begin(), items_.end(), t); }

bool TermSet::insert(Term t)
{
    auto it = std::lower_bound(items_.begin(), items_.end(), t);
    if (it != items_.end() && *it == t) return false;
    items_.insert(it, t);
    return true;
}

std::size_t TermSet::insert_all(std::span<const Term> ts)
{
    std::size_t added = 0;
    for (Term t : ts) added += insert(t) ? 1 : 0;
    return added;
}

bool TermSet::includes(const TermSet& other) const
{
    return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

// ---------------------------------------------------------------------------
// TermBank

std::size_t TermBank::KeyHash::operator()(const Key& k) const noexcept
{
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(k.ctor));
    mix(index(k.theory));
    mix(k.symbol);
    mix(k.atom);
    for (Term c : k.children) mix(c.id);
    return h;
}

TermBank::TermBank(Signature sig) : sig_(std::move(sig)) {}

Term TermBank::insert(Key key)
{
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    Node n;
    n.kind = key.kind;
    n.ctor = key.ctor;
    n.theory = key.theory;
    n.symbol = key.symbol;
    n.atom = key.atom;
    n.children = key.children;
    std::uint32_t size = 1;
    for (Term c : n.children) size += nodes_[c.id].size;
    if (n.kind == HeadKind::AC) size = size - 1 + static_cast<std::uint32_t>(n.children.size() - 1);
    n.size = size;
    Term t{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), t);
    return t;
}

Term TermBank::name(std::string_view n)
{
    auto [it, fresh] = name_index_.try_emplace(std::string(n), static_cast<std::uint32_t>(names_.size()));
    if (fresh) names_.emplace_back(n);
    return insert(Key{HeadKind::Name, Ctor::Pub, TheoryId{}, 0, it->second, {}});
}

Term TermBank::var(std::uint32_t index)
{
    next_var_ = std::max(next_var_, index + 1);
    return insert(Key{HeadKind::Var, Ctor::Pub, TheoryId{}, 0, index, {}});
}

Term TermBank::ctor(Ctor c, std::span<const Term> args)
{
    if (static_cast<int>(args.size()) != ctor_arity(c))
        throw TermError("constructor '" + std::string(ctor_name(c)) + "' expects " +
                        std::to_string(ctor_arity(c)) + " argument(s), got " + std::to_string(args.size()));
    return insert(Key{HeadKind::Ctor, c, TheoryId{}, 0, 0, {args.begin(), args.end()}});
}

std::optional<Term> TermBank::find_ctor(Ctor c, std::span<const Term> args) const
{
    auto it = index_.find(Key{HeadKind::Ctor, c, TheoryId{}, 0, 0, {args.begin(), args.end()}});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Term TermBank::symbol(TheoryId th, std::uint16_t sym, std::span<const Term> args)
{
    const auto& def = sig_.theory(th);
    const auto& decl = def.symbols.at(sym);
    if (decl.role == SymbolRole::Plus) {
        if (args.size() < 2)
            throw TermError("operator '" + decl.name + "' expects at least 2 arguments, got " +
                            std::to_string(args.size()));
        return ac(th, {args.begin(), args.end()});
    }
    if (static_cast<int>(args.size()) != decl.arity)
        throw TermError("symbol '" + decl.name + "' expects " + std::to_string(decl.arity) +
                        " argument(s), got " + std::to_string(args.size()));
    return insert(Key{HeadKind::Symbol, Ctor::Pub, th, sym, 0, {args.begin(), args.end()}});
}

Term TermBank::ac(TheoryId th, std::vector<Term> summands)
{
    if (summands.empty()) throw TermError("empty AC sum");
    auto plus = sig_.theory(th).plus();
    if (!plus) throw TermError("theory '" + sig_.theory(th).name + "' has no AC operator");
    std::vector<Term> flat;
    flat.reserve(summands.size());
    for (Term s : summands) {
        const Node& n = nodes_[s.id];
        if (n.kind == HeadKind::AC && n.theory == th)
            flat.insert(flat.end(), n.children.begin(), n.children.end());
        else
            flat.push_back(s);
    }
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end());
    return insert(Key{HeadKind::AC, Ctor::Pub, th, *plus, 0, std::move(flat)});
}

Term TermBank::intern(const RawTerm& raw)
{
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const auto& a : raw.args) args.push_back(intern(a));

    if (auto c = parse_ctor(raw.head)) return ctor(*c, args);
    if (auto ref = sig_.lookup_symbol(raw.head)) return symbol(ref->theory, ref->symbol, args);

    const std::string& h = raw.head;
    if (h.empty()) throw TermError("empty symbol");
    if (h.front() == '?' || std::isupper(static_cast<unsigned char>(h.front())))
        throw TermError("non-ground term: '" + h + "' is a variable");
    if (!std::islower(static_cast<unsigned char>(h.front())) || !raw.args.empty())
        throw TermError("undeclared symbol '" + h + "'");
    return name(h);
}

std::string_view TermBank::name_of(Term t) const
{
    const Node& n = nodes_[t.id];
    return n.kind == HeadKind::Name ? std::string_view(names_[n.atom]) : std::string_view{};
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print(const TermBank& bank, Term t, std::string& out)
{
    const Node& n = bank.node(t);
    const auto& sig = bank.signature();
    switch (n.kind) {
    case HeadKind::Name: out += bank.name_of(t); return;
    case HeadKind::Var:
        out += "?x";
        out += std::to_string(n.atom);
        return;
    case HeadKind::Ctor:
    case HeadKind::Symbol: {
        out += n.kind == HeadKind::Ctor ? std::string(ctor_name(n.ctor)) : sig.theory(n.theory).symbols[n.symbol].name;
        if (n.children.empty()) return;
        out += '(';
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += ',';
            print(bank, n.children[i], out);
        }
        out += ')';
        return;
    }
    case HeadKind::AC: {
        const std::string& op = sig.theory(n.theory).symbols[n.symbol].name;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += op;
            bool paren = bank.node(n.children[i]).kind == HeadKind::AC;
            if (paren) out += '(';
            print(bank, n.children[i], out);
            if (paren) out += ')';
        }
        return;
    }
    }
}

} // namespace

std::string to_string(const TermBank& bank, Term t)
{
    std::string out;
    print(bank, t, out);
    return out;
}

std::string to_string(const TermBank& bank, std::span<const Term> ts)
{
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ", ";
        print(bank, ts[i], out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// classification and subterms

std::optional<TheoryId> head_theory(const TermBank& bank, Term t)
{
    const Node& n = bank.node(t);
    if (n.kind == HeadKind::Symbol || n.kind == HeadKind::AC) return n.theory;
    return std::nullopt;
}

bool is_guarded(const TermBank& bank, Term t)
{
    auto k = bank.node(t).kind;
    return k == HeadKind::Name || k == HeadKind::Var || k == HeadKind::Ctor;
}

namespace {

bool pure_in(const TermBank& bank, Term t, TheoryId th)
{
    const Node& n = bank.node(t);
    switch (n.kind) {
    case HeadKind::Name:
    case HeadKind::Var: return true;
    case HeadKind::Ctor: return false;
    case HeadKind::Symbol:
    case HeadKind::AC:
        if (n.theory != th) return false;
        return std::all_of(n.children.begin(), n.children.end(), [&](Term c) { return pure_in(bank, c, th); });
    }
    return false;
}

} // namespace

Classification classify(const TermBank& bank, Term t)
{
    Classification c;
    const Node& n = bank.node(t);
    c.kind = n.kind;
    c.guarded = is_guarded(bank, t);
    c.head_theory = head_theory(bank, t);
    const std::size_t k = bank.signature().size();
    c.alien.resize(k);
    c.pure.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const bool symbol_headed = n.kind == HeadKind::Ctor || n.kind == HeadKind::Symbol || n.kind == HeadKind::AC;
        c.alien[i] = symbol_headed && c.head_theory != theory_id(i);
        c.pure[i] = pure_in(bank, t, theory_id(i));
    }
    return c;
}

namespace {

void collect_subterms(const TermBank& bank, Term t, std::vector<char>& seen, std::vector<Term>& out)
{
    if (seen[t.id]) return;
    seen[t.id] = 1;
    out.push_back(t);
    for (Term c : bank.node(t).children) collect_subterms(bank, c, seen, out);
}

} // namespace

TermSet subterms(const TermBank& bank, Term t) { return subterms(bank, std::span<const Term>(&t, 1)); }

TermSet subterms(const TermBank& bank, std::span<const Term> ts)
{
    std::vector<char> seen(bank.term_count(), 0);
    std::vector<Term> out;
    for (Term t : ts) collect_subterms(bank, t, seen, out);
    return TermSet(std::move(out));
}

TermSet proper_subterms(const TermBank& bank, std::span<const Term> ts)
{
    std::vector<char> seen(bank.term_count(), 0);
    std::vector<Term> out;
    for (Term t : ts)
        for (Term c : bank.node(t).children) collect_subterms(bank, c, seen, out);
    return TermSet(std::move(out));
}

SaturatedSet saturate(TermBank& bank, const TermSet& gamma, Term m)
{
    std::vector<Term> delta(gamma.begin(), gamma.end());
    delta.push_back(m);
    TermSet pst = proper_subterms(bank, delta);

    std::vector<Term> members = delta;
    members.insert(members.end(), pst.begin(), pst.end());
    members.reserve(members.size() + pst.size() * pst.size());
    for (Term x : pst)
        for (Term y : pst) members.push_back(bank.sign(x, y));
    return SaturatedSet{TermSet(std::move(members)), gamma, m};
}

TermSet cross_theory_subterms(const TermBank& bank, Term t)
{
    std::vector<Term> out;
    for (Term s : subterms(bank, t)) {
        auto outer = head_theory(bank, s);
        if (!outer) continue;
        for (Term c : bank.node(s).children) {
            auto inner = head_theory(bank, c);
            if (inner && *inner != *outer) out.push_back(c);
        }
    }
    return TermSet(std::move(out));
}

// ---------------------------------------------------------------------------
// contexts

namespace {

std::size_t count_holes(const Context::Node& n)
{
    if (n.kind == Context::Kind::Hole) return 1;
    std::size_t k = 0;
    for (const auto& c : n.children) k += count_holes(c);
    return k;
}

std::size_t count_size(const Context::Node& n)
{
    std::size_t k = 1;
    for (const auto& c : n.children) k += count_size(c);
    return k;
}

bool node_well_formed(const TheoryDef& def, const Context::Node& n)
{
    if (n.kind == Context::Kind::Hole) return n.children.empty();
    if (n.symbol >= def.symbols.size()) return false;
    const auto& decl = def.symbols[n.symbol];
    if (decl.role == SymbolRole::Plus ? n.children.size() < 2
                                      : static_cast<int>(n.children.size()) != decl.arity)
        return false;
    return std::all_of(n.children.begin(), n.children.end(),
                       [&](const Context::Node& c) { return node_well_formed(def, c); });
}

Term apply_node(TermBank& bank, TheoryId th, const Context::Node& n, std::span<const Term> fills, std::size_t& next)
{
    if (n.kind == Context::Kind::Hole) return fills[next++];
    std::vector<Term> args;
    args.reserve(n.children.size());
    for (const auto& c : n.children) args.push_back(apply_node(bank, th, c, fills, next));
    return bank.symbol(th, n.symbol, args);
}

void print_node(const TheoryDef& def, const Context::Node& n, std::size_t& next, std::string& out)
{
    if (n.kind == Context::Kind::Hole) {
        out += '[' + std::to_string(++next) + ']';
        return;
    }
    const auto& decl = def.symbols.at(n.symbol);
    if (decl.role == SymbolRole::Plus) {
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += decl.name;
            bool paren = n.children[i].kind == Context::Kind::Symbol &&
                         def.symbols.at(n.children[i].symbol).role == SymbolRole::Plus;
            if (paren) out += '(';
            print_node(def, n.children[i], next, out);
            if (paren) out += ')';
        }
        return;
    }
    out += decl.name;
    if (n.children.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ',';
        print_node(def, n.children[i], next, out);
    }
    out += ')';
}

bool extract_node(const TermBank& bank, Term t, TheoryId th, const TermSet& holes, Context::Node& out,
                  std::vector<Term>& fills)
{
    if (holes.contains(t)) {
        out = Context::Node{};
        fills.push_back(t);
        return true;
    }
    const Node& n = bank.node(t);
    if ((n.kind != HeadKind::Symbol && n.kind != HeadKind::AC) || n.theory != th) return false;
    out.kind = Context::Kind::Symbol;
    out.symbol = n.symbol;
    out.children.resize(n.children.size());
    for (std::size_t i = 0; i < n.children.size(); ++i)
        if (!extract_node(bank, n.children[i], th, holes, out.children[i], fills)) return false;
    return true;
}

} // namespace

std::size_t Context::hole_count() const { return count_holes(root); }
std::size_t Context::size() const { return count_size(root); }

bool well_formed(const Signature& sig, const Context& c)
{
    if (index(c.theory) >= sig.size()) return false;
    return node_well_formed(sig.theory(c.theory), c.root);
}

Term apply_context(TermBank& bank, const Context& c, std::span<const Term> fills)
{
    if (fills.size() != c.hole_count())
        throw TermError("context has " + std::to_string(c.hole_count()) + " hole(s) but " +
                        std::to_string(fills.size()) + " filling(s) were given");
    if (!well_formed(bank.signature(), c)) throw TermError("ill-formed context");
    std::size_t next = 0;
    return apply_node(bank, c.theory, c.root, fills, next);
}

std::string to_string(const Signature& sig, const Context& c)
{
    std::string out;
    std::size_t next = 0;
    print_node(sig.theory(c.theory), c.root, next, out);
    return out;
}

std::optional<std::pair<Context, std::vector<Term>>> extract_context(const TermBank& bank, Term t, TheoryId th,
                                                                     const TermSet& holes)
{
    Context c{th, {}};
    std::vector<Term> fills;
    if (!extract_node(bank, t, th, holes, c.root, fills)) return std::nullopt;
    return std::make_pair(std::move(c), std::move(fills));
}

} // namespace deduce
