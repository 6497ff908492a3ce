#include "deduce/signature.hpp"

#include <array>

namespace deduce {

namespace {

constexpr std::array<std::string_view, 5> kConstructorNames = {"pub", "sign", "blind", "pair", "enc"};

} // namespace

bool is_constructor_name(std::string_view name)
{
    for (auto c : kConstructorNames)
        if (c == name) return true;
    return false;
}

std::string_view kind_name(TheoryKind kind)
{
    switch (kind) {
    case TheoryKind::Empty: return "empty";
    case TheoryKind::ACOnly: return "ac";
    case TheoryKind::Xor: return "xor";
    case TheoryKind::AbelianGroup: return "ag";
    }
    return "?";
}

std::optional<TheoryKind> parse_kind(std::string_view text)
{
    if (text == "empty") return TheoryKind::Empty;
    if (text == "ac") return TheoryKind::ACOnly;
    if (text == "xor") return TheoryKind::Xor;
    if (text == "ag") return TheoryKind::AbelianGroup;
    return std::nullopt;
}

TheoryDef TheoryDef::make(std::string name, TheoryKind kind, const std::vector<std::string>& symbol_names)
{
    std::vector<SymbolDecl> layout;
    switch (kind) {
    case TheoryKind::Empty: break;
    case TheoryKind::ACOnly: layout = {{"+", 2, SymbolRole::Plus}}; break;
    case TheoryKind::Xor: layout = {{"+", 2, SymbolRole::Plus}, {"0", 0, SymbolRole::Zero}}; break;
    case TheoryKind::AbelianGroup:
        layout = {{"+", 2, SymbolRole::Plus}, {"I", 1, SymbolRole::Inverse}, {"0", 0, SymbolRole::Zero}};
        break;
    }
    if (symbol_names.size() > layout.size())
        throw TermError("theory '" + name + "' of kind " + std::string(kind_name(kind)) + " takes at most " +
                        std::to_string(layout.size()) + " symbol names");
    for (std::size_t i = 0; i < symbol_names.size(); ++i)
        layout[i].name = symbol_names[i];
    return TheoryDef{std::move(name), kind, std::move(layout)};
}

std::optional<std::uint16_t> TheoryDef::find_role(SymbolRole role) const
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i].role == role) return static_cast<std::uint16_t>(i);
    return std::nullopt;
}

Signature::Signature() : Signature(std::vector<TheoryDef>{}) {}

Signature::Signature(std::vector<TheoryDef> theories) : theories_(std::move(theories))
{
    if (theories_.empty()) theories_.push_back(TheoryDef::make("empty", TheoryKind::Empty));
    if (theories_.size() > 255) throw TermError("too many theories");
    for (std::size_t t = 0; t < theories_.size(); ++t) {
        const auto& def = theories_[t];
        for (std::size_t u = 0; u < t; ++u)
            if (theories_[u].name == def.name) throw TermError("duplicate theory name '" + def.name + "'");
        for (std::size_t s = 0; s < def.symbols.size(); ++s) {
            const auto& sym = def.symbols[s];
            if (sym.name.empty()) throw TermError("empty symbol name in theory '" + def.name + "'");
            if (is_constructor_name(sym.name))
                throw TermError("symbol '" + sym.name + "' clashes with a constructor");
            auto [it, fresh] =
                symbols_.emplace(sym.name, SymbolRef{theory_id(t), static_cast<std::uint16_t>(s)});
            if (!fresh) throw TermError("symbol '" + sym.name + "' declared by more than one theory");
        }
    }
}

std::optional<SymbolRef> Signature::lookup_symbol(std::string_view name) const
{
    auto it = symbols_.find(std::string(name));
    if (it == symbols_.end()) return std::nullopt;
    return it->second;
}

std::optional<TheoryId> Signature::find_theory(std::string_view name) const
{
    for (std::size_t t = 0; t < theories_.size(); ++t)
        if (theories_[t].name == name) return theory_id(t);
    return std::nullopt;
}

} // namespace deduce
