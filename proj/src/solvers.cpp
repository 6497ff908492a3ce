#include "deduce/theory.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

namespace deduce {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// GF(2)

std::optional<std::vector<bool>> solve_gf2(const std::vector<std::vector<bool>>& columns, const std::vector<bool>& rhs)
{
    const std::size_t rows = rhs.size();
    const std::size_t k = columns.size();
    const std::size_t row_words = (rows + 63) / 64;
    const std::size_t combo_words = (k + 63) / 64;
    using Bits = std::vector<std::uint64_t>;

    auto pack = [](const std::vector<bool>& v, std::size_t words) {
        Bits b(words, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) b[i / 64] |= std::uint64_t{1} << (i % 64);
        return b;
    };
    auto first_bit = [](const Bits& b) -> std::optional<std::size_t> {
        for (std::size_t w = 0; w < b.size(); ++w)
            if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
        return std::nullopt;
    };
    auto has = [](const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; };
    auto xor_into = [](Bits& dst, const Bits& src) {
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    };

    struct Row {
        Bits vec;
        Bits combo;
        std::size_t pivot;
    };
    std::vector<Row> basis;
    auto reduce = [&](Bits& vec, Bits& combo) {
        for (const auto& b : basis)
            if (has(vec, b.pivot)) {
                xor_into(vec, b.vec);
                xor_into(combo, b.combo);
            }
    };

    for (std::size_t j = 0; j < k; ++j) {
        Bits vec = pack(columns[j], row_words);
        Bits combo(combo_words, 0);
        combo[j / 64] |= std::uint64_t{1} << (j % 64);
        reduce(vec, combo);
        if (auto p = first_bit(vec)) basis.push_back(Row{std::move(vec), std::move(combo), *p});
    }

    Bits target = pack(rhs, row_words);
    Bits combo(combo_words, 0);
    reduce(target, combo);
    if (first_bit(target)) return std::nullopt;
    std::vector<bool> x(k);
    for (std::size_t j = 0; j < k; ++j) x[j] = has(combo, j);
    return x;
}

// ---------------------------------------------------------------------------
// integers: column-style echelon form with a unimodular transform

std::optional<std::vector<std::int64_t>> solve_integer_system(const std::vector<std::vector<std::int64_t>>& columns,
                                                              const std::vector<std::int64_t>& rhs)
{
    const std::size_t rows = rhs.size();
    const std::size_t k = columns.size();
    std::vector<std::vector<cpp_int>> h(k, std::vector<cpp_int>(rows));
    std::vector<std::vector<cpp_int>> u(k, std::vector<cpp_int>(k));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < rows; ++r) h[j][r] = columns[j].at(r);
        u[j][j] = 1;
    }
    auto sub_multiple = [&](std::size_t dst, std::size_t src, const cpp_int& q) {
        for (std::size_t r = 0; r < rows; ++r) h[dst][r] -= q * h[src][r];
        for (std::size_t i = 0; i < k; ++i) u[dst][i] -= q * u[src][i];
    };

    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, column)
    std::size_t pc = 0;
    for (std::size_t r = 0; r < rows && pc < k; ++r) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t j = pc; j < k; ++j)
                if (h[j][r] != 0 && (!best || abs(h[j][r]) < abs(h[*best][r]))) best = j;
            if (!best) break;
            std::swap(h[pc], h[*best]);
            std::swap(u[pc], u[*best]);
            bool remaining = false;
            for (std::size_t j = pc + 1; j < k; ++j) {
                if (h[j][r] == 0) continue;
                cpp_int q = h[j][r] / h[pc][r];
                sub_multiple(j, pc, q);
                remaining = remaining || h[j][r] != 0;
            }
            if (!remaining) {
                pivots.emplace_back(r, pc++);
                break;
            }
        }
    }

    std::vector<cpp_int> residual(rhs.begin(), rhs.end());
    std::vector<cpp_int> y(k);
    for (auto [r, c] : pivots) {
        if (residual[r] % h[c][r] != 0) return std::nullopt;
        y[c] = residual[r] / h[c][r];
        for (std::size_t i = 0; i < rows; ++i) residual[i] -= y[c] * h[c][i];
    }
    if (std::any_of(residual.begin(), residual.end(), [](const cpp_int& v) { return v != 0; })) return std::nullopt;

    std::vector<std::int64_t> x(k);
    for (std::size_t i = 0; i < k; ++i) {
        cpp_int xi = 0;
        for (std::size_t c = 0; c < k; ++c) xi += y[c] * u[c][i];
        if (xi > std::numeric_limits<std::int64_t>::max() || xi < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("abelian-group recipe coefficient exceeds 64 bits");
        x[i] = static_cast<std::int64_t>(xi);
    }
    return x;
}

// ---------------------------------------------------------------------------
// AC without units: non-negative combinations

namespace {

bool union_search(const std::vector<std::vector<std::int64_t>>& columns, std::vector<std::int64_t>& remaining,
                  std::vector<std::int64_t>& x, std::set<std::vector<std::int64_t>>& dead)
{
    auto first = std::find_if(remaining.begin(), remaining.end(), [](std::int64_t v) { return v > 0; });
    if (first == remaining.end()) return true;
    if (dead.contains(remaining)) return false;
    const std::size_t r = static_cast<std::size_t>(first - remaining.begin());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto& col = columns[j];
        if (col[r] <= 0) continue;
        bool fits = true;
        for (std::size_t i = 0; i < remaining.size() && fits; ++i) fits = col[i] <= remaining[i];
        if (!fits) continue;
        for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] -= col[i];
        ++x[j];
        if (union_search(columns, remaining, x, dead)) return true;
        --x[j];
        for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] += col[i];
    }
    dead.insert(remaining);
    return false;
}

} // namespace

std::optional<std::vector<std::int64_t>> solve_multiset_union(const std::vector<std::vector<std::int64_t>>& columns,
                                                              const std::vector<std::int64_t>& rhs)
{
    if (std::none_of(rhs.begin(), rhs.end(), [](std::int64_t v) { return v > 0; })) return std::nullopt;
    if (std::any_of(rhs.begin(), rhs.end(), [](std::int64_t v) { return v < 0; })) return std::nullopt;
    std::vector<std::int64_t> remaining = rhs;
    std::vector<std::int64_t> x(columns.size(), 0);
    std::set<std::vector<std::int64_t>> dead;
    if (!union_search(columns, remaining, x, dead)) return std::nullopt;
    return x;
}

// ---------------------------------------------------------------------------
// recipes

std::optional<Recipe> recipe_from_coefficients(const Signature& sig, TheoryId th, std::span<const Term> gamma,
                                               std::span<const std::int64_t> coeffs)
{
    const auto& def = sig.theory(th);
    Recipe r{Context{th, {}}, {}};
    std::vector<Context::Node> summands;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const std::int64_t c = coeffs[j];
        if (c > 0) {
            for (std::int64_t i = 0; i < c; ++i) {
                summands.push_back(Context::Node{});
                r.hole_args.push_back(gamma[j]);
            }
        } else if (c < 0) {
            auto inv = def.inverse();
            if (!inv) return std::nullopt;
            Context::Node inner{};
            if (c < -1) {
                inner = Context::Node{Context::Kind::Symbol, *def.plus(), {}};
                inner.children.assign(static_cast<std::size_t>(-c), Context::Node{});
            }
            for (std::int64_t i = 0; i < -c; ++i) r.hole_args.push_back(gamma[j]);
            summands.push_back(Context::Node{Context::Kind::Symbol, *inv, {std::move(inner)}});
        }
    }
    if (summands.empty()) {
        auto zero = def.zero();
        if (!zero) return std::nullopt;
        r.context.root = Context::Node{Context::Kind::Symbol, *zero, {}};
    } else if (summands.size() == 1) {
        r.context.root = std::move(summands.front());
    } else {
        auto plus = def.plus();
        if (!plus) return std::nullopt;
        r.context.root = Context::Node{Context::Kind::Symbol, *plus, std::move(summands)};
    }
    return r;
}

std::optional<Recipe> elem_deduce(TermBank& bank, std::span<const Term> gamma, Term m, TheoryId th, VarAssignment& va,
                                  ElementaryStats* stats)
{
    if (index(th) >= bank.signature().size()) throw TermError("unknown theory id " + std::to_string(index(th)));
    if (stats) ++stats->calls;
    auto found = [&](Recipe r) -> std::optional<Recipe> {
        if (stats) {
            ++stats->hits;
            stats->max_recipe_size = std::max(stats->max_recipe_size, r.context.size());
        }
        return r;
    };

    if (std::find(gamma.begin(), gamma.end(), m) != gamma.end())
        return found(Recipe{Context::hole(th), {m}});

    const TheoryKind kind = bank.signature().theory(th).kind;
    if (kind == TheoryKind::Empty) return std::nullopt;

    // Pure images of the problem; atoms are names and abstraction variables.
    std::map<Term, std::size_t> atom_row;
    auto image = [&](Term t) {
        auto e = exponents(bank, normalize(bank, abstract(bank, t, th, va)), th);
        for (auto& [atom, _] : e) atom_row.emplace(atom, 0);
        return e;
    };
    std::vector<std::map<Term, std::int64_t>> members;
    members.reserve(gamma.size());
    for (Term g : gamma) members.push_back(image(g));
    auto target = image(m);

    std::size_t row = 0;
    for (auto& [atom, r] : atom_row) r = row++;

    std::vector<std::int64_t> coeffs;
    if (kind == TheoryKind::Xor) {
        std::vector<std::vector<bool>> cols(members.size(), std::vector<bool>(row));
        std::vector<bool> rhs(row);
        for (std::size_t j = 0; j < members.size(); ++j)
            for (auto [atom, e] : members[j]) cols[j][atom_row[atom]] = (e & 1) != 0;
        for (auto [atom, e] : target) rhs[atom_row[atom]] = (e & 1) != 0;
        auto x = solve_gf2(cols, rhs);
        if (!x) return std::nullopt;
        for (bool b : *x) coeffs.push_back(b ? 1 : 0);
    } else {
        std::vector<std::vector<std::int64_t>> cols(members.size(), std::vector<std::int64_t>(row, 0));
        std::vector<std::int64_t> rhs(row, 0);
        for (std::size_t j = 0; j < members.size(); ++j)
            for (auto [atom, e] : members[j]) cols[j][atom_row[atom]] = e;
        for (auto [atom, e] : target) rhs[atom_row[atom]] = e;
        auto x = kind == TheoryKind::AbelianGroup ? solve_integer_system(cols, rhs) : solve_multiset_union(cols, rhs);
        if (!x) return std::nullopt;
        coeffs = std::move(*x);
    }
    auto r = recipe_from_coefficients(bank.signature(), th, gamma, coeffs);
    if (!r) return std::nullopt;
    return found(std::move(*r));
}

bool verify_recipe(TermBank& bank, const Recipe& r, std::span<const Term> gamma, Term m)
{
    const auto& sig = bank.signature();
    if (index(r.context.theory) >= sig.size() || !well_formed(sig, r.context)) return false;
    if (r.context.hole_count() != r.hole_args.size()) return false;
    for (Term a : r.hole_args)
        if (std::find(gamma.begin(), gamma.end(), a) == gamma.end()) return false;
    try {
        return normalize(bank, apply_context(bank, r.context, r.hole_args)) == m;
    } catch (const TermError&) {
        return false;
    }
}

} // namespace deduce
