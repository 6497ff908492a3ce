#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <functional>

using namespace testing;

namespace {

const char* kXorAg = "theory x : xor + 0\ntheory g : ag * J 1";

// Canonical text of a raw term modulo AC, by recursive multiset comparison.
std::string canonical(const Signature& sig, const RawTerm& t)
{
    auto ref = sig.lookup_symbol(t.head);
    const bool ac = ref && sig.symbol(*ref).role == SymbolRole::Plus;
    std::vector<std::string> parts;
    std::function<void(const RawTerm&)> collect = [&](const RawTerm& s) {
        if (ac && s.head == t.head) {
            for (const auto& a : s.args) collect(a);
        } else {
            parts.push_back(canonical(sig, s));
        }
    };
    if (ac) {
        for (const auto& a : t.args) collect(a);
        std::sort(parts.begin(), parts.end());
    } else {
        for (const auto& a : t.args) parts.push_back(canonical(sig, a));
    }
    std::string out = t.head + "(";
    for (const auto& p : parts) out += p + ",";
    return out + ")";
}

} // namespace

TEST_CASE("interning is canonical modulo AC")
{
    auto bank = bank_for("theory t : xor");
    CHECK(term(*bank, "(a+b)+c") == term(*bank, "b+(c+a)"));
    CHECK(term(*bank, "pair(a,b)") != term(*bank, "pair(b,a)"));
    const Term e1 = term(*bank, "enc(m,k+k2)");
    const std::size_t count = bank->term_count();
    CHECK(term(*bank, "enc(m,k+k2)") == e1);
    CHECK(bank->term_count() == count);
}

TEST_CASE("ac_equal examples")
{
    auto bank = bank_for("theory t : xor");
    CHECK(ac_equal(term(*bank, "a+b"), term(*bank, "b+a")));
    CHECK_FALSE(ac_equal(term(*bank, "sign(blind(m,r),k)"), term(*bank, "sign(m,k)")));
    CHECK(ac_equal(term(*bank, "(a+b)+(c+d)"), term(*bank, "d+c+b+a")));
}

TEST_CASE("AC handles agree with a multiset-recursion oracle")
{
    auto bank = bank_for(kXorAg);
    TermGen gen(bank->signature(), 7);
    std::vector<std::pair<RawTerm, Term>> seen;
    for (int i = 0; i < 400; ++i) {
        RawTerm r = gen.raw(4);
        seen.emplace_back(r, bank->intern(r));
    }
    std::size_t equal_pairs = 0;
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (std::size_t j = i; j < seen.size(); ++j) {
            const bool same = canonical(bank->signature(), seen[i].first) == canonical(bank->signature(), seen[j].first);
            CHECK(same == (seen[i].second == seen[j].second));
            equal_pairs += same && i != j;
        }
    CHECK(equal_pairs > 0);
}

TEST_CASE("AC nodes are flattened and sorted")
{
    auto bank = bank_for(kXorAg);
    TermGen gen(bank->signature(), 11);
    for (int i = 0; i < 300; ++i) gen.term(*bank, 4);
    for (std::uint32_t id = 0; id < bank->term_count(); ++id) {
        const Node& n = bank->node(Term{id});
        if (n.kind != HeadKind::AC) continue;
        CHECK(n.children.size() >= 2);
        CHECK(std::is_sorted(n.children.begin(), n.children.end()));
        for (Term c : n.children) {
            const Node& cn = bank->node(c);
            CHECK_FALSE((cn.kind == HeadKind::AC && cn.theory == n.theory));
        }
    }
}

TEST_CASE("printing and parsing round-trip")
{
    auto bank = bank_for(kXorAg);
    TermGen gen(bank->signature(), 3);
    gen.use_pub = true;
    for (int i = 0; i < 300; ++i) {
        const Term t = gen.term(*bank, 4);
        CHECK(term(*bank, to_string(*bank, t)) == t);
    }
}

TEST_CASE("intern rejects malformed input")
{
    auto bank = bank_for("theory t : xor");
    CHECK_THROWS_AS(bank->intern(RawTerm{"pair", {RawTerm{"a", {}}}}), TermError);
    CHECK_THROWS_AS(bank->intern(RawTerm{"f", {RawTerm{"a", {}}}}), TermError);
    CHECK_THROWS_AS(bank->intern(RawTerm{"X", {}}), TermError);
    CHECK_THROWS_AS(bank->intern(RawTerm{"?x", {}}), TermError);
    CHECK_THROWS_AS(bank->intern(RawTerm{"0", {RawTerm{"a", {}}}}), TermError);
}

TEST_CASE("signature validation")
{
    CHECK_THROWS_AS(Signature({TheoryDef::make("t", TheoryKind::Xor), TheoryDef::make("u", TheoryKind::AbelianGroup)}),
                    TermError);
    CHECK_THROWS_AS(Signature({TheoryDef::make("t", TheoryKind::Xor), TheoryDef::make("t", TheoryKind::Xor, {"*", "1"})}),
                    TermError);
    CHECK_THROWS_AS(Signature({TheoryDef::make("t", TheoryKind::Xor, {"+", "pair"})}), TermError);
    const Signature ok({TheoryDef::make("t", TheoryKind::Xor), TheoryDef::make("g", TheoryKind::AbelianGroup, {"*", "J", "1"})});
    CHECK(ok.size() == 2);
    CHECK(ok.lookup_symbol("J").has_value());
    CHECK(index(ok.lookup_symbol("*")->theory) == 1);
    CHECK(Signature().size() == 1);
}

TEST_CASE("saturate examples")
{
    auto bank = bank_for("theory t : xor");
    {
        const auto st = saturate(*bank, terms(*bank, {"pair(a,b)"}), term(*bank, "a"));
        CHECK(st.members ==
              terms(*bank, {"pair(a,b)", "a", "b", "sign(a,a)", "sign(a,b)", "sign(b,a)", "sign(b,b)"}));
    }
    {
        const auto st = saturate(*bank, terms(*bank, {"a"}), term(*bank, "a"));
        CHECK(st.members == terms(*bank, {"a"}));
    }
    {
        const auto st = saturate(*bank, terms(*bank, {"sign(blind(m,r),k)"}), term(*bank, "sign(m,k)"));
        CHECK(st.members.contains(term(*bank, "sign(m,k)")));
    }
}

TEST_CASE("saturated set stays within the quadratic bound and is monotone")
{
    auto bank = bank_for(kXorAg);
    TermGen gen(bank->signature(), 19);
    for (int i = 0; i < 200; ++i) {
        std::vector<Term> gamma;
        const std::size_t n = 1 + gen.pick(4);
        for (std::size_t j = 0; j < n; ++j) gamma.push_back(gen.term(*bank, 3));
        const Term m = gen.term(*bank, 3);
        const TermSet g(gamma);
        const auto st = saturate(*bank, g, m);
        std::vector<Term> all = gamma;
        all.push_back(m);
        const std::size_t small = subterms(*bank, all).size();
        CHECK(st.members.size() <= small * small + small);
        CHECK(st.members.includes(g));
        CHECK(st.members.contains(m));

        TermSet bigger = g;
        bigger.insert(gen.term(*bank, 3));
        CHECK(saturate(*bank, bigger, m).members.includes(st.members));
    }
}

TEST_CASE("classify examples")
{
    auto bank = bank_for(kXorAg);
    const auto x = theory_id(0);
    const auto g = theory_id(1);
    const auto pair = classify(*bank, term(*bank, "pair(a,b)"));
    CHECK(pair.guarded);
    CHECK(pair.alien_for(x));
    CHECK(pair.alien_for(g));
    const auto sum = classify(*bank, term(*bank, "a+b"));
    CHECK_FALSE(sum.guarded);
    CHECK(sum.pure_for(x));
    CHECK_FALSE(sum.pure_for(g));
    CHECK(sum.head_theory == x);
    const auto name = classify(*bank, term(*bank, "a"));
    CHECK(name.guarded);
    CHECK(name.pure_for(x));
    CHECK(name.pure_for(g));
    CHECK_FALSE(classify(*bank, term(*bank, "a+(b*c)")).pure_for(x));
}

TEST_CASE("cross-theory subterms")
{
    auto bank = bank_for(kXorAg);
    CHECK(cross_theory_subterms(*bank, term(*bank, "a+(b*c)")) == terms(*bank, {"b*c"}));
    CHECK(cross_theory_subterms(*bank, term(*bank, "a+b")).empty());
    CHECK(cross_theory_subterms(*bank, term(*bank, "(a*b)+(c*J(d))")) == terms(*bank, {"a*b", "c*J(d)"}));

    // Against an exhaustive walk over every parent/child edge.
    TermGen gen(bank->signature(), 23);
    auto theory_of = [&](Term t) -> std::optional<TheoryId> {
        const Node& n = bank->node(t);
        if (n.kind == HeadKind::AC || n.kind == HeadKind::Symbol) return n.theory;
        return std::nullopt;
    };
    for (int i = 0; i < 200; ++i) {
        const Term t = gen.term(*bank, 4);
        TermSet expected;
        for (Term s : subterms(*bank, t)) {
            auto outer = theory_of(s);
            if (!outer) continue;
            for (Term c : bank->node(s).children)
                if (auto inner = theory_of(c); inner && *inner != *outer) expected.insert(c);
        }
        CHECK(cross_theory_subterms(*bank, t) == expected);
    }
}

TEST_CASE("contexts")
{
    auto bank = bank_for("theory t : ag");
    const auto th = theory_id(0);
    const Context sum = parse_context(bank->signature(), th, "[1]+[2]");
    CHECK(sum.hole_count() == 2);
    const Term fills1[] = {term(*bank, "pair(a,b)"), term(*bank, "a")};
    CHECK(apply_context(*bank, sum, fills1) == term(*bank, "pair(a,b)+a"));
    const Term fills2[] = {term(*bank, "t")};
    CHECK(apply_context(*bank, Context::hole(th), fills2) == term(*bank, "t"));
    const Context inv = parse_context(bank->signature(), th, "I([1])");
    const Term fills3[] = {term(*bank, "a+b")};
    CHECK(apply_context(*bank, inv, fills3) == term(*bank, "I(a+b)"));
    CHECK(to_string(bank->signature(), inv) == "I([1])");
    CHECK_THROWS(apply_context(*bank, sum, fills2));
    CHECK(well_formed(bank->signature(), sum));
    CHECK_THROWS_AS(parse_context(bank->signature(), th, "[2]+[1]"), ParseError);
    CHECK_THROWS_AS(parse_context(bank->signature(), th, "pair([1],[2])"), ParseError);
}

TEST_CASE("extracting a context and refilling it reproduces the term")
{
    auto bank = bank_for("theory t : ag");
    const auto th = theory_id(0);
    const auto& def = bank->signature().theory(th);
    TermGen gen(bank->signature(), 29);
    const std::vector<RawTerm> atoms = {RawTerm{"h1", {}}, RawTerm{"h2", {}}, RawTerm{"h3", {}},
                                        RawTerm{"pair", {RawTerm{"a", {}}, RawTerm{"b", {}}}}};
    const TermSet holes = terms(*bank, {"h1", "h2", "h3", "pair(a,b)"});
    for (int i = 0; i < 200; ++i) {
        RawTerm r = gen.pure(def, atoms, 5);
        if (gen.pick(4) == 0) r = RawTerm{"I", {r}};
        const Term t = bank->intern(r);
        auto got = extract_context(*bank, t, th, holes);
        REQUIRE(got.has_value());
        CHECK(well_formed(bank->signature(), got->first));
        CHECK(got->first.hole_count() == got->second.size());
        CHECK(apply_context(*bank, got->first, got->second) == t);
    }
    CHECK_FALSE(extract_context(*bank, term(*bank, "a+c"), th, holes).has_value());
}
