#include "doctest.h"
#include "support.hpp"

#include "deduce/proof_io.hpp"

using namespace testing;

namespace {

Sequent seq(TermBank& bank, std::initializer_list<const char*> gamma, const char* goal)
{
    std::vector<Term> g;
    for (const char* t : gamma) g.push_back(nterm(bank, t));
    return Sequent{TermSet(std::move(g)), nterm(bank, goal)};
}

std::string shape(const Proof& p)
{
    std::string out(rule_name(p.rule));
    if (p.premises.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < p.premises.size(); ++i) out += (i ? "," : "") + shape(p.premises[i]);
    return out + ")";
}

struct Instance {
    std::vector<Term> gamma;
    Term goal;
};

// Random instance whose goal is often built from pieces of Γ.
Instance random_instance(TermBank& bank, TermGen& gen, int depth)
{
    Instance in;
    const std::size_t n = 1 + gen.pick(4);
    for (std::size_t i = 0; i < n; ++i) in.gamma.push_back(normalize(bank, gen.term(bank, depth)));
    const auto st = subterms(bank, in.gamma);
    auto piece = [&] { return st.items()[gen.pick(st.size())]; };
    switch (gen.pick(3)) {
    case 0: in.goal = piece(); break;
    case 1: in.goal = normalize(bank, bank.pair(piece(), piece())); break;
    default: in.goal = normalize(bank, gen.term(bank, 2)); break;
    }
    return in;
}

} // namespace

TEST_CASE("right rules and id")
{
    auto bank = bank_for("theory t : ac");
    auto p = right_prove(*bank, seq(*bank, {"m", "k"}, "enc(m,k)"));
    REQUIRE(p);
    CHECK(shape(*p) == "e_R(id,id)");
    CHECK_FALSE(right_prove(*bank, seq(*bank, {"a", "b"}, "pair(a,b)+a")));
    auto q = right_prove(*bank, seq(*bank, {"a", "b", "pair(a,b)"}, "pair(a,b)+a"));
    REQUIRE(q);
    CHECK(shape(*q) == "id");
    CHECK(to_string(bank->signature(), q->recipe->context) == "[1]+[2]");
    CHECK_FALSE(right_prove(*bank, seq(*bank, {"k"}, "pub(k)")));
}

TEST_CASE("applicability of linear rules")
{
    auto bank = bank_for("theory t : xor");
    {
        const auto s = seq(*bank, {"enc(m,k)", "k"}, "m");
        auto prem = applicable(*bank, term(*bank, "enc(m,k)"), LinearRule::Le, s);
        REQUIRE(prem);
        CHECK(prem->gamma == terms(*bank, {"enc(m,k)", "m", "k"}));
        // Applying again does not grow Γ.
        CHECK_FALSE(applicable(*bank, term(*bank, "enc(m,k)"), LinearRule::Le, *prem));
        CHECK_FALSE(applicable(*bank, term(*bank, "enc(m,k)"), LinearRule::Lp, s));
    }
    {
        const auto s = seq(*bank, {"sign(blind(m,r),k)", "r"}, "sign(m,k)");
        auto prem = applicable(*bank, term(*bank, "sign(blind(m,r),k)"), LinearRule::Blind2, s);
        REQUIRE(prem);
        CHECK(prem->gamma.contains(term(*bank, "sign(m,k)")));
        CHECK(prem->gamma.contains(term(*bank, "r")));
        const auto no_r = seq(*bank, {"sign(blind(m,r),k)"}, "sign(m,k)");
        CHECK_FALSE(applicable(*bank, term(*bank, "sign(blind(m,r),k)"), LinearRule::Blind2, no_r));
    }
    {
        auto ac = bank_for("theory t : ac");
        const auto s = seq(*ac, {"a", "b"}, "pair(a,b)+a");
        auto prem = applicable(*ac, term(*ac, "pair(a,b)"), LinearRule::Ls, s);
        REQUIRE(prem);
        CHECK(prem->gamma == terms(*ac, {"a", "b", "pair(a,b)"}));
        CHECK_FALSE(applicable(*ac, term(*ac, "pair(b,a)"), LinearRule::Ls, s));
    }
    {
        const auto s = seq(*bank, {"sign(m,k)", "pub(k)"}, "m");
        CHECK(applicable(*bank, term(*bank, "sign(m,k)"), LinearRule::Sign, s));
        const auto s2 = seq(*bank, {"sign(m,k)", "k"}, "m");
        CHECK_FALSE(applicable(*bank, term(*bank, "sign(m,k)"), LinearRule::Sign, s2));
    }
}

TEST_CASE("linear search examples")
{
    {
        auto bank = bank_for("theory t : ac");
        const auto s = seq(*bank, {"a", "b"}, "pair(a,b)+a");
        auto d = linear_search(*bank, s);
        REQUIRE(d.provable);
        CHECK(shape(*d.proof) == "gs(p_R(id,id),id)");
        CHECK(check_proof(*bank, *d.proof, s).accepted);
    }
    {
        auto bank = bank_for("");
        const auto s = seq(*bank, {"sign(blind(m,r),k)", "r"}, "sign(m,k)");
        auto d = linear_search(*bank, s);
        REQUIRE(d.provable);
        CHECK(shape(*d.proof) == "blind_L2(id,id)");
        CHECK_FALSE(linear_search(*bank, seq(*bank, {"enc(m,k)"}, "m")).provable);
        CHECK_FALSE(linear_search(*bank, seq(*bank, {"sign(blind(m,r),k)"}, "sign(m,k)")).provable);
    }
    {
        auto bank = bank_for("theory x : xor + 0\ntheory g : ag * J 1");
        const auto s = seq(*bank, {"a+(b*c)", "b", "c"}, "a");
        auto d = linear_search(*bank, s);
        REQUIRE(d.provable);
        CHECK(shape(*d.proof) == "cs(id,id)");
        CHECK(d.proof->principal == term(*bank, "b*c"));
        CHECK(d.proof->premises[0].recipe->context.theory == theory_id(1));
        CHECK(d.proof->premises[1].recipe->context.theory == theory_id(0));
        CHECK(to_string(bank->signature(), d.proof->premises[1].recipe->context) == "[1]+[2]");
    }
}

TEST_CASE("decide examples")
{
    auto bank = bank_for("theory t : xor");
    {
        const Term gamma[] = {term(*bank, "enc(a+a,k)"), term(*bank, "k")};
        CHECK(decide(*bank, gamma, term(*bank, "0")).provable);
    }
    CHECK_FALSE(decide(*bank, std::span<const Term>{}, term(*bank, "a")).provable);
    {
        const Term gamma[] = {term(*bank, "pair(m,n)")};
        auto d = decide(*bank, gamma, term(*bank, "m"));
        REQUIRE(d.provable);
        CHECK(shape(*d.proof) == "p_L(id)");
    }
    {
        const RawTerm gamma[] = {parse_term(bank->signature(), "enc(m,k)"), parse_term(bank->signature(), "k")};
        CHECK(decide(*bank, gamma, parse_term(bank->signature(), "m")).provable);
    }
}

TEST_CASE("checker rejections")
{
    auto bank = bank_for("theory t : ac");
    const auto s = seq(*bank, {"a", "b"}, "pair(a,b)+a");
    auto d = linear_search(*bank, s);
    REQUIRE(d.provable);

    SUBCASE("id recipe with a wrong argument")
    {
        Proof bad = *d.proof;
        bad.premises[1].recipe->hole_args = {term(*bank, "b")};
        auto r = check_proof(*bank, bad, s);
        CHECK_FALSE(r.accepted);
        CHECK(r.path == "1");
        CHECK(r.reason == "id recipe fails");
    }
    SUBCASE("gs on a term that is not a guarded subterm")
    {
        Proof bad = *d.proof;
        const Term other = term(*bank, "pair(b,b)");
        bad.principal = other;
        bad.premises[0].conclusion.goal = other;
        bad.premises[1].conclusion.gamma = terms(*bank, {"a", "b", "pair(b,b)"});
        auto r = check_proof(*bank, bad, s);
        CHECK_FALSE(r.accepted);
        CHECK(r.path == "root");
    }
    SUBCASE("conclusion mismatch")
    {
        CHECK_FALSE(check_proof(*bank, *d.proof, seq(*bank, {"a"}, "pair(a,b)+a")).accepted);
    }
    SUBCASE("non-normal sequent")
    {
        auto x = bank_for("theory t : xor");
        Proof p;
        p.rule = Rule::Id;
        p.conclusion = Sequent{terms(*x, {"a+a"}), term(*x, "0")};
        p.recipe = Recipe{Context::hole(theory_id(0)), {term(*x, "a+a")}};
        CHECK_FALSE(check_proof(*x, p, p.conclusion).accepted);
    }
    SUBCASE("missing premise")
    {
        Proof bad = *d.proof;
        bad.premises.pop_back();
        CHECK_FALSE(check_proof(*bank, bad, s).accepted);
    }
}

TEST_CASE("search agrees with the natural-deduction oracle")
{
    for (const char* decl : {"", "theory t : xor", "theory t : ag", "theory t : ac", "theory x : xor + 0\ntheory g : ag * J 1"}) {
        CAPTURE(decl);
        auto bank = bank_for(decl);
        TermGen gen(bank->signature(), 43, {"a", "b", "k"});
        gen.use_pub = true;
        std::size_t confirmed = 0;
        std::size_t provable = 0;
        OracleBudget budget;
        budget.max_depth = 4;
        budget.max_closure = 3000;
        for (int i = 0; i < 150; ++i) {
            const Instance in = random_instance(*bank, gen, 3);
            const Decision d = decide(*bank, in.gamma, in.goal);
            const bool nd = nd_prove(*bank, in.gamma, in.goal, budget) == OracleVerdict::Provable;
            if (nd) CHECK(d.provable);
            confirmed += nd;
            provable += d.provable;
        }
        CHECK(confirmed > 10);
        CHECK(provable >= confirmed);
    }
}

TEST_CASE("weakening, invertibility and determinism")
{
    auto bank = bank_for("theory x : xor + 0\ntheory g : ag * J 1");
    TermGen gen(bank->signature(), 47, {"a", "b", "k"});
    gen.use_pub = true;
    for (int i = 0; i < 150; ++i) {
        const Instance in = random_instance(*bank, gen, 3);
        const Sequent s{TermSet(in.gamma), in.goal};
        const Decision d = linear_search(*bank, s);

        Sequent weaker = s;
        weaker.gamma.insert(normalize(*bank, gen.term(*bank, 2)));
        if (d.provable) CHECK(linear_search(*bank, weaker).provable);

        // Left rules neither gain nor lose provability.
        for (Term principal : saturate(*bank, s.gamma, s.goal).members)
            for (LinearRule rule : kSweepOrder)
                if (auto prem = applicable(*bank, principal, rule, s))
                    CHECK(linear_search(*bank, *prem).provable == d.provable);

        if (d.provable) {
            const Decision again = linear_search(*bank, s);
            CHECK(render_text(*bank, *again.proof) == render_text(*bank, *d.proof));
        }
    }
}

TEST_CASE("proofs survive a JSON round trip")
{
    auto bank = bank_for("theory x : xor + 0\ntheory g : ag * J 1");
    TermGen gen(bank->signature(), 53, {"a", "b", "k"});
    gen.use_pub = true;
    std::size_t checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Instance in = random_instance(*bank, gen, 3);
        const Decision d = decide(*bank, in.gamma, in.goal);
        if (!d.provable) continue;
        const Sequent s{TermSet(in.gamma), in.goal};
        const auto text = document_to_json(*bank, s, *d.proof).dump();
        const auto doc = document_from_json(nlohmann::json::parse(text));
        CHECK(check_proof(*doc.bank, doc.proof, doc.sequent).accepted);
        CHECK(doc.proof.node_count() == d.proof->node_count());
        // Back in the original bank the proof is the same tree.
        const Proof back = proof_from_json(*bank, proof_to_json(*doc.bank, doc.proof));
        CHECK(render_text(*bank, back) == render_text(*bank, *d.proof));
        ++checked;
    }
    CHECK(checked > 20);
}
