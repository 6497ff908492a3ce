#include "deduce/proof_io.hpp"

#include "deduce/problem.hpp"

#include <stdexcept>

namespace deduce {

namespace {

void render(const TermBank& bank, const Proof& p, int depth, std::string& out)
{
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += rule_name(p.rule);
    out += "  ";
    out += to_string(bank, p.conclusion.gamma.view());
    out += " |- ";
    out += to_string(bank, p.conclusion.goal);
    if (p.recipe) {
        const auto& sig = bank.signature();
        out += "   [" + sig.theory(p.recipe->context.theory).name + ": " + to_string(sig, p.recipe->context) +
               " <- " + to_string(bank, p.recipe->hole_args) + "]";
    } else if (p.principal) {
        out += "   [" + to_string(bank, *p.principal);
        if (p.pub_key) out += " with " + to_string(bank, *p.pub_key);
        out += "]";
    }
    out += '\n';
    for (const auto& q : p.premises) render(bank, q, depth + 1, out);
}

nlohmann::json terms_json(const TermBank& bank, std::span<const Term> ts)
{
    auto arr = nlohmann::json::array();
    for (Term t : ts) arr.push_back(to_string(bank, t));
    return arr;
}

Term term_from(TermBank& bank, const nlohmann::json& j)
{
    if (!j.is_string()) throw std::invalid_argument("expected a term string, got " + j.dump());
    return bank.intern(parse_term(bank.signature(), j.get<std::string>()));
}

TermSet set_from(TermBank& bank, const nlohmann::json& j)
{
    if (!j.is_array()) throw std::invalid_argument("expected an array of terms");
    std::vector<Term> ts;
    for (const auto& e : j) ts.push_back(term_from(bank, e));
    return TermSet(std::move(ts));
}

} // namespace

std::string render_text(const TermBank& bank, const Proof& p)
{
    std::string out;
    render(bank, p, 0, out);
    return out;
}

nlohmann::json proof_to_json(const TermBank& bank, const Proof& p)
{
    nlohmann::json j;
    j["rule"] = std::string(rule_name(p.rule));
    j["gamma"] = terms_json(bank, p.conclusion.gamma.view());
    j["goal"] = to_string(bank, p.conclusion.goal);
    if (p.recipe) {
        const auto& sig = bank.signature();
        j["recipe"] = {{"theory", sig.theory(p.recipe->context.theory).name},
                       {"context", to_string(sig, p.recipe->context)},
                       {"args", terms_json(bank, p.recipe->hole_args)}};
    }
    if (p.principal) j["principal"] = to_string(bank, *p.principal);
    if (p.pub_key) j["pub"] = to_string(bank, *p.pub_key);
    auto prem = nlohmann::json::array();
    for (const auto& q : p.premises) prem.push_back(proof_to_json(bank, q));
    j["premises"] = std::move(prem);
    return j;
}

nlohmann::json document_to_json(const TermBank& bank, const Sequent& s, const Proof& p)
{
    nlohmann::json doc;
    doc["format"] = "deduce-proof/1";
    auto theories = nlohmann::json::array();
    for (const auto& def : bank.signature().theories()) {
        auto syms = nlohmann::json::array();
        for (const auto& sym : def.symbols) syms.push_back(sym.name);
        theories.push_back({{"name", def.name}, {"kind", std::string(kind_name(def.kind))}, {"symbols", syms}});
    }
    doc["theories"] = std::move(theories);
    doc["sequent"] = {{"gamma", terms_json(bank, s.gamma.view())}, {"goal", to_string(bank, s.goal)}};
    doc["proof"] = proof_to_json(bank, p);
    return doc;
}

Proof proof_from_json(TermBank& bank, const nlohmann::json& j)
{
    if (!j.is_object()) throw std::invalid_argument("proof node must be an object");
    Proof p;
    auto rule = parse_rule(j.at("rule").get<std::string>());
    if (!rule) throw std::invalid_argument("unknown rule '" + j.at("rule").get<std::string>() + "'");
    p.rule = *rule;
    p.conclusion = Sequent{set_from(bank, j.at("gamma")), term_from(bank, j.at("goal"))};
    if (j.contains("recipe")) {
        const auto& r = j.at("recipe");
        const auto th = bank.signature().find_theory(r.at("theory").get<std::string>());
        if (!th) throw std::invalid_argument("unknown theory in recipe");
        Recipe rec{parse_context(bank.signature(), *th, r.at("context").get<std::string>()), {}};
        for (const auto& a : r.at("args")) rec.hole_args.push_back(term_from(bank, a));
        p.recipe = std::move(rec);
    }
    if (j.contains("principal")) p.principal = term_from(bank, j.at("principal"));
    if (j.contains("pub")) p.pub_key = term_from(bank, j.at("pub"));
    for (const auto& q : j.value("premises", nlohmann::json::array())) p.premises.push_back(proof_from_json(bank, q));
    return p;
}

ProofDocument document_from_json(const nlohmann::json& j)
{
    if (j.value("format", "") != "deduce-proof/1") throw std::invalid_argument("not a deduce-proof/1 document");
    std::vector<TheoryDef> theories;
    for (const auto& t : j.at("theories")) {
        auto kind = parse_kind(t.at("kind").get<std::string>());
        if (!kind) throw std::invalid_argument("unknown theory kind");
        theories.push_back(
            TheoryDef::make(t.at("name").get<std::string>(), *kind, t.at("symbols").get<std::vector<std::string>>()));
    }
    ProofDocument doc;
    doc.bank = std::make_unique<TermBank>(Signature(std::move(theories)));
    const auto& s = j.at("sequent");
    doc.sequent = Sequent{set_from(*doc.bank, s.at("gamma")), term_from(*doc.bank, s.at("goal"))};
    doc.proof = proof_from_json(*doc.bank, j.at("proof"));
    return doc;
}

} // namespace deduce
