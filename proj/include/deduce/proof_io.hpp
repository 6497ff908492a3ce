#pragma once

// Proof serialization.
//
// Text: one line per node, indented two spaces per level:
//   <rule>  <Γ> |- <M>   [<witness>]
//
// JSON document:
//   { "format": "deduce-proof/1",
//     "theories": [ {"name": "t", "kind": "xor", "symbols": ["+", "0"]}, ... ],
//     "sequent": {"gamma": ["a+b", ...], "goal": "a"},
//     "proof": <node> }
//   <node> = { "rule": "id" | "p_L" | ... | "gs" | "cs",
//              "gamma": [<term>...], "goal": <term>,
//              "recipe": {"theory": <name>, "context": "[1]+[2]", "args": [<term>...]},   (id)
//              "principal": <term>,                                                    (left rules, gs, cs)
//              "pub": <term>,                                                          (sign_L)
//              "premises": [<node>...] }
// Terms use the problem-file syntax.

#include "deduce/engine.hpp"

#include <memory>
#include "json.hpp"
#include <string>

namespace deduce {

std::string render_text(const TermBank& bank, const Proof& p);

nlohmann::json proof_to_json(const TermBank& bank, const Proof& p);
nlohmann::json document_to_json(const TermBank& bank, const Sequent& s, const Proof& p);

/// Rebuilds a proof inside `bank`. Throws ParseError / std::invalid_argument
/// on malformed input.
Proof proof_from_json(TermBank& bank, const nlohmann::json& j);

struct ProofDocument {
    std::unique_ptr<TermBank> bank;
    Sequent sequent;
    Proof proof;
};

ProofDocument document_from_json(const nlohmann::json& j);

} // namespace deduce
