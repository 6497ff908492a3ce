#pragma once

#include "deduce/engine.hpp"
#include "deduce/oracle.hpp"
#include "deduce/problem.hpp"
#include "deduce/theory.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace deduce;

/// A bank over the theories declared in `theory_lines` (problem-file syntax).
inline std::unique_ptr<TermBank> bank_for(const std::string& theory_lines)
{
    Problem p = parse_problem(theory_lines + "\ngoal a\n");
    return std::make_unique<TermBank>(p.signature());
}

inline Term term(TermBank& bank, const std::string& text)
{
    return bank.intern(parse_term(bank.signature(), text));
}

inline TermSet terms(TermBank& bank, std::initializer_list<const char*> texts)
{
    std::vector<Term> out;
    for (const char* t : texts) out.push_back(term(bank, t));
    return TermSet(std::move(out));
}

inline Term nterm(TermBank& bank, const std::string& text) { return normalize(bank, term(bank, text)); }

/// Random raw terms over the given names, constructors and declared theories.
class TermGen {
public:
    TermGen(const Signature& sig, std::uint32_t seed, std::vector<std::string> names = {"a", "b", "c", "d"})
        : sig_(sig), rng_(seed), names_(std::move(names))
    {
    }

    bool use_ctors = true;
    bool use_pub = false;

    RawTerm raw(int depth)
    {
        if (depth <= 0 || pick(3) == 0) return leaf();
        std::vector<int> choices;
        if (use_ctors) choices.insert(choices.end(), {0, 0, 1});
        for (std::size_t th = 0; th < sig_.size(); ++th)
            if (sig_.theory(theory_id(th)).kind != TheoryKind::Empty) choices.insert(choices.end(), {2, 2});
        if (choices.empty()) return leaf();
        switch (choices[pick(choices.size())]) {
        case 0: {
            static const char* kCtors[] = {"pair", "enc", "sign", "blind"};
            return RawTerm{kCtors[pick(4)], {raw(depth - 1), raw(depth - 1)}};
        }
        case 1:
            if (use_pub) return RawTerm{"pub", {raw(depth - 1)}};
            return RawTerm{"pair", {raw(depth - 1), raw(depth - 1)}};
        default: {
            const auto& def = random_theory();
            const auto inv = def.inverse();
            if (inv && pick(4) == 0) return RawTerm{def.symbols[*inv].name, {raw(depth - 1)}};
            RawTerm sum{def.symbols[*def.plus()].name, {}};
            const std::size_t n = 2 + pick(2);
            for (std::size_t i = 0; i < n; ++i) sum.args.push_back(raw(depth - 1));
            return sum;
        }
        }
    }

    Term term(TermBank& bank, int depth) { return bank.intern(raw(depth)); }

    /// A sum of theory `def` over `atoms` with random multiplicities.
    RawTerm pure(const TheoryDef& def, const std::vector<RawTerm>& atoms, int max_terms)
    {
        RawTerm sum{def.symbols[*def.plus()].name, {}};
        const std::size_t n = 1 + pick(static_cast<std::size_t>(max_terms));
        for (std::size_t i = 0; i < n; ++i) {
            RawTerm a = atoms[pick(atoms.size())];
            if (def.inverse() && pick(3) == 0) a = RawTerm{def.symbols[*def.inverse()].name, {a}};
            sum.args.push_back(std::move(a));
        }
        if (sum.args.size() == 1) return sum.args.front();
        return sum;
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::mt19937& rng() { return rng_; }

private:
    RawTerm leaf()
    {
        std::vector<RawTerm> options;
        for (const auto& n : names_) options.push_back(RawTerm{n, {}});
        for (std::size_t th = 0; th < sig_.size(); ++th)
            if (auto z = sig_.theory(theory_id(th)).zero(); z && pick(6) == 0)
                return RawTerm{sig_.theory(theory_id(th)).symbols[*z].name, {}};
        return options[pick(options.size())];
    }

    const TheoryDef& random_theory()
    {
        std::vector<std::size_t> nonempty;
        for (std::size_t th = 0; th < sig_.size(); ++th)
            if (sig_.theory(theory_id(th)).kind != TheoryKind::Empty) nonempty.push_back(th);
        return sig_.theory(theory_id(nonempty[pick(nonempty.size())]));
    }

    const Signature& sig_;
    std::mt19937 rng_;
    std::vector<std::string> names_;
};

} // namespace testing
