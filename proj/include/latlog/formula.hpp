#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latlog/errors.hpp"

namespace latlog {

enum class FKind { Prop, Top, Bot, And, Or, Box, Dia };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  std::string name;      // Prop only
  Formula left, right;   // And/Or use both, Box/Dia use left
};

Formula fprop(std::string name);
Formula ftop();
Formula fbot();
Formula fand(Formula l, Formula r);
Formula forr(Formula l, Formula r);
Formula fbox(Formula f);
Formula fdia(Formula f);

bool equal(const Formula& a, const Formula& b);
bool modality_free(const Formula& f);
std::vector<std::string> letters(const Formula& f);  // sorted, unique

struct ConsequencePair {
  Formula lhs, rhs;
};

std::vector<std::string> letters(const ConsequencePair& pair);

// Grammar (ASCII): top, bot, &, |, box, dia, identifiers [a-zA-Z][a-zA-Z0-9_]*.
// box/dia bind tightest, then &, then |; & and | associate to the left.
// A consequence pair is "phi <= psi".
Formula parse_formula(std::string_view text);
ConsequencePair parse_pair(std::string_view text);

// Minimal parenthesization; parse_formula(render(f)) is structurally f.
std::string render(const Formula& f);
std::string render(const ConsequencePair& pair);
std::string sexp(const Formula& f);

enum class AntecedentTag { PositiveAny, SahlqvistAntecedent, NotSahlqvist };

struct AntecedentClass {
  AntecedentTag tag = AntecedentTag::NotSahlqvist;
  // (proposition, box depth) in left-to-right order of occurrence.
  std::vector<std::pair<std::string, int>> boxed_atoms;
};

// PositiveAny for modality-free formulas; SahlqvistAntecedent when the
// formula is built from boxed atoms, top and bot using &, | and dia only.
AntecedentClass classify_antecedent(const Formula& f);

}  // namespace latlog
