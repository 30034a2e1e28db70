#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "latlog/formula.hpp"
#include "latlog/order.hpp"
#include "latlog/semantics.hpp"

namespace latlog {

// First-order formulas over the order atom leq, the modal relation r,
// equality, and unary predicates P_p. ForallPred is a second-order wrapper
// used by the second-order translation only; correspondence outputs never
// contain Pred or ForallPred nodes.
enum class FOKind {
  True, False, Leq, Rel, Eq, Pred, Not, And, Or, Implies, Forall, Exists, ForallPred
};

struct FONode;
using FO = std::shared_ptr<const FONode>;

struct FONode {
  FOKind kind;
  std::string a, b;  // atom variables; quantifier variable in a; Pred: a = letter, b = var
  FO left, right;
};

FO fo_true();
FO fo_false();
FO fo_leq(std::string x, std::string y);
FO fo_rel(std::string x, std::string y);
FO fo_eq(std::string x, std::string y);
FO fo_pred(std::string letter, std::string var);
FO fo_not(FO f);
FO fo_and(FO l, FO r);
FO fo_or(FO l, FO r);
FO fo_implies(FO l, FO r);
FO fo_forall(std::string var, FO body);
FO fo_exists(std::string var, FO body);
FO fo_forallpred(std::string letter, FO body);

// Conjunction/disjunction of a list; empty list is true/false respectively.
FO fo_and_all(std::span<const FO> fs);
FO fo_or_all(std::span<const FO> fs);

bool fo_equal(const FO& a, const FO& b);

// Fresh-variable supply: y0, y1, ... for translation binders and w0, w1, ...
// for abovemeet binders. The designated free world variable "x" is reserved.
struct FreshGen {
  int y = 0, w = 0;
  std::string yv() { return "y" + std::to_string(y++); }
  std::string wv() { return "w" + std::to_string(w++); }
};

// forall w ((w <= y1 & ... & w <= yk) -> w <= x), with w fresh.
// Duplicate generator variables are collapsed.
FO abovemeet(const std::string& x, std::span<const std::string> ys, FreshGen& gen);

FO standard_translation(const Formula& f, const std::string& x, FreshGen& gen);

// forall P1..Pn forall x ((isfil(P1) & ... & isfil(Pn) & st_x(lhs)) -> st_x(rhs)).
FO second_order_translation(const ConsequencePair& pair);
FO isfil(const std::string& letter, FreshGen& gen);

// ---------------------------------------------------------------------------
// Evaluation (Tarski semantics; quantifiers range over the carrier)

using VarEnv = std::map<std::string, int>;

struct FOStructure {
  const MeetSemilattice* sl = nullptr;
  const std::vector<Mask>* rel = nullptr;  // required by Rel atoms
  const Valuation* val = nullptr;          // required by Pred atoms
};

// Throws UnboundVariable / PredWithoutValuation / Error (Rel without a
// relation, or a second-order node).
bool fo_eval(const FOStructure& s, const FO& f, const VarEnv& env = {});

bool fo_eval(const MeetSemilattice& sl, const FO& f, const VarEnv& env = {});
bool fo_eval(const ModalLFrame& fr, const FO& f, const VarEnv& env = {});
bool fo_eval(const LModel& m, const FO& f, const VarEnv& env = {});
bool fo_eval(const ModalLModel& m, const FO& f, const VarEnv& env = {});

// Second-order evaluation by direct expansion: predicate quantifiers range
// over all filters of the carrier.
bool so_eval(const MeetSemilattice& sl, const FO& f);
bool so_eval(const ModalLFrame& fr, const FO& f);

// ---------------------------------------------------------------------------
// Inspection and printing

std::vector<std::string> fo_free_vars(const FO& f);
std::vector<std::string> fo_binders(const FO& f);  // in prefix order, with repeats
bool fo_no_shadowing(const FO& f);
bool fo_first_order(const FO& f);  // no Pred/ForallPred nodes

// Renames duplicated binders left to right so no two binders share a name;
// fresh names are drawn from the generator.
FO fo_freshen(const FO& f, FreshGen& gen);

// Rename free occurrences of a variable (binders are globally unique).
FO fo_rename(const FO& f, const std::string& from, const std::string& to);

// Plain syntax: forall x. exists y. (r(x,y) & leq(x,y))
std::string fo_text(const FO& f);

// SMT-LIB2-style document over a declared sort W; first-order formulas only.
std::string fo_smt_document(const FO& f);

}  // namespace latlog
