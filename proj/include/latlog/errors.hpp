#pragma once

#include <stdexcept>
#include <string>

namespace latlog {

// Base of every error the library throws on bad input or violated
// preconditions. Internal logic never throws these on valid input.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateLabel : Error {
  explicit DuplicateLabel(const std::string& label)
      : Error("duplicate label: " + label), label(label) {}
  std::string label;
};

struct AntisymmetryViolation : Error {
  AntisymmetryViolation(const std::string& a, const std::string& b)
      : Error("antisymmetry violation: " + a + " <= " + b + " and " + b +
              " <= " + a),
        a(a), b(b) {}
  std::string a, b;  // cycle witness
};

struct NoMeet : Error {
  NoMeet(int i, int j, const std::string& reason)
      : Error("no meet of elements " + std::to_string(i) + ", " +
              std::to_string(j) + ": " + reason),
        i(i), j(j), reason(reason) {}
  int i, j;
  std::string reason;
};

struct NoJoin : Error {
  NoJoin(int i, int j, const std::string& reason)
      : Error("no join of elements " + std::to_string(i) + ", " +
              std::to_string(j) + ": " + reason),
        i(i), j(j), reason(reason) {}
  int i, j;
  std::string reason;
};

struct NoTop : Error {
  NoTop() : Error("poset has no top element") {}
};

struct NoBottom : Error {
  NoBottom() : Error("poset has no bottom element") {}
};

struct NotTotal : Error {
  explicit NotTotal(const std::string& what) : Error("map not total: " + what) {}
};

struct SyntaxError : Error {
  SyntaxError(std::size_t position, const std::string& expected)
      : Error("syntax error at position " + std::to_string(position) +
              ": expected " + expected),
        position(position), expected(expected) {}
  std::size_t position;
  std::string expected;
};

struct MissingLetter : Error {
  explicit MissingLetter(const std::string& letter)
      : Error("valuation/assignment missing letter: " + letter), letter(letter) {}
  std::string letter;
};

struct FrameConditionViolated : Error {
  explicit FrameConditionViolated(const std::string& report)
      : Error("modal frame condition violated: " + report), report(report) {}
  std::string report;
};

struct ModalOnPlainLattice : Error {
  ModalOnPlainLattice()
      : Error("modal operator evaluated against a lattice without box/dia tables") {}
};

struct Infeasible : Error {
  explicit Infeasible(long long cost)
      : Error("valuation enumeration exceeds budget (estimated cost " +
              std::to_string(cost) + ")"),
        cost(cost) {}
  long long cost;
};

struct BoundExceeded : Error {
  explicit BoundExceeded(const std::string& what) : Error("bound exceeded: " + what) {}
};

struct NotSahlqvist : Error {
  explicit NotSahlqvist(const std::string& antecedent)
      : Error("antecedent is not Sahlqvist: " + antecedent), antecedent(antecedent) {}
  std::string antecedent;
};

struct ModalNotSupported : Error {
  ModalNotSupported() : Error("decision procedure supports modality-free pairs only") {}
};

struct UnknownRule : Error {
  explicit UnknownRule(const std::string& rule)
      : Error("unknown derivation rule: " + rule), rule(rule) {}
  std::string rule;
};

struct ShapeMismatch : Error {
  ShapeMismatch(const std::string& path, const std::string& why)
      : Error("rule shape mismatch at " + path + ": " + why), path(path) {}
  std::string path;
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& name)
      : Error("unbound first-order variable: " + name), name(name) {}
  std::string name;
};

struct PredWithoutValuation : Error {
  explicit PredWithoutValuation(const std::string& pred)
      : Error("predicate " + pred + " evaluated on a structure without a valuation"),
        pred(pred) {}
  std::string pred;
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& witness)
      : Error("invariant violation: " + witness), witness(witness) {}
  std::string witness;
};

struct EmptyBound : Error {
  EmptyBound() : Error("abovemeet requires at least one generator variable") {}
};

}  // namespace latlog
