#include "latlog/prover.hpp"

#include <map>

namespace latlog {

namespace {

struct WhitmanMemo {
  std::map<std::pair<const FormulaNode*, const FormulaNode*>, bool> table;
};

// s <= t in the free bounded lattice. Terminates because every premise is
// smaller in the multiset of subterm sizes; memoized on node identity.
bool leq_free(const Formula& s, const Formula& t, WhitmanMemo& memo) {
  auto key = std::make_pair(s.get(), t.get());
  if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  bool out;
  if (s->kind == FKind::Bot || t->kind == FKind::Top) {
    out = true;
  } else if (s->kind == FKind::Or) {
    out = leq_free(s->left, t, memo) && leq_free(s->right, t, memo);
  } else if (t->kind == FKind::And) {
    out = leq_free(s, t->left, memo) && leq_free(s, t->right, memo);
  } else if (s->kind == FKind::Prop) {
    if (t->kind == FKind::Prop) out = s->name == t->name;
    else if (t->kind == FKind::Bot) out = false;
    else out = leq_free(s, t->left, memo) || leq_free(s, t->right, memo);  // t is Or
  } else if (s->kind == FKind::Top) {
    // Top is the empty meet: only the join side of Whitman's condition remains.
    if (t->kind == FKind::Or)
      out = leq_free(s, t->left, memo) || leq_free(s, t->right, memo);
    else
      out = false;
  } else {
    // s is And; t is Prop, Bot or Or.
    out = leq_free(s->left, t, memo) || leq_free(s->right, t, memo);
    if (!out && t->kind == FKind::Or)
      out = leq_free(s, t->left, memo) || leq_free(s, t->right, memo);
  }
  memo.table[key] = out;
  return out;
}

}  // namespace

bool whitman_decide(const ConsequencePair& pair) {
  if (!modality_free(pair.lhs) || !modality_free(pair.rhs)) throw ModalNotSupported();
  WhitmanMemo memo;
  return leq_free(pair.lhs, pair.rhs, memo);
}

// ---------------------------------------------------------------------------
// Derivation checking

namespace {

struct RuleSpec {
  int premises;
  // Checks the conclusion against the premises' conclusions.
  bool (*check)(const ConsequencePair&, const std::vector<ConsequencePair>&);
};

bool is_and(const Formula& f) { return f->kind == FKind::And; }
bool is_or(const Formula& f) { return f->kind == FKind::Or; }

const std::map<std::string, RuleSpec>& rule_table() {
  static const std::map<std::string, RuleSpec> table = {
      {"top", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                 return c.rhs->kind == FKind::Top;
               }}},
      {"bot", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                 return c.lhs->kind == FKind::Bot;
               }}},
      {"refl", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                  return equal(c.lhs, c.rhs);
                }}},
      {"trans", {2, [](const ConsequencePair& c, const std::vector<ConsequencePair>& p) {
                   return equal(p[0].lhs, c.lhs) && equal(p[0].rhs, p[1].lhs) &&
                          equal(p[1].rhs, c.rhs);
                 }}},
      {"conj-elim-left",
       {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
          return is_and(c.lhs) && equal(c.lhs->left, c.rhs);
        }}},
      {"conj-elim-right",
       {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
          return is_and(c.lhs) && equal(c.lhs->right, c.rhs);
        }}},
      {"conj-intro", {2, [](const ConsequencePair& c, const std::vector<ConsequencePair>& p) {
                        return is_and(c.rhs) && equal(p[0].lhs, c.lhs) &&
                               equal(p[1].lhs, c.lhs) && equal(p[0].rhs, c.rhs->left) &&
                               equal(p[1].rhs, c.rhs->right);
                      }}},
      {"disj-intro-left",
       {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
          return is_or(c.rhs) && equal(c.lhs, c.rhs->left);
        }}},
      {"disj-intro-right",
       {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
          return is_or(c.rhs) && equal(c.lhs, c.rhs->right);
        }}},
      {"disj-elim", {2, [](const ConsequencePair& c, const std::vector<ConsequencePair>& p) {
                       return is_or(c.lhs) && equal(p[0].lhs, c.lhs->left) &&
                              equal(p[1].lhs, c.lhs->right) && equal(p[0].rhs, c.rhs) &&
                              equal(p[1].rhs, c.rhs);
                     }}},
      {"box-top", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                     return c.lhs->kind == FKind::Top && c.rhs->kind == FKind::Box &&
                            c.rhs->left->kind == FKind::Top;
                   }}},
      {"dia-top", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                     return c.lhs->kind == FKind::Top && c.rhs->kind == FKind::Dia &&
                            c.rhs->left->kind == FKind::Top;
                   }}},
      {"dia-bot", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                     return c.rhs->kind == FKind::Bot && c.lhs->kind == FKind::Dia &&
                            c.lhs->left->kind == FKind::Bot;
                   }}},
      {"becker-box", {1, [](const ConsequencePair& c, const std::vector<ConsequencePair>& p) {
                        return c.lhs->kind == FKind::Box && c.rhs->kind == FKind::Box &&
                               equal(c.lhs->left, p[0].lhs) && equal(c.rhs->left, p[0].rhs);
                      }}},
      {"becker-dia", {1, [](const ConsequencePair& c, const std::vector<ConsequencePair>& p) {
                        return c.lhs->kind == FKind::Dia && c.rhs->kind == FKind::Dia &&
                               equal(c.lhs->left, p[0].lhs) && equal(c.rhs->left, p[0].rhs);
                      }}},
      // box phi & box psi <= box(phi & psi)
      {"linearity", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                       if (!is_and(c.lhs) || c.rhs->kind != FKind::Box) return false;
                       const Formula& l = c.lhs->left;
                       const Formula& r = c.lhs->right;
                       if (l->kind != FKind::Box || r->kind != FKind::Box) return false;
                       return is_and(c.rhs->left) && equal(l->left, c.rhs->left->left) &&
                              equal(r->left, c.rhs->left->right);
                     }}},
      // dia phi & box psi <= dia(phi & psi)
      {"duality", {0, [](const ConsequencePair& c, const std::vector<ConsequencePair>&) {
                     if (!is_and(c.lhs) || c.rhs->kind != FKind::Dia) return false;
                     const Formula& l = c.lhs->left;
                     const Formula& r = c.lhs->right;
                     if (l->kind != FKind::Dia || r->kind != FKind::Box) return false;
                     return is_and(c.rhs->left) && equal(l->left, c.rhs->left->left) &&
                            equal(r->left, c.rhs->left->right);
                   }}},
  };
  return table;
}

bool check_node(const Derivation& d, const std::string& path) {
  auto it = rule_table().find(d.rule);
  if (it == rule_table().end()) throw UnknownRule(d.rule);
  const RuleSpec& spec = it->second;
  if (int(d.premises.size()) != spec.premises)
    throw ShapeMismatch(path, "rule " + d.rule + " takes " + std::to_string(spec.premises) +
                                  " premises, got " + std::to_string(d.premises.size()));
  std::vector<ConsequencePair> prem;
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    if (!check_node(d.premises[i], path + ".premises[" + std::to_string(i) + "]"))
      return false;
    prem.push_back(d.premises[i].conclusion);
  }
  if (!spec.check(d.conclusion, prem))
    throw ShapeMismatch(path, "conclusion " + render(d.conclusion) +
                                  " does not instantiate rule " + d.rule);
  return true;
}

}  // namespace

std::vector<std::pair<std::string, int>> derivation_rules() {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [name, spec] : rule_table()) out.emplace_back(name, spec.premises);
  return out;
}

bool check_derivation(const Derivation& d) { return check_node(d, "root"); }

// ---------------------------------------------------------------------------
// Countermodel search

std::optional<Countermodel> countermodel_search(const ConsequencePair& pair, int max_n,
                                                FrameKind kind) {
  bool modal_pair = !modality_free(pair.lhs) || !modality_free(pair.rhs);
  if (modal_pair && kind != FrameKind::Modal)
    throw FrameConditionViolated("modal pair requires a modal frame search");
  if (max_n > enumeration_bound(kind, /*up_to_iso=*/kind != FrameKind::Modal))
    throw BoundExceeded("countermodel search up to n=" + std::to_string(max_n));

  std::optional<Countermodel> found;
  for (int n = 1; n <= max_n && !found; ++n) {
    // One representative per isomorphism class suffices: falsifiability is
    // isomorphism-invariant. Modal frames are enumerated labeled.
    bool iso = kind != FrameKind::Modal;
    enumerate_frames(n, kind, iso, [&](const EnumeratedFrame& ef) {
      if (found) return;
      Verdict v;
      if (kind == FrameKind::Modal) {
        ModalLFrame frame{ef.sl, ef.rel, true};
        v = frame_validity(frame, pair, VClass::AllFilters);
      } else {
        v = frame_validity(ef.sl, pair, VClass::AllFilters);
      }
      if (!v.valid) {
        Countermodel cm;
        cm.sl = ef.sl;
        cm.rel = ef.rel;
        cm.valuation = v.witness->valuation;
        cm.state = v.witness->state;
        cm.n = n;
        found = cm;
      }
    });
  }
  if (found) {
    // The witness must re-verify: state satisfies lhs but not rhs.
    Mask L, R;
    if (kind == FrameKind::Modal) {
      ModalLModel m{{found->sl, found->rel, true}, found->valuation};
      L = eval_model(m, pair.lhs);
      R = eval_model(m, pair.rhs);
    } else {
      LModel m{found->sl, found->valuation};
      L = eval_model(m, pair.lhs);
      R = eval_model(m, pair.rhs);
    }
    if (!mask_has(L, found->state) || mask_has(R, found->state))
      throw InvariantViolation("countermodel witness failed re-verification");
  }
  return found;
}

}  // namespace latlog
