#include "latlog/fol.hpp"

#include <algorithm>
#include <set>

namespace latlog {

namespace {
FO node(FOKind k, std::string a, std::string b, FO l, FO r) {
  auto n = std::make_shared<FONode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}
}  // namespace

FO fo_true() { return node(FOKind::True, "", "", nullptr, nullptr); }
FO fo_false() { return node(FOKind::False, "", "", nullptr, nullptr); }
FO fo_leq(std::string x, std::string y) { return node(FOKind::Leq, std::move(x), std::move(y), nullptr, nullptr); }
FO fo_rel(std::string x, std::string y) { return node(FOKind::Rel, std::move(x), std::move(y), nullptr, nullptr); }
FO fo_eq(std::string x, std::string y) { return node(FOKind::Eq, std::move(x), std::move(y), nullptr, nullptr); }
FO fo_pred(std::string letter, std::string var) { return node(FOKind::Pred, std::move(letter), std::move(var), nullptr, nullptr); }
FO fo_not(FO f) { return node(FOKind::Not, "", "", std::move(f), nullptr); }
FO fo_and(FO l, FO r) { return node(FOKind::And, "", "", std::move(l), std::move(r)); }
FO fo_or(FO l, FO r) { return node(FOKind::Or, "", "", std::move(l), std::move(r)); }
FO fo_implies(FO l, FO r) { return node(FOKind::Implies, "", "", std::move(l), std::move(r)); }
FO fo_forall(std::string var, FO body) { return node(FOKind::Forall, std::move(var), "", std::move(body), nullptr); }
FO fo_exists(std::string var, FO body) { return node(FOKind::Exists, std::move(var), "", std::move(body), nullptr); }
FO fo_forallpred(std::string letter, FO body) { return node(FOKind::ForallPred, std::move(letter), "", std::move(body), nullptr); }

FO fo_and_all(std::span<const FO> fs) {
  if (fs.empty()) return fo_true();
  FO acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = fo_and(acc, fs[i]);
  return acc;
}

FO fo_or_all(std::span<const FO> fs) {
  if (fs.empty()) return fo_false();
  FO acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = fo_or(acc, fs[i]);
  return acc;
}

bool fo_equal(const FO& a, const FO& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->a != b->a || a->b != b->b) return false;
  return fo_equal(a->left, b->left) && fo_equal(a->right, b->right);
}

FO abovemeet(const std::string& x, std::span<const std::string> ys, FreshGen& gen) {
  if (ys.empty()) throw EmptyBound();
  std::vector<std::string> gens;
  for (const std::string& y : ys)
    if (std::find(gens.begin(), gens.end(), y) == gens.end()) gens.push_back(y);
  std::string w = gen.wv();
  std::vector<FO> lows;
  for (const std::string& y : gens) lows.push_back(fo_leq(w, y));
  return fo_forall(w, fo_implies(fo_and_all(lows), fo_leq(w, x)));
}

FO standard_translation(const Formula& f, const std::string& x, FreshGen& gen) {
  switch (f->kind) {
    case FKind::Prop:
      return fo_pred(f->name, x);
    case FKind::Top:
      return fo_eq(x, x);
    case FKind::Bot:
      return fo_not(fo_eq(x, x));
    case FKind::And: {
      FO l = standard_translation(f->left, x, gen);
      FO r = standard_translation(f->right, x, gen);
      return fo_and(std::move(l), std::move(r));
    }
    case FKind::Or: {
      FO a = standard_translation(f->left, x, gen);
      FO b = standard_translation(f->right, x, gen);
      std::string y = gen.yv(), z = gen.yv();
      std::vector<std::string> ys{y, z};
      FO am = abovemeet(x, ys, gen);
      FO wl = standard_translation(f->left, y, gen);
      FO wr = standard_translation(f->right, z, gen);
      FO witness = fo_exists(y, fo_exists(z, fo_and(fo_and(am, wl), wr)));
      return fo_or(fo_or(a, b), witness);
    }
    case FKind::Box: {
      std::string y = gen.yv();
      return fo_forall(y, fo_implies(fo_rel(x, y), standard_translation(f->left, y, gen)));
    }
    case FKind::Dia: {
      std::string y = gen.yv();
      return fo_exists(y, fo_and(fo_rel(x, y), standard_translation(f->left, y, gen)));
    }
  }
  return fo_true();
}

FO isfil(const std::string& letter, FreshGen& gen) {
  std::string vx = gen.yv(), vy = gen.yv(), vz = gen.yv();
  std::vector<std::string> ys{vy, vz};
  FO ante = fo_and(fo_and(fo_pred(letter, vy), fo_pred(letter, vz)), abovemeet(vx, ys, gen));
  return fo_forall(vx, fo_forall(vy, fo_forall(vz, fo_implies(ante, fo_pred(letter, vx)))));
}

FO second_order_translation(const ConsequencePair& pair) {
  FreshGen gen;
  std::vector<std::string> ls = letters(pair);
  std::vector<FO> ante;
  for (const std::string& p : ls) ante.push_back(isfil(p, gen));
  ante.push_back(standard_translation(pair.lhs, "x", gen));
  FO body = fo_forall("x", fo_implies(fo_and_all(ante),
                                      standard_translation(pair.rhs, "x", gen)));
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) body = fo_forallpred(*it, body);
  return body;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Evaluator {
  const FOStructure& s;
  VarEnv env;
  std::map<std::string, Mask> pred_env;
  const std::vector<Filter>* expansion = nullptr;  // filters for ForallPred

  int var(const std::string& v) const {
    auto it = env.find(v);
    if (it == env.end()) throw UnboundVariable(v);
    return it->second;
  }

  bool eval(const FO& f) {
    switch (f->kind) {
      case FOKind::True: return true;
      case FOKind::False: return false;
      case FOKind::Leq: return s.sl->leq(var(f->a), var(f->b));
      case FOKind::Rel: {
        if (s.rel == nullptr) throw Error("relation atom evaluated on a frame without R");
        return mask_has((*s.rel)[var(f->a)], var(f->b));
      }
      case FOKind::Eq: return var(f->a) == var(f->b);
      case FOKind::Pred: {
        int x = var(f->b);
        auto it = pred_env.find(f->a);
        if (it != pred_env.end()) return mask_has(it->second, x);
        if (s.val != nullptr) {
          auto vt = s.val->find(f->a);
          if (vt != s.val->end()) return mask_has(vt->second, x);
        }
        throw PredWithoutValuation("P_" + f->a);
      }
      case FOKind::Not: return !eval(f->left);
      case FOKind::And: return eval(f->left) && eval(f->right);
      case FOKind::Or: return eval(f->left) || eval(f->right);
      case FOKind::Implies: return !eval(f->left) || eval(f->right);
      case FOKind::Forall:
      case FOKind::Exists: {
        bool exists = f->kind == FOKind::Exists;
        auto saved = env.find(f->a) != env.end() ? std::optional<int>(env[f->a])
                                                 : std::nullopt;
        bool out = !exists;
        for (int i = 0; i < s.sl->n(); ++i) {
          env[f->a] = i;
          bool v = eval(f->left);
          if (exists && v) { out = true; break; }
          if (!exists && !v) { out = false; break; }
        }
        if (saved) env[f->a] = *saved; else env.erase(f->a);
        return out;
      }
      case FOKind::ForallPred: {
        if (expansion == nullptr)
          throw Error("second-order quantifier in first-order evaluation");
        auto saved = pred_env.find(f->a) != pred_env.end()
                         ? std::optional<Mask>(pred_env[f->a])
                         : std::nullopt;
        bool out = true;
        for (const Filter& fl : *expansion) {
          pred_env[f->a] = fl.members;
          if (!eval(f->left)) { out = false; break; }
        }
        if (saved) pred_env[f->a] = *saved; else pred_env.erase(f->a);
        return out;
      }
    }
    return false;
  }
};

}  // namespace

bool fo_eval(const FOStructure& s, const FO& f, const VarEnv& env) {
  Evaluator ev{s, env, {}, nullptr};
  return ev.eval(f);
}

bool fo_eval(const MeetSemilattice& sl, const FO& f, const VarEnv& env) {
  FOStructure s{&sl, nullptr, nullptr};
  return fo_eval(s, f, env);
}

bool fo_eval(const ModalLFrame& fr, const FO& f, const VarEnv& env) {
  FOStructure s{&fr.sl, &fr.rel, nullptr};
  return fo_eval(s, f, env);
}

bool fo_eval(const LModel& m, const FO& f, const VarEnv& env) {
  FOStructure s{&m.sl, nullptr, &m.val};
  return fo_eval(s, f, env);
}

bool fo_eval(const ModalLModel& m, const FO& f, const VarEnv& env) {
  FOStructure s{&m.frame.sl, &m.frame.rel, &m.val};
  return fo_eval(s, f, env);
}

bool so_eval(const MeetSemilattice& sl, const FO& f) {
  std::vector<Filter> fs = all_filters(sl);
  FOStructure s{&sl, nullptr, nullptr};
  Evaluator ev{s, {}, {}, &fs};
  return ev.eval(f);
}

bool so_eval(const ModalLFrame& fr, const FO& f) {
  std::vector<Filter> fs = all_filters(fr.sl);
  FOStructure s{&fr.sl, &fr.rel, nullptr};
  Evaluator ev{s, {}, {}, &fs};
  return ev.eval(f);
}

// ---------------------------------------------------------------------------
// Inspection

namespace {

void free_vars_rec(const FO& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case FOKind::Leq:
    case FOKind::Rel:
    case FOKind::Eq:
      if (!bound.count(f->a)) out.insert(f->a);
      if (!bound.count(f->b)) out.insert(f->b);
      return;
    case FOKind::Pred:
      if (!bound.count(f->b)) out.insert(f->b);
      return;
    case FOKind::Forall:
    case FOKind::Exists: {
      bool added = bound.insert(f->a).second;
      free_vars_rec(f->left, bound, out);
      if (added) bound.erase(f->a);
      return;
    }
    default:
      free_vars_rec(f->left, bound, out);
      free_vars_rec(f->right, bound, out);
  }
}

bool no_shadow_rec(const FO& f, std::set<std::string>& bound) {
  if (!f) return true;
  if (f->kind == FOKind::Forall || f->kind == FOKind::Exists) {
    if (bound.count(f->a)) return false;
    bound.insert(f->a);
    bool ok = no_shadow_rec(f->left, bound);
    bound.erase(f->a);
    return ok;
  }
  return no_shadow_rec(f->left, bound) && no_shadow_rec(f->right, bound);
}

}  // namespace

std::vector<std::string> fo_free_vars(const FO& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return {out.begin(), out.end()};
}

namespace {

void binders_rec(const FO& f, std::vector<std::string>& out) {
  if (!f) return;
  if (f->kind == FOKind::Forall || f->kind == FOKind::Exists) out.push_back(f->a);
  binders_rec(f->left, out);
  binders_rec(f->right, out);
}

FO freshen_rec(const FO& f, std::set<std::string>& used, FreshGen& gen) {
  if (!f) return f;
  if (f->kind == FOKind::Forall || f->kind == FOKind::Exists) {
    std::string name = f->a;
    FO body = f->left;
    if (!used.insert(name).second) {
      std::string fresh = name.starts_with("w") ? gen.wv() : gen.yv();
      while (!used.insert(fresh).second)
        fresh = name.starts_with("w") ? gen.wv() : gen.yv();
      body = fo_rename(body, name, fresh);
      name = fresh;
    }
    return node(f->kind, name, "", freshen_rec(body, used, gen), nullptr);
  }
  if (!f->left && !f->right) return f;
  FO l = freshen_rec(f->left, used, gen);  // binder numbering runs left to right
  FO r = freshen_rec(f->right, used, gen);
  return node(f->kind, f->a, f->b, std::move(l), std::move(r));
}

}  // namespace

std::vector<std::string> fo_binders(const FO& f) {
  std::vector<std::string> out;
  binders_rec(f, out);
  return out;
}

FO fo_freshen(const FO& f, FreshGen& gen) {
  std::set<std::string> used;
  return freshen_rec(f, used, gen);
}

bool fo_no_shadowing(const FO& f) {
  std::set<std::string> bound;
  return no_shadow_rec(f, bound);
}

bool fo_first_order(const FO& f) {
  if (!f) return true;
  if (f->kind == FOKind::Pred || f->kind == FOKind::ForallPred) return false;
  return fo_first_order(f->left) && fo_first_order(f->right);
}

FO fo_rename(const FO& f, const std::string& from, const std::string& to) {
  if (!f) return f;
  switch (f->kind) {
    case FOKind::Leq:
    case FOKind::Rel:
    case FOKind::Eq: {
      std::string a = f->a == from ? to : f->a;
      std::string b = f->b == from ? to : f->b;
      return node(f->kind, a, b, nullptr, nullptr);
    }
    case FOKind::Pred:
      return fo_pred(f->a, f->b == from ? to : f->b);
    case FOKind::Forall:
    case FOKind::Exists:
      if (f->a == from) return f;  // rebound below
      return node(f->kind, f->a, "", fo_rename(f->left, from, to), nullptr);
    case FOKind::ForallPred:
      return node(f->kind, f->a, "", fo_rename(f->left, from, to), nullptr);
    default: {
      FO l = fo_rename(f->left, from, to);
      FO r = fo_rename(f->right, from, to);
      if (!f->left && !f->right) return f;
      return node(f->kind, f->a, f->b, l, r);
    }
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int fo_prec(const FO& f) {
  switch (f->kind) {
    case FOKind::Implies: return 1;
    case FOKind::Or: return 2;
    case FOKind::And: return 3;
    case FOKind::Not: return 4;
    default: return 5;  // atoms; quantifiers handled separately
  }
}

bool is_quantifier(const FO& f) {
  return f->kind == FOKind::Forall || f->kind == FOKind::Exists ||
         f->kind == FOKind::ForallPred;
}

void text_rec(const FO& f, std::string& out) {
  switch (f->kind) {
    case FOKind::True: out += "true"; return;
    case FOKind::False: out += "false"; return;
    case FOKind::Leq: out += "leq(" + f->a + "," + f->b + ")"; return;
    case FOKind::Rel: out += "r(" + f->a + "," + f->b + ")"; return;
    case FOKind::Eq: out += f->a + " = " + f->b; return;
    case FOKind::Pred: out += "P_" + f->a + "(" + f->b + ")"; return;
    case FOKind::Not: {
      bool parens = fo_prec(f->left) < 4 || is_quantifier(f->left) ||
                    f->left->kind == FOKind::Eq;
      out += "~";
      if (parens) out += "(";
      text_rec(f->left, out);
      if (parens) out += ")";
      return;
    }
    case FOKind::And:
    case FOKind::Or:
    case FOKind::Implies: {
      int me = fo_prec(f);
      bool right_assoc = f->kind == FOKind::Implies;
      auto child = [&](const FO& c, bool tight) {
        bool parens = is_quantifier(c) || fo_prec(c) < me || (fo_prec(c) == me && tight);
        if (parens) out += "(";
        text_rec(c, out);
        if (parens) out += ")";
      };
      child(f->left, right_assoc);
      out += f->kind == FOKind::And ? " & " : f->kind == FOKind::Or ? " | " : " -> ";
      child(f->right, !right_assoc);
      return;
    }
    case FOKind::Forall:
    case FOKind::Exists:
    case FOKind::ForallPred: {
      out += f->kind == FOKind::Forall ? "forall " : f->kind == FOKind::Exists ? "exists " : "forall P_";
      out += f->a;
      out += ". ";
      const FO& body = f->left;
      bool parens = !is_quantifier(body) && fo_prec(body) < 5;
      if (parens) out += "(";
      text_rec(body, out);
      if (parens) out += ")";
      return;
    }
  }
}

void smt_rec(const FO& f, std::string& out) {
  switch (f->kind) {
    case FOKind::True: out += "true"; return;
    case FOKind::False: out += "false"; return;
    case FOKind::Leq: out += "(leq " + f->a + " " + f->b + ")"; return;
    case FOKind::Rel: out += "(r " + f->a + " " + f->b + ")"; return;
    case FOKind::Eq: out += "(= " + f->a + " " + f->b + ")"; return;
    case FOKind::Pred: out += "(P_" + f->a + " " + f->b + ")"; return;
    case FOKind::Not: out += "(not "; smt_rec(f->left, out); out += ")"; return;
    case FOKind::And: out += "(and "; smt_rec(f->left, out); out += " "; smt_rec(f->right, out); out += ")"; return;
    case FOKind::Or: out += "(or "; smt_rec(f->left, out); out += " "; smt_rec(f->right, out); out += ")"; return;
    case FOKind::Implies: out += "(=> "; smt_rec(f->left, out); out += " "; smt_rec(f->right, out); out += ")"; return;
    case FOKind::Forall:
    case FOKind::Exists:
      out += f->kind == FOKind::Forall ? "(forall ((" : "(exists ((";
      out += f->a + " W)) ";
      smt_rec(f->left, out);
      out += ")";
      return;
    case FOKind::ForallPred:
      throw Error("second-order formula cannot be exported to SMT-LIB");
  }
}

void collect_syms(const FO& f, bool& uses_leq, bool& uses_rel, std::set<std::string>& preds) {
  if (!f) return;
  if (f->kind == FOKind::Leq) uses_leq = true;
  if (f->kind == FOKind::Rel) uses_rel = true;
  if (f->kind == FOKind::Pred) preds.insert(f->a);
  if (f->kind == FOKind::ForallPred)
    throw Error("second-order formula cannot be exported to SMT-LIB");
  collect_syms(f->left, uses_leq, uses_rel, preds);
  collect_syms(f->right, uses_leq, uses_rel, preds);
}

}  // namespace

std::string fo_text(const FO& f) {
  std::string out;
  text_rec(f, out);
  return out;
}

std::string fo_smt_document(const FO& f) {
  bool uses_leq = false, uses_rel = false;
  std::set<std::string> preds;
  collect_syms(f, uses_leq, uses_rel, preds);
  std::string out;
  out += "(set-logic UF)\n(declare-sort W 0)\n";
  if (uses_leq) out += "(declare-fun leq (W W) Bool)\n";
  if (uses_rel) out += "(declare-fun r (W W) Bool)\n";
  for (const std::string& p : preds) out += "(declare-fun P_" + p + " (W) Bool)\n";
  for (const std::string& v : fo_free_vars(f)) out += "(declare-const " + v + " W)\n";
  out += "(assert ";
  smt_rec(f, out);
  out += ")\n(check-sat)\n";
  return out;
}

}  // namespace latlog
