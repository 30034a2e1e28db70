#include "latlog/correspond.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "latlog/semantics.hpp"

namespace latlog {

// ---------------------------------------------------------------------------
// Antecedent normalization
//
// Lattice identities plus the modal collapses box top = dia top = top and
// box bot = dia bot = bot, all of which hold on (serial) modal L-frames.

namespace {

Formula normalize(const Formula& f) {
  switch (f->kind) {
    case FKind::Prop:
    case FKind::Top:
    case FKind::Bot:
      return f;
    case FKind::And: {
      Formula l = normalize(f->left), r = normalize(f->right);
      if (l->kind == FKind::Bot || r->kind == FKind::Bot) return fbot();
      if (l->kind == FKind::Top) return r;
      if (r->kind == FKind::Top) return l;
      return fand(l, r);
    }
    case FKind::Or: {
      Formula l = normalize(f->left), r = normalize(f->right);
      if (l->kind == FKind::Top || r->kind == FKind::Top) return ftop();
      if (l->kind == FKind::Bot) return r;
      if (r->kind == FKind::Bot) return l;
      return forr(l, r);
    }
    case FKind::Box:
    case FKind::Dia: {
      Formula c = normalize(f->left);
      if (c->kind == FKind::Top) return ftop();
      if (c->kind == FKind::Bot) return fbot();
      return f->kind == FKind::Box ? fbox(c) : fdia(c);
    }
  }
  return f;
}

Formula replace_letters(const Formula& f, const std::set<std::string>& keep,
                        const Formula& replacement) {
  switch (f->kind) {
    case FKind::Prop:
      return keep.count(f->name) ? f : replacement;
    case FKind::Top:
    case FKind::Bot:
      return f;
    case FKind::And:
      return fand(replace_letters(f->left, keep, replacement),
                  replace_letters(f->right, keep, replacement));
    case FKind::Or:
      return forr(replace_letters(f->left, keep, replacement),
                  replace_letters(f->right, keep, replacement));
    case FKind::Box:
      return fbox(replace_letters(f->left, keep, replacement));
    case FKind::Dia:
      return fdia(replace_letters(f->left, keep, replacement));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Antecedent decomposition into disjunct blocks (steps 1A-1C): each block
// collects boxed-atom occurrences and the relational side conditions, with
// the universally closed variables it introduced.

struct BoxedOcc {
  std::string prop;
  std::string var;
  int depth;
};

struct RelAtom {
  bool is_rel;               // x R ys[0] when true, abovemeet(x; ys) otherwise
  std::string x;
  std::vector<std::string> ys;
};

struct Block {
  std::vector<BoxedOcc> boxed;
  std::vector<RelAtom> rels;
  std::vector<std::string> vars;
};

Block merge_blocks(const Block& a, const Block& b) {
  Block out = a;
  out.boxed.insert(out.boxed.end(), b.boxed.begin(), b.boxed.end());
  out.rels.insert(out.rels.end(), b.rels.begin(), b.rels.end());
  out.vars.insert(out.vars.end(), b.vars.begin(), b.vars.end());
  return out;
}

std::vector<Block> decompose(const Formula& f, const std::string& v, FreshGen& gen) {
  switch (f->kind) {
    case FKind::Prop:
      return {Block{{{f->name, v, 0}}, {}, {}}};
    case FKind::Top:
      return {Block{}};
    case FKind::Bot:
      return {};
    case FKind::Box: {
      int depth = 0;
      const FormulaNode* cur = f.get();
      while (cur->kind == FKind::Box) {
        ++depth;
        cur = cur->left.get();
      }
      if (cur->kind != FKind::Prop) throw NotSahlqvist(render(f));
      return {Block{{{cur->name, v, depth}}, {}, {}}};
    }
    case FKind::And: {
      std::vector<Block> ls = decompose(f->left, v, gen);
      std::vector<Block> rs = decompose(f->right, v, gen);
      std::vector<Block> out;
      for (const Block& a : ls)
        for (const Block& b : rs) out.push_back(merge_blocks(a, b));
      return out;
    }
    case FKind::Or: {
      std::vector<Block> out = decompose(f->left, v, gen);
      std::vector<Block> rs = decompose(f->right, v, gen);
      out.insert(out.end(), rs.begin(), rs.end());
      std::string y = gen.yv(), z = gen.yv();
      Block intro{{}, {RelAtom{false, v, {y, z}}}, {y, z}};
      std::vector<Block> ls2 = decompose(f->left, y, gen);
      std::vector<Block> rs2 = decompose(f->right, z, gen);
      for (const Block& a : ls2)
        for (const Block& b : rs2) out.push_back(merge_blocks(intro, merge_blocks(a, b)));
      return out;
    }
    case FKind::Dia: {
      std::string y = gen.yv();
      Block intro{{}, {RelAtom{true, v, {y}}}, {y}};
      std::vector<Block> out;
      for (const Block& b : decompose(f->left, y, gen))
        out.push_back(merge_blocks(intro, b));
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Minimal valuations

using SigmaFn = std::function<FO(const std::string&, FreshGen&)>;

// Base logic: the filter generated by the occurrence variables.
SigmaFn sigma_base(std::vector<BoxedOcc> occs) {
  return [occs = std::move(occs)](const std::string& u, FreshGen& gen) -> FO {
    if (occs.empty()) return fo_false();
    std::vector<std::string> ys;
    for (const BoxedOcc& o : occs) ys.push_back(o.var);
    return abovemeet(u, ys, gen);
  };
}

// Modal logic: join over the non-empty occurrence subsets of the existential
// R^n-successor form; x R^0 y is x = y, so depth-0 occurrences contribute
// their own variable directly.
SigmaFn sigma_modal(std::vector<BoxedOcc> occs) {
  return [occs = std::move(occs)](const std::string& u, FreshGen& gen) -> FO {
    if (occs.empty()) return fo_false();
    std::vector<FO> disjuncts;
    const std::size_t k = occs.size();
    for (Mask subset = 1; subset < (Mask{1} << k); ++subset) {
      std::vector<std::string> binders, targets;
      std::vector<FO> chains;
      for (std::size_t j = 0; j < k; ++j) {
        if (!mask_has(subset, int(j))) continue;
        const BoxedOcc& o = occs[j];
        if (o.depth == 0) {
          targets.push_back(o.var);
          continue;
        }
        std::string prev = o.var;
        for (int step = 0; step < o.depth; ++step) {
          std::string next = gen.wv();
          binders.push_back(next);
          chains.push_back(fo_rel(prev, next));
          prev = next;
        }
        targets.push_back(prev);
      }
      FO body = chains.empty() ? abovemeet(u, targets, gen)
                               : fo_and(fo_and_all(chains), abovemeet(u, targets, gen));
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = fo_exists(*it, body);
      disjuncts.push_back(body);
    }
    return fo_or_all(disjuncts);
  };
}

// Standard translation of the consequent with the minimal valuations plugged
// in for the letters; substitution never captures because every instantiation
// draws fresh binders.
FO st_subst(const Formula& f, const std::string& x,
            const std::map<std::string, SigmaFn>& sigma, FreshGen& gen) {
  switch (f->kind) {
    case FKind::Prop:
      return sigma.at(f->name)(x, gen);
    case FKind::Top:
      return fo_eq(x, x);
    case FKind::Bot:
      return fo_not(fo_eq(x, x));
    case FKind::And: {
      FO l = st_subst(f->left, x, sigma, gen);
      FO r = st_subst(f->right, x, sigma, gen);
      return fo_and(std::move(l), std::move(r));
    }
    case FKind::Or: {
      FO a = st_subst(f->left, x, sigma, gen);
      FO b = st_subst(f->right, x, sigma, gen);
      std::string y = gen.yv(), z = gen.yv();
      std::vector<std::string> ys{y, z};
      FO am = abovemeet(x, ys, gen);
      FO wl = st_subst(f->left, y, sigma, gen);
      FO wr = st_subst(f->right, z, sigma, gen);
      FO witness = fo_exists(y, fo_exists(z, fo_and(fo_and(am, wl), wr)));
      return fo_or(fo_or(a, b), witness);
    }
    case FKind::Box: {
      std::string y = gen.yv();
      return fo_forall(y, fo_implies(fo_rel(x, y), st_subst(f->left, y, sigma, gen)));
    }
    case FKind::Dia: {
      std::string y = gen.yv();
      return fo_exists(y, fo_and(fo_rel(x, y), st_subst(f->left, y, sigma, gen)));
    }
  }
  return fo_true();
}

FO rel_atom_fo(const RelAtom& r, FreshGen& gen) {
  if (r.is_rel) return fo_rel(r.x, r.ys[0]);
  return abovemeet(r.x, r.ys, gen);
}

}  // namespace

FO sahlqvist_correspondent_raw(const ConsequencePair& pair) {
  Formula lhs = normalize(pair.lhs);
  std::vector<std::string> lhs_letters = letters(lhs);
  std::set<std::string> keep(lhs_letters.begin(), lhs_letters.end());
  Formula rhs = normalize(replace_letters(pair.rhs, keep, fbot()));

  if (lhs->kind == FKind::Bot) return fo_true();
  if (lhs->kind == FKind::Top) {
    // top <= chi is frame-equivalent to top <= chi[bot/p], which has no
    // second-order quantifiers left.
    Formula closed = normalize(replace_letters(rhs, {}, fbot()));
    FreshGen gen;
    return standard_translation(closed, "x", gen);
  }

  AntecedentClass cls = classify_antecedent(lhs);
  if (cls.tag == AntecedentTag::NotSahlqvist) throw NotSahlqvist(render(lhs));
  const bool modal_route = !modality_free(lhs) || !modality_free(rhs);

  FreshGen gen;
  std::vector<Block> blocks = decompose(lhs, "x", gen);
  std::vector<FO> conjuncts;
  for (const Block& block : blocks) {
    std::map<std::string, SigmaFn> sigma;
    for (const std::string& p : lhs_letters) {
      std::vector<BoxedOcc> occs;
      for (const BoxedOcc& o : block.boxed)
        if (o.prop == p) occs.push_back(o);
      sigma[p] = modal_route ? sigma_modal(std::move(occs)) : sigma_base(std::move(occs));
    }
    std::vector<FO> rels;
    for (const RelAtom& r : block.rels) rels.push_back(rel_atom_fo(r, gen));
    FO impl = fo_implies(fo_and_all(rels), st_subst(rhs, "x", sigma, gen));
    for (auto it = block.vars.rbegin(); it != block.vars.rend(); ++it)
      impl = fo_forall(*it, impl);
    conjuncts.push_back(impl);
  }
  // Blocks share the variables their disjunction introduced; renaming the
  // later occurrences keeps binders globally unique.
  return fo_freshen(fo_and_all(conjuncts), gen);
}

FO sahlqvist_correspondent(const ConsequencePair& pair) {
  return simplify_fo(sahlqvist_correspondent_raw(pair));
}

// ---------------------------------------------------------------------------
// Simplifier

namespace {

void flatten_and(const FO& f, std::vector<FO>& out) {
  if (f->kind == FOKind::And) {
    flatten_and(f->left, out);
    flatten_and(f->right, out);
  } else {
    out.push_back(f);
  }
}

bool mentions_var(const FO& f, const std::string& v) {
  if (!f) return false;
  switch (f->kind) {
    case FOKind::Leq:
    case FOKind::Rel:
    case FOKind::Eq:
      return f->a == v || f->b == v;
    case FOKind::Pred:
      return f->b == v;
    case FOKind::Forall:
    case FOKind::Exists:
      if (f->a == v) return false;  // unique binders make this unreachable
      return mentions_var(f->left, v);
    default:
      return mentions_var(f->left, v) || mentions_var(f->right, v);
  }
}

// In a conjunct list, find "v = t" (either side) with t != v. Substituting t
// must not capture it, so a t that some conjunct rebinds is skipped (engine
// outputs have globally fresh binders and never hit this).
std::optional<std::pair<std::size_t, std::string>> find_point(const std::vector<FO>& cs,
                                                              const std::string& v,
                                                              const FO& extra = nullptr) {
  auto rebinds = [&](const std::string& t) {
    for (const FO& c : cs)
      for (const std::string& b : fo_binders(c))
        if (b == t) return true;
    if (extra)
      for (const std::string& b : fo_binders(extra))
        if (b == t) return true;
    return false;
  };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i]->kind != FOKind::Eq) continue;
    if (cs[i]->a == v && cs[i]->b != v && !rebinds(cs[i]->b))
      return std::make_pair(i, cs[i]->b);
    if (cs[i]->b == v && cs[i]->a != v && !rebinds(cs[i]->a))
      return std::make_pair(i, cs[i]->a);
  }
  return std::nullopt;
}

FO rebuild_and(std::vector<FO> cs) {
  if (cs.empty()) return fo_true();
  return fo_and_all(cs);
}

FO simp_once(const FO& f) {
  switch (f->kind) {
    case FOKind::True:
    case FOKind::False:
    case FOKind::Rel:
    case FOKind::Pred:
      return f;
    case FOKind::Leq:
    case FOKind::Eq:
      if (f->a == f->b) return fo_true();
      return f;
    case FOKind::Not: {
      FO c = simp_once(f->left);
      if (c->kind == FOKind::True) return fo_false();
      if (c->kind == FOKind::False) return fo_true();
      return fo_not(c);
    }
    case FOKind::And: {
      FO l = simp_once(f->left), r = simp_once(f->right);
      if (l->kind == FOKind::False || r->kind == FOKind::False) return fo_false();
      if (l->kind == FOKind::True) return r;
      if (r->kind == FOKind::True) return l;
      if (fo_equal(l, r)) return l;
      return fo_and(l, r);
    }
    case FOKind::Or: {
      FO l = simp_once(f->left), r = simp_once(f->right);
      if (l->kind == FOKind::True || r->kind == FOKind::True) return fo_true();
      if (l->kind == FOKind::False) return r;
      if (r->kind == FOKind::False) return l;
      if (fo_equal(l, r)) return l;
      return fo_or(l, r);
    }
    case FOKind::Implies: {
      FO l = simp_once(f->left), r = simp_once(f->right);
      if (l->kind == FOKind::False || r->kind == FOKind::True) return fo_true();
      if (l->kind == FOKind::True) return r;
      if (fo_equal(l, r)) return fo_true();
      return fo_implies(l, r);
    }
    case FOKind::Forall: {
      FO body = simp_once(f->left);
      if (body->kind == FOKind::True) return fo_true();
      if (body->kind == FOKind::False) return fo_false();  // carriers are nonempty
      if (!mentions_var(body, f->a)) return body;
      // forall w (w <= t -> w <= u)  collapses to  t <= u  on posets.
      if (body->kind == FOKind::Implies && body->left->kind == FOKind::Leq &&
          body->right->kind == FOKind::Leq && body->left->a == f->a &&
          body->right->a == f->a && body->left->b != f->a && body->right->b != f->a)
        return fo_leq(body->left->b, body->right->b);
      // One-point rule: forall v ((v = t & A) -> C).
      if (body->kind == FOKind::Implies) {
        std::vector<FO> cs;
        flatten_and(body->left, cs);
        if (auto hit = find_point(cs, f->a, body->right)) {
          cs.erase(cs.begin() + long(hit->first));
          FO rest = rebuild_and(std::move(cs));
          FO repl = fo_implies(fo_rename(rest, f->a, hit->second),
                               fo_rename(body->right, f->a, hit->second));
          return simp_once(repl);
        }
      }
      return fo_forall(f->a, body);
    }
    case FOKind::Exists: {
      FO body = simp_once(f->left);
      if (body->kind == FOKind::False) return fo_false();
      if (body->kind == FOKind::True) return fo_true();  // carriers are nonempty
      if (!mentions_var(body, f->a)) return body;
      // One-point rule: exists v (v = t & A).
      std::vector<FO> cs;
      flatten_and(body, cs);
      if (auto hit = find_point(cs, f->a)) {
        cs.erase(cs.begin() + long(hit->first));
        return simp_once(fo_rename(rebuild_and(std::move(cs)), f->a, hit->second));
      }
      return fo_exists(f->a, body);
    }
    case FOKind::ForallPred: {
      FO body = simp_once(f->left);
      if (body->kind == FOKind::True) return fo_true();
      return fo_forallpred(f->a, body);
    }
  }
  return f;
}

}  // namespace

FO simplify_fo(const FO& f) {
  FO cur = f;
  for (int round = 0; round < 16; ++round) {
    FO next = simp_once(cur);
    if (fo_equal(next, cur)) return cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Correspondence harness

namespace {

template <typename FrameT>
CorrespondenceReport check_impl(const ConsequencePair& pair, std::span<const FrameT> frames) {
  CorrespondenceReport rep;
  rep.pair = pair;
  rep.correspondent = sahlqvist_correspondent(pair);
  FO global = fo_forall("x", rep.correspondent);
  for (const FrameT& frame : frames) {
    bool valid = frame_validity(frame, pair, VClass::AllFilters).valid;
    bool fo = fo_eval(frame, global);
    ++rep.frames_checked;
    if (valid != fo) {
      rep.equivalent = false;
      Discrepancy d;
      d.frame_index = rep.frames_checked - 1;
      if constexpr (std::is_same_v<FrameT, ModalLFrame>)
        d.frame_desc = "n=" + std::to_string(frame.sl.n()) +
                       " order=" + std::to_string(encode_order(frame.sl.poset.up, frame.sl.n())) +
                       " rel=" + std::to_string(encode_rel(frame.rel, frame.sl.n()));
      else
        d.frame_desc = "n=" + std::to_string(frame.n()) +
                       " order=" + std::to_string(encode_order(frame.poset.up, frame.n()));
      d.frame_valid = valid;
      rep.discrepancy = d;
      break;
    }
  }
  return rep;
}

}  // namespace

CorrespondenceReport correspondence_check(const ConsequencePair& pair,
                                          std::span<const MeetSemilattice> frames) {
  return check_impl<MeetSemilattice>(pair, frames);
}

CorrespondenceReport correspondence_check(const ConsequencePair& pair,
                                          std::span<const ModalLFrame> frames) {
  return check_impl<ModalLFrame>(pair, frames);
}

}  // namespace latlog
