#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "latlog/correspond.hpp"
#include "latlog/duality.hpp"
#include "latlog/fol.hpp"
#include "latlog/framedoc.hpp"
#include "latlog/prover.hpp"
#include "latlog/suite.hpp"

using nlohmann::json;
using namespace latlog;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> labels_of(const Poset& p, Mask m) {
  std::vector<std::string> out;
  for (int i : mask_elements(m)) out.push_back(p.labels[i]);
  return out;
}

json witness_json(const MeetSemilattice& sl, const Witness& w) {
  json jw;
  json val = json::object();
  for (const auto& [letter, mask] : w.valuation) val[letter] = labels_of(sl.poset, mask);
  jw["valuation"] = val;
  jw["state"] = sl.poset.labels[w.state];
  return jw;
}

VClass vclass_of(const std::string& s) {
  if (s == "all") return VClass::AllFilters;
  if (s == "principal") return VClass::PrincipalFilters;
  throw Error("unknown valuation class: " + s);
}

FrameKind kind_of(const std::string& s) {
  if (s == "semilattice") return FrameKind::Semilattice;
  if (s == "lattice") return FrameKind::Lattice;
  if (s == "modal") return FrameKind::Modal;
  throw Error("unknown frame kind: " + s);
}

json theta_json(const BoundedLattice& a, const DualityResult& d) {
  json out = json::object();
  for (int e = 0; e < a.n(); ++e) {
    json pts = json::array();
    for (int i : mask_elements(d.theta[e]))
      pts.push_back(a.sl.poset.label_set(d.point_filter[i]));
    out[a.sl.poset.labels[e]] = pts;
  }
  return out;
}

int cmd_parse(const std::string& formula, const std::string& pair_text, bool as_json) {
  if (!formula.empty()) {
    Formula f = parse_formula(formula);
    if (as_json) {
      json j{{"canonical", render(f)}, {"sexp", sexp(f)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << render(f) << "\n" << sexp(f) << "\n";
    }
  } else {
    ConsequencePair p = parse_pair(pair_text);
    if (as_json) {
      json j{{"canonical", render(p)},
             {"lhs", sexp(p.lhs)},
             {"rhs", sexp(p.rhs)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << render(p) << "\n(" << sexp(p.lhs) << " <= " << sexp(p.rhs) << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for positive (modal) logic over meet-semilattice frames"};
  app.require_subcommand(1);

  std::string formula_text, pair_text, frame_path, var = "x";
  std::string vclass = "all", format = "text", kind = "semilattice", completion_kind = "filter";
  std::string derivation_path;
  long long budget = kDefaultBudget;
  int max_n = 5;
  bool up_to_iso = false, emit = false, local = false;
  int threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::uint32_t seed = 20;

  auto* c_parse = app.add_subcommand("parse", "parse a formula or pair and echo it");
  c_parse->add_option("--formula", formula_text, "formula text");
  c_parse->add_option("--pair", pair_text, "consequence pair text");
  c_parse->add_option("--format", format, "text|json");

  auto* c_eval = app.add_subcommand("eval", "evaluate a formula in a frame/model document");
  c_eval->add_option("--frame", frame_path, "frame JSON (valuation required)")->required();
  c_eval->add_option("--formula", formula_text, "formula text")->required();
  c_eval->add_option("--format", format, "text|json");

  auto* c_val = app.add_subcommand("validity", "decide frame validity of a pair");
  c_val->add_option("--frame", frame_path)->required();
  c_val->add_option("--pair", pair_text)->required();
  c_val->add_option("--vclass", vclass, "all|principal");
  c_val->add_option("--budget", budget, "valuation enumeration budget");
  c_val->add_option("--format", format, "text|json");

  auto* c_check = app.add_subcommand("check-frame", "modal frame condition report");
  c_check->add_option("--frame", frame_path)->required();
  c_check->add_option("--format", format, "text|json");

  auto* c_corr = app.add_subcommand("correspond", "first-order correspondent of a pair");
  c_corr->add_option("--pair", pair_text)->required();
  c_corr->add_option("--format", format, "text|json|smt");
  c_corr->add_flag("--local", local, "print the local correspondent (free x)");

  auto* c_st = app.add_subcommand("translate-st", "standard translation");
  c_st->add_option("--formula", formula_text)->required();
  c_st->add_option("--var", var, "free world variable");
  c_st->add_option("--format", format, "text|smt");

  auto* c_so = app.add_subcommand("translate-so", "second-order translation of a pair");
  c_so->add_option("--pair", pair_text)->required();

  auto* c_dual = app.add_subcommand("dualize", "dual frame of a lattice with theta");
  c_dual->add_option("--lattice", frame_path)->required();

  auto* c_complete = app.add_subcommand("complete", "filter or F2 completion of a lattice");
  c_complete->add_option("--lattice", frame_path)->required();
  c_complete->add_option("--kind", completion_kind, "filter|f2");

  auto* c_enum = app.add_subcommand("enumerate", "enumerate frames");
  c_enum->add_option("--n", max_n, "carrier size")->required();
  c_enum->add_option("--kind", kind, "semilattice|lattice|modal");
  c_enum->add_flag("--iso", up_to_iso, "one frame per isomorphism class");
  c_enum->add_flag("--emit", emit, "print each frame document");

  auto* c_prove = app.add_subcommand("prove", "free-lattice decision or derivation check");
  c_prove->add_option("--pair", pair_text, "modality-free pair");
  c_prove->add_option("--derivation", derivation_path, "derivation JSON file");

  auto* c_cm = app.add_subcommand("countermodel", "search for a falsifying frame");
  c_cm->add_option("--pair", pair_text)->required();
  c_cm->add_option("--max-n", max_n, "largest carrier size");
  c_cm->add_option("--kind", kind, "lattice|semilattice|modal (default by pair)");
  c_cm->add_option("--format", format, "text|json");

  auto* c_suite = app.add_subcommand("suite", "run the acceptance criteria");
  c_suite->add_option("--threads", threads, "criteria thread count");
  c_suite->add_option("--seed", seed, "seed for sampled property checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_parse) {
      if (formula_text.empty() == pair_text.empty())
        throw Error("parse needs exactly one of --formula / --pair");
      return cmd_parse(formula_text, pair_text, format == "json");
    }

    if (*c_eval) {
      FrameDocument doc = framedoc_parse(slurp(frame_path));
      Formula f = parse_formula(formula_text);
      Mask truth;
      MeetSemilattice sl = to_semilattice(doc);
      Valuation val = to_valuation(doc, sl);
      if (modality_free(f)) {
        truth = eval_model(LModel{sl, val}, f);
      } else {
        ModalLFrame frame = to_modal_frame(doc);
        truth = eval_model(ModalLModel{frame, val}, f);
      }
      if (format == "json") {
        json j{{"formula", render(f)}, {"truth_set", labels_of(sl.poset, truth)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << sl.poset.label_set(truth) << "\n";
      }
      return 0;
    }

    if (*c_val) {
      FrameDocument doc = framedoc_parse(slurp(frame_path));
      ConsequencePair pair = parse_pair(pair_text);
      bool modal = !modality_free(pair.lhs) || !modality_free(pair.rhs);
      Verdict v;
      MeetSemilattice sl = to_semilattice(doc);
      if (modal || doc.r) {
        ModalLFrame frame = to_modal_frame(doc);
        v = frame_validity(frame, pair, vclass_of(vclass), budget);
      } else {
        v = frame_validity(sl, pair, vclass_of(vclass), budget);
      }
      if (format == "json") {
        json j{{"pair", render(pair)}, {"valid", v.valid}};
        if (!v.valid) j["witness"] = witness_json(sl, *v.witness);
        std::cout << j.dump(2) << "\n";
      } else if (v.valid) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid at state " << sl.poset.labels[v.witness->state] << " under:\n";
        for (const auto& [letter, mask] : v.witness->valuation)
          std::cout << "  V(" << letter << ") = " << sl.poset.label_set(mask) << "\n";
      }
      return v.valid ? 0 : 1;
    }

    if (*c_check) {
      FrameDocument doc = framedoc_parse(slurp(frame_path));
      ModalLFrame frame = to_modal_frame(doc);
      ConditionReport rep = modal_frame_check(frame.sl, frame.rel);
      if (format == "json") {
        json j;
        for (std::size_t i = 0; i < rep.basic.size(); ++i) {
          json c{{"ok", rep.basic[i].ok}};
          if (!rep.basic[i].ok) c["witness"] = rep.basic[i].witness;
          j["basic"][std::to_string(i + 1)] = c;
        }
        j["principal"]["0"] = json{{"ok", rep.principal0.ok}};
        for (std::size_t i = 0; i < rep.principal.size(); ++i) {
          json c{{"ok", rep.principal[i].ok}};
          if (!rep.principal[i].ok) c["witness"] = rep.principal[i].witness;
          j["principal"][std::to_string(i + 1)] = c;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < rep.basic.size(); ++i)
          std::cout << "(" << i + 1 << ") " << (rep.basic[i].ok ? "ok" : "FAIL " + rep.basic[i].witness)
                    << "\n";
        std::cout << "(p0) " << (rep.principal0.ok ? "ok" : "FAIL " + rep.principal0.witness) << "\n";
        for (std::size_t i = 0; i < rep.principal.size(); ++i)
          std::cout << "(p" << i + 1 << ") "
                    << (rep.principal[i].ok ? "ok" : "FAIL " + rep.principal[i].witness) << "\n";
      }
      return rep.basic_ok() ? 0 : 1;
    }

    if (*c_corr) {
      ConsequencePair pair = parse_pair(pair_text);
      FO corr = sahlqvist_correspondent(pair);
      FO printed = local ? corr : simplify_fo(fo_forall("x", corr));
      if (format == "smt") {
        std::cout << fo_smt_document(printed);
      } else if (format == "json") {
        json j{{"pair", render(pair)}, {"correspondent", fo_text(printed)}, {"local", local}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << fo_text(printed) << "\n";
      }
      return 0;
    }

    if (*c_st) {
      Formula f = parse_formula(formula_text);
      FreshGen gen;
      FO st = standard_translation(f, var, gen);
      if (format == "smt") std::cout << fo_smt_document(st);
      else std::cout << fo_text(st) << "\n";
      return 0;
    }

    if (*c_so) {
      ConsequencePair pair = parse_pair(pair_text);
      std::cout << fo_text(second_order_translation(pair)) << "\n";
      return 0;
    }

    if (*c_dual) {
      BoundedLattice lat = to_lattice(framedoc_parse(slurp(frame_path)));
      DualityResult d = dual_frame(lat);
      json j;
      j["dual_frame"] = json::parse(framedoc_dump(framedoc_of(d.dual)));
      j["theta"] = theta_json(lat, d);
      IsoReport rep = double_dual_check(lat);
      j["double_dual_iso"] = rep.is_iso;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*c_complete) {
      BoundedLattice lat = to_lattice(framedoc_parse(slurp(frame_path)));
      Completion c = completion_kind == "f2" ? f2_completion(lat) : filter_completion(lat);
      if (completion_kind != "f2" && completion_kind != "filter")
        throw Error("unknown completion kind: " + completion_kind);
      json j;
      j["kind"] = completion_kind;
      j["completion"] = json::parse(framedoc_dump(framedoc_of(c.lattice.sl)));
      json embed = json::object();
      for (int x = 0; x < lat.n(); ++x)
        embed[lat.sl.poset.labels[x]] = c.lattice.sl.poset.labels[c.embed[x]];
      j["embed"] = embed;
      j["iso_to_original"] = completion_iso(lat, c).is_iso;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*c_enum) {
      int count = 0;
      enumerate_frames(max_n, kind_of(kind), up_to_iso, [&](const EnumeratedFrame& ef) {
        ++count;
        if (emit) {
          if (kind_of(kind) == FrameKind::Modal) {
            ModalLFrame frame{ef.sl, ef.rel, true};
            std::cout << framedoc_dump(framedoc_of(frame)) << "\n";
          } else {
            std::cout << framedoc_dump(framedoc_of(ef.sl)) << "\n";
          }
        }
      });
      std::cout << count << "\n";
      return 0;
    }

    if (*c_prove) {
      if (!derivation_path.empty()) {
        Derivation d = derivation_parse(slurp(derivation_path));
        try {
          check_derivation(d);
        } catch (const UnknownRule& e) {
          std::cout << "derivation rejected: " << e.what() << "\n";
          return 1;
        } catch (const ShapeMismatch& e) {
          std::cout << "derivation rejected: " << e.what() << "\n";
          return 1;
        }
        std::cout << "derivation ok\n";
        return 0;
      }
      if (pair_text.empty()) throw Error("prove needs --pair or --derivation");
      ConsequencePair pair = parse_pair(pair_text);
      bool ok = whitman_decide(pair);
      std::cout << (ok ? "derivable (valid in all lattices)\n"
                       : "underivable (fails in some lattice)\n");
      return ok ? 0 : 1;
    }

    if (*c_cm) {
      ConsequencePair pair = parse_pair(pair_text);
      bool modal = !modality_free(pair.lhs) || !modality_free(pair.rhs);
      FrameKind k = c_cm->count("--kind") ? kind_of(kind)
                                          : (modal ? FrameKind::Modal : FrameKind::Lattice);
      auto cm = countermodel_search(pair, max_n, k);
      if (!cm) {
        std::cout << "no countermodel up to n=" << max_n << "\n";
        return 0;
      }
      if (format == "json") {
        json j;
        FrameDocument doc = cm->rel.empty()
                                ? framedoc_of(cm->sl)
                                : framedoc_of(ModalLFrame{cm->sl, cm->rel, true});
        std::map<std::string, std::vector<std::string>> val;
        for (const auto& [letter, mask] : cm->valuation)
          val[letter] = labels_of(cm->sl.poset, mask);
        doc.valuation = val;
        j["frame"] = json::parse(framedoc_dump(doc));
        j["state"] = cm->sl.poset.labels[cm->state];
        j["n"] = cm->n;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "countermodel at n=" << cm->n << ", state "
                  << cm->sl.poset.labels[cm->state] << "\n";
        FrameDocument doc = cm->rel.empty()
                                ? framedoc_of(cm->sl)
                                : framedoc_of(ModalLFrame{cm->sl, cm->rel, true});
        std::cout << framedoc_dump(doc) << "\n";
        for (const auto& [letter, mask] : cm->valuation)
          std::cout << "V(" << letter << ") = " << cm->sl.poset.label_set(mask) << "\n";
      }
      return 1;
    }

    if (*c_suite) {
      SuiteReport rep = run_suite(SuiteOptions{threads, seed});
      std::cout << rep.text;
      return rep.all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
