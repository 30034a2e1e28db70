#include "latlog/framedoc.hpp"

#include <json.hpp>

namespace latlog {

using nlohmann::json;

namespace {

std::vector<std::pair<std::string, std::string>> parse_pairs(const json& arr,
                                                             const char* what) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!arr.is_array()) throw Error(std::string(what) + " must be an array of pairs");
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw Error(std::string(what) + " entries must be [label, label]");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

}  // namespace

FrameDocument framedoc_parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("frame document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("frame document must be a JSON object");
  FrameDocument doc;
  if (j.contains("version")) {
    if (j["version"].is_string()) doc.version = j["version"].get<std::string>();
    else doc.version = j["version"].dump();
  }
  if (!j.contains("elements") || !j["elements"].is_array())
    throw Error("frame document needs an \"elements\" array");
  for (const json& e : j["elements"]) {
    if (!e.is_string()) throw Error("element labels must be strings");
    doc.elements.push_back(e.get<std::string>());
  }
  if (doc.elements.empty()) throw Error("frame document needs at least one element");
  bool has_pairs = j.contains("leq_pairs"), has_meet = j.contains("meet");
  if (has_pairs == has_meet)
    throw Error("frame document needs exactly one of \"leq_pairs\" or \"meet\"");
  if (has_pairs) doc.leq_pairs = parse_pairs(j["leq_pairs"], "leq_pairs");
  if (has_meet) {
    if (!j["meet"].is_array()) throw Error("meet must be an n x n table of labels");
    std::vector<std::vector<std::string>> table;
    for (const json& row : j["meet"]) {
      if (!row.is_array()) throw Error("meet must be an n x n table of labels");
      std::vector<std::string> r;
      for (const json& c : row) {
        if (!c.is_string()) throw Error("meet table entries must be labels");
        r.push_back(c.get<std::string>());
      }
      table.push_back(std::move(r));
    }
    doc.meet = std::move(table);
  }
  if (j.contains("R")) doc.r = parse_pairs(j["R"], "R");
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw Error("valuation must map letters to label lists");
    std::map<std::string, std::vector<std::string>> val;
    for (auto it = j["valuation"].begin(); it != j["valuation"].end(); ++it) {
      if (!it.value().is_array()) throw Error("valuation entries must be label lists");
      std::vector<std::string> labels;
      for (const json& l : it.value()) {
        if (!l.is_string()) throw Error("valuation entries must be label lists");
        labels.push_back(l.get<std::string>());
      }
      val[it.key()] = std::move(labels);
    }
    doc.valuation = std::move(val);
  }
  return doc;
}

std::string framedoc_dump(const FrameDocument& doc) {
  json j;
  j["version"] = doc.version;
  j["elements"] = doc.elements;
  if (doc.leq_pairs) {
    json arr = json::array();
    for (const auto& [a, b] : *doc.leq_pairs) arr.push_back(json::array({a, b}));
    j["leq_pairs"] = arr;
  }
  if (doc.meet) j["meet"] = *doc.meet;
  if (doc.r) {
    json arr = json::array();
    for (const auto& [a, b] : *doc.r) arr.push_back(json::array({a, b}));
    j["R"] = arr;
  }
  if (doc.valuation) {
    json v = json::object();
    for (const auto& [letter, labels] : *doc.valuation) v[letter] = labels;
    j["valuation"] = v;
  }
  return j.dump(2);
}

FrameDocument framedoc_of(const MeetSemilattice& sl) {
  FrameDocument doc;
  doc.elements = sl.poset.labels;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < sl.n(); ++i)
    for (int k : mask_elements(sl.up(i)))
      if (k != i) pairs.emplace_back(sl.poset.labels[i], sl.poset.labels[k]);
  doc.leq_pairs = std::move(pairs);
  return doc;
}

FrameDocument framedoc_of(const ModalLFrame& frame) {
  FrameDocument doc = framedoc_of(frame.sl);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < frame.n(); ++i)
    for (int k : mask_elements(frame.rel[i]))
      pairs.emplace_back(frame.sl.poset.labels[i], frame.sl.poset.labels[k]);
  doc.r = std::move(pairs);
  return doc;
}

MeetSemilattice to_semilattice(const FrameDocument& doc) {
  if (doc.leq_pairs) {
    Poset p = validate_poset(doc.elements, *doc.leq_pairs);
    return meet_structure(p);
  }
  // Meet table given: recover the order via x <= y iff meet(x, y) = x, then
  // check the table against the greatest lower bounds of that order.
  const auto& table = *doc.meet;
  const int n = int(doc.elements.size());
  if (int(table.size()) != n) throw Error("meet table must have one row per element");
  Poset skeleton;
  skeleton.labels = doc.elements;
  skeleton.n = n;
  skeleton.up.assign(n, 0);
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i)
    if (!index.emplace(doc.elements[i], i).second) throw DuplicateLabel(doc.elements[i]);
  std::vector<int> meets(std::size_t(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    if (int(table[i].size()) != n) throw Error("meet table must be n x n");
    for (int j = 0; j < n; ++j) {
      auto it = index.find(table[i][j]);
      if (it == index.end()) throw Error("meet table entry is not an element: " + table[i][j]);
      meets[std::size_t(i) * n + j] = it->second;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (meets[std::size_t(i) * n + j] == i) skeleton.up[i] |= mask_bit(j);
  for (int i = 0; i < n; ++i) skeleton.up[i] |= mask_bit(i);
  if (!is_partial_order(skeleton.up, n))
    throw Error("meet table does not induce a partial order");
  MeetSemilattice sl = meet_structure(skeleton);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sl.meet(i, j) != meets[std::size_t(i) * n + j])
        throw Error("meet table disagrees with the greatest lower bound of " +
                    doc.elements[i] + " and " + doc.elements[j]);
  return sl;
}

BoundedLattice to_lattice(const FrameDocument& doc) {
  MeetSemilattice sl = to_semilattice(doc);
  return lattice_structure(sl.poset);
}

ModalLFrame to_modal_frame(const FrameDocument& doc) {
  MeetSemilattice sl = to_semilattice(doc);
  if (!doc.r) throw Error("modal frame document needs an \"R\" array");
  std::vector<Mask> rel(sl.n(), 0);
  for (const auto& [a, b] : *doc.r) {
    int ia = sl.poset.index_of(a), ib = sl.poset.index_of(b);
    if (ia < 0) throw Error("unknown label in R: " + a);
    if (ib < 0) throw Error("unknown label in R: " + b);
    rel[ia] |= mask_bit(ib);
  }
  return ModalLFrame{std::move(sl), std::move(rel), false};
}

Valuation to_valuation(const FrameDocument& doc, const MeetSemilattice& sl) {
  Valuation out;
  if (!doc.valuation) return out;
  for (const auto& [letter, labels] : *doc.valuation) {
    Mask m = 0;
    for (const std::string& l : labels) {
      int i = sl.poset.index_of(l);
      if (i < 0) throw Error("unknown label in valuation of " + letter + ": " + l);
      m |= mask_bit(i);
    }
    if (!is_filter(sl, m))
      throw Error("valuation of " + letter + " is not a filter: " + sl.poset.label_set(m));
    out[letter] = m;
  }
  return out;
}

namespace {

Derivation derivation_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw Error("derivation node at " + path + " must be an object");
  if (!j.contains("conclusion") || !j["conclusion"].is_string())
    throw Error("derivation node at " + path + " needs a \"conclusion\" string");
  if (!j.contains("rule") || !j["rule"].is_string())
    throw Error("derivation node at " + path + " needs a \"rule\" string");
  Derivation d;
  d.conclusion = parse_pair(j["conclusion"].get<std::string>());
  d.rule = j["rule"].get<std::string>();
  if (j.contains("premises")) {
    if (!j["premises"].is_array())
      throw Error("derivation premises at " + path + " must be an array");
    int k = 0;
    for (const json& p : j["premises"])
      d.premises.push_back(derivation_from_json(p, path + ".premises[" + std::to_string(k++) + "]"));
  }
  return d;
}

}  // namespace

Derivation derivation_parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("derivation is not valid JSON: ") + e.what());
  }
  return derivation_from_json(j, "root");
}

}  // namespace latlog
