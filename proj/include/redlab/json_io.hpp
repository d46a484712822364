#pragma once

// JSON forms for the file formats and reports.  Kept out of the core headers
// so only the CLI and tests pay for the include.

#include <json.hpp>

#include "redlab/adversary.hpp"
#include "redlab/ramsey.hpp"
#include "redlab/reductions.hpp"
#include "redlab/tree.hpp"

namespace redlab {

using Json = nlohmann::ordered_json;

inline Json word_to_json(const Word& w) { return Json(w); }

inline Word word_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of naturals");
  Word w;
  w.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw std::invalid_argument("word entries must be non-negative integers");
    w.push_back(v.get<unsigned>());
  }
  return w;
}

inline Json coloring_to_json(const Coloring& c) {
  Json j;
  j["n"] = c.exponent;
  j["N"] = c.vertices;
  j["k"] = c.colors;
  j["table"] = word_to_json(c.table);
  return j;
}

inline Coloring coloring_from_json(const Json& j) {
  Coloring c;
  c.exponent = j.at("n").get<unsigned>();
  c.vertices = j.at("N").get<unsigned>();
  c.colors = j.at("k").get<unsigned>();
  c.table = word_from_json(j.at("table"));
  if (!c.well_formed())
    throw std::invalid_argument("coloring table length does not match C(N,n)");
  return c;
}

inline Json homset_to_json(const HomSet& h) {
  Json j;
  j["vertices"] = word_to_json(h.vertices);
  j["color"] = h.color;
  return j;
}

inline Json tree_to_json(const Tree& t) {
  Json j;
  if (t.is_explicit()) {
    j["kind"] = "explicit";
    j["depth"] = t.depth();
    Json words = Json::array();
    for (const Word& w : t.words()) words.push_back(word_to_json(w));
    j["words"] = words;
  } else {
    j["kind"] = "secret";
    j["secret"] = word_to_json(t.secret());
    j["depth"] = t.depth();
  }
  return j;
}

inline Tree tree_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  unsigned depth = j.at("depth").get<unsigned>();
  if (kind == "explicit") {
    std::vector<Word> words;
    for (const auto& w : j.at("words")) words.push_back(word_from_json(w));
    return Tree::explicit_tree(std::move(words), depth);
  }
  if (kind == "secret") return Tree::secret_prefix(word_from_json(j.at("secret")), depth);
  throw std::invalid_argument("unknown tree kind '" + kind + "'");
}

inline Json use_to_json(const UseRecord& u) {
  Json j = Json::array();
  for (auto pos : u.positions()) j.push_back(pos);
  return j;
}

inline Json witness_to_json(const CounterWitness& w) {
  Json j;
  j["use"] = use_to_json(w.use);
  j["s0"] = word_to_json(w.s0);
  j["v0"] = word_to_json(w.v0);
  j["failure_depth"] = w.failure_depth;
  return j;
}

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["source"] = r.source;
  j["target"] = r.target;
  j["seed"] = r.seed;
  j["exhaustive"] = r.exhaustive;
  j["checked"] = r.instances_checked;
  j["pass"] = r.pass();
  Json fwd = Json::array();
  for (const auto& u : r.forward_failures) fwd.push_back(word_to_json(u));
  j["forward_failures"] = fwd;
  j["forward_failure_count"] = r.forward_failure_count;
  Json bwd = Json::array();
  for (const auto& [u, y] : r.backward_failures)
    bwd.push_back(Json::array({word_to_json(u), word_to_json(y)}));
  j["backward_failures"] = bwd;
  j["backward_failure_count"] = r.backward_failure_count;
  Json errs = Json::array();
  for (const auto& [u, msg] : r.errors) errs.push_back(Json::array({word_to_json(u), msg}));
  j["errors"] = errs;
  j["error_count"] = r.error_count;
  j["max_use"] = r.max_use;
  j["counter"] = r.evaluations;
  return j;
}

}  // namespace redlab
