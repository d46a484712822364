#include "redlab/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace redlab {

Tree Tree::explicit_tree(std::vector<Word> words, unsigned depth) {
  Tree t;
  ExplicitRep rep;
  for (auto& w : words) rep.members.insert(collapse01(w));
  t.rep_ = std::move(rep);
  t.depth_ = depth;
  return t;
}

Tree Tree::full(unsigned depth) { return secret_prefix({}, depth); }

Tree Tree::secret_prefix(Word secret, unsigned depth) {
  if (secret.size() > depth) throw std::invalid_argument("secret longer than the tree depth");
  Tree t;
  t.rep_ = SecretRep{collapse01(secret)};
  t.depth_ = depth;
  return t;
}

bool Tree::contains(const Word& w) const {
  if (auto* e = std::get_if<ExplicitRep>(&rep_)) {
    return e->members.count(collapse01(w)) != 0;
  }
  const Word& s = std::get<SecretRep>(rep_).secret;
  std::size_t n = std::min(w.size(), s.size());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned bit = w[i] != 0 ? 1u : 0u;
    if (bit != s[i]) return false;
  }
  return true;
}

bool Tree::is_explicit() const { return std::holds_alternative<ExplicitRep>(rep_); }

const std::set<Word>& Tree::words() const {
  return std::get<ExplicitRep>(rep_).members;
}

const Word& Tree::secret() const { return std::get<SecretRep>(rep_).secret; }

bool check_downward_closed(const Tree& t, unsigned depth) {
  if (t.is_explicit()) {
    for (const Word& w : t.words()) {
      if (w.size() > depth) continue;
      Word prefix;
      for (std::size_t len = 0; len < w.size(); ++len) {
        prefix.assign(w.begin(), w.begin() + static_cast<long>(len));
        if (!t.contains(prefix)) return false;
      }
    }
    return true;
  }
  // program tree: every member's immediate parent must be a member; scan all
  // 0/1 words up to a feasible depth
  unsigned cap = std::min(depth, 16u);
  bool ok = true;
  for (unsigned len = 1; len <= cap && ok; ++len) {
    WordSpace space{len, 2};
    space.for_each([&](const Word& w) {
      if (t.contains(w)) {
        Word parent(w.begin(), w.end() - 1);
        if (!t.contains(parent)) ok = false;
      }
      return ok;
    });
  }
  return ok;
}

bool is_path_prefix(const Tree& t, const Word& w) {
  Word prefix;
  prefix.reserve(w.size());
  if (!t.contains(prefix)) return false;
  for (unsigned v : w) {
    prefix.push_back(v);
    if (!t.contains(prefix)) return false;
  }
  return true;
}

}  // namespace redlab
