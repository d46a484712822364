#pragma once

#include <set>
#include <variant>
#include <vector>

#include "redlab/word.hpp"

namespace redlab {

// A set of 0/1 words with a declared working depth, meant to be downward
// closed (every prefix of a member is a member).  Membership collapses
// entries through v != 0 |-> 1 before testing, so callers may pass raw
// words.  Explicit trees answer by set lookup; secret-prefix trees contain
// exactly the words agreeing with the secret on their first min(|w|, |s|)
// positions, so their depth-D paths are the extensions of the secret.
class Tree {
 public:
  static Tree explicit_tree(std::vector<Word> words, unsigned depth);
  static Tree full(unsigned depth);  // secret-prefix with the empty secret
  static Tree secret_prefix(Word secret, unsigned depth);

  bool contains(const Word& w) const;
  unsigned depth() const { return depth_; }

  bool is_explicit() const;
  const std::set<Word>& words() const;  // explicit trees only
  const Word& secret() const;           // secret trees only

 private:
  struct ExplicitRep {
    std::set<Word> members;
  };
  struct SecretRep {
    Word secret;
  };
  std::variant<ExplicitRep, SecretRep> rep_;
  unsigned depth_ = 0;
};

// True iff every member word of length <= depth has all its prefixes in the
// tree.  Explicit trees are checked member by member; program trees are
// checked by scanning all 0/1 words up to min(depth, 20).
bool check_downward_closed(const Tree& t, unsigned depth);

// Every prefix of w (lengths 0..|w|) is in the tree.
bool is_path_prefix(const Tree& t, const Word& w);

}  // namespace redlab
