#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace redlab {

// A finite word of natural numbers: the desk-scale stand-in for a type-1
// object u, with w[i] holding u(i).
using Word = std::vector<unsigned>;

// Read a word as a 0/1 sequence: nonzero entries count as 1.
Word collapse01(const Word& w);

// All words of a fixed length with entries below a bound, in lexicographic
// order (equivalently, base-`bound` counting with the most significant digit
// first).
struct WordSpace {
  std::size_t length = 0;
  unsigned bound = 1;

  std::uint64_t count() const;  // bound^length; throws std::overflow_error
  Word at(std::uint64_t index) const;
  // Visit every word in order; the callback returns false to stop early.
  void for_each(const std::function<bool(const Word&)>& fn) const;
};

}  // namespace redlab
