#include "redlab/word.hpp"

#include <stdexcept>

namespace redlab {

Word collapse01(const Word& w) {
  Word out(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] != 0 ? 1u : 0u;
  return out;
}

std::uint64_t WordSpace::count() const {
  if (bound == 0) return length == 0 ? 1 : 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (total > UINT64_MAX / bound) throw std::overflow_error("word space too large to count");
    total *= bound;
  }
  return total;
}

Word WordSpace::at(std::uint64_t index) const {
  Word w(length, 0);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<unsigned>(index % bound);
    index /= bound;
  }
  if (index != 0) throw std::out_of_range("word index out of range");
  return w;
}

void WordSpace::for_each(const std::function<bool(const Word&)>& fn) const {
  Word w(length, 0);
  if (bound == 0 && length > 0) return;
  for (;;) {
    if (!fn(w)) return;
    // odometer increment, least significant digit last
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (++w[i] < bound) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

}  // namespace redlab
