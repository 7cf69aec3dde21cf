#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace bsstar {

// Dimensions supported by every structure in this library.
constexpr int min_dimension = 3;
constexpr int max_dimension = 9;

std::uint32_t factorial(int n);

// An arrangement of the symbols 1..n.  Position i (1-based) holds symbol(i).
// The label-string form is exactly n digits, e.g. "2413".
class Permutation {
public:
  Permutation() = default;  // dimension 0, used only as an empty slot

  int n() const { return n_; }
  int symbol(int pos) const { return symbols_[pos - 1]; }  // pos in 1..n
  int last_symbol() const { return symbols_[n_ - 1]; }
  int first_symbol() const { return symbols_[0]; }

  bool operator==(const Permutation& o) const {
    return n_ == o.n_ && symbols_ == o.symbols_;
  }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const;

  // Construction goes through the free functions below; they validate.
  static Permutation unchecked(int n, const std::array<std::uint8_t, 9>& s) {
    Permutation p;
    p.n_ = static_cast<std::uint8_t>(n);
    p.symbols_ = s;
    return p;
  }
  const std::array<std::uint8_t, 9>& raw() const { return symbols_; }

private:
  std::array<std::uint8_t, 9> symbols_{};
  std::uint8_t n_ = 0;
};

Permutation identity(int n);

// New permutation with the symbols at positions i and j exchanged (1-based).
Permutation swap_positions(const Permutation& p, int i, int j);

// Accepts exactly n digit characters forming an arrangement of 1..n.
Permutation parse(const std::string& text);

std::string format(const Permutation& p);

// Dense 0-based index in lexicographic order of label strings.
std::uint32_t rank(const Permutation& p);
Permutation unrank(int n, std::uint32_t index);

// True when p is an odd permutation (an odd number of transpositions).
bool parity_odd(const Permutation& p);

}  // namespace bsstar
