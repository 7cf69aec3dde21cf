#include "bsstar/permutation.hpp"

#include <stdexcept>

namespace bsstar {

std::uint32_t factorial(int n) {
  std::uint32_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint32_t>(i);
  return f;
}

bool Permutation::operator<(const Permutation& o) const {
  if (n_ != o.n_) throw std::invalid_argument("comparing permutations of different dimension");
  for (int i = 0; i < n_; ++i)
    if (symbols_[i] != o.symbols_[i]) return symbols_[i] < o.symbols_[i];
  return false;
}

static void check_dimension(int n) {
  if (n < min_dimension || n > max_dimension)
    throw std::out_of_range("dimension must be between 3 and 9");
}

Permutation identity(int n) {
  check_dimension(n);
  std::array<std::uint8_t, 9> s{};
  for (int i = 0; i < n; ++i) s[i] = static_cast<std::uint8_t>(i + 1);
  return Permutation::unchecked(n, s);
}

Permutation swap_positions(const Permutation& p, int i, int j) {
  const int n = p.n();
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw std::invalid_argument("swap positions must be distinct and within 1..n");
  auto s = p.raw();
  std::swap(s[i - 1], s[j - 1]);
  return Permutation::unchecked(n, s);
}

Permutation parse(const std::string& text) {
  const int n = static_cast<int>(text.size());
  check_dimension(n);
  std::array<std::uint8_t, 9> s{};
  bool seen[10] = {};
  for (int i = 0; i < n; ++i) {
    const char c = text[i];
    if (c < '1' || c > '0' + n)
      throw std::invalid_argument("label must use only the digits 1.." + std::to_string(n));
    const int v = c - '0';
    if (seen[v]) throw std::invalid_argument("label repeats the digit " + std::to_string(v));
    seen[v] = true;
    s[i] = static_cast<std::uint8_t>(v);
  }
  return Permutation::unchecked(n, s);
}

std::string format(const Permutation& p) {
  std::string out(static_cast<std::size_t>(p.n()), '0');
  for (int i = 1; i <= p.n(); ++i) out[i - 1] = static_cast<char>('0' + p.symbol(i));
  return out;
}

std::uint32_t rank(const Permutation& p) {
  // Lehmer code: count smaller symbols to the right of each position.
  const int n = p.n();
  std::uint32_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p.raw()[j] < p.raw()[i]) ++smaller;
    r = r * static_cast<std::uint32_t>(n - i) + static_cast<std::uint32_t>(smaller);
  }
  return r;
}

Permutation unrank(int n, std::uint32_t index) {
  check_dimension(n);
  if (index >= factorial(n)) throw std::out_of_range("rank index exceeds n!-1");
  // factorial-base digits of index, least significant end first
  std::array<std::uint8_t, 9> code{};
  std::uint32_t rem = index;
  for (int i = 1; i <= n; ++i) {
    code[n - i] = static_cast<std::uint8_t>(rem % static_cast<std::uint32_t>(i));
    rem /= static_cast<std::uint32_t>(i);
  }
  bool used[10] = {};
  std::array<std::uint8_t, 9> s{};
  for (int i = 0; i < n; ++i) {
    int skip = code[i];  // choose the (skip+1)-th unused symbol
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      if (skip == 0) {
        used[v] = true;
        s[i] = static_cast<std::uint8_t>(v);
        break;
      }
      --skip;
    }
  }
  return Permutation::unchecked(n, s);
}

bool parity_odd(const Permutation& p) {
  const int n = p.n();
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.raw()[j] < p.raw()[i]) ++inversions;
  return inversions % 2 == 1;
}

}  // namespace bsstar
