#pragma once
// Reduced words over a free group of finite rank: algebra, parsing,
// canonical formatting, counting, and ordered enumeration.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wecken {

using Letter = std::int32_t;  // +g encodes a_g, -g encodes a_g^{-1}, g >= 1
using BigInt = boost::multiprecision::cpp_int;

inline int generatorOf(Letter x) noexcept { return x < 0 ? -x : x; }
inline int signOf(Letter x) noexcept { return x < 0 ? -1 : 1; }

// Collation used wherever letters or words are ordered: a < a^-1 < b < b^-1 < ...
inline int letterRank(Letter x) noexcept { return 2 * (generatorOf(x) - 1) + (x < 0 ? 1 : 0); }
inline Letter letterFromRank(int rank) noexcept {
  int g = rank / 2 + 1;
  return (rank % 2) ? -g : g;
}

class Word {
public:
  Word() = default;

  // Applies free reduction to an arbitrary letter sequence.
  static Word fromLetters(const std::vector<Letter>& raw);
  // Caller guarantees the sequence is already reduced (prefixes of reduced
  // words, inverses, etc.); checked only in debug builds.
  static Word fromReducedUnchecked(std::vector<Letter> ls);
  static Word single(Letter x);

  const std::vector<Letter>& letters() const noexcept { return ls_; }
  std::size_t length() const noexcept { return ls_.size(); }
  bool trivial() const noexcept { return ls_.empty(); }
  Letter front() const { return ls_.front(); }
  Letter back() const { return ls_.back(); }

  friend bool operator==(const Word&, const Word&) = default;

private:
  std::vector<Letter> ls_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Length-then-lexicographic order under the letter collation above.
bool lengthLexLess(const Word& a, const Word& b);

Word concat(const Word& u, const Word& v);
Word invert(const Word& w);

enum class Subview { initial, terminalInverse };

// initial: w|_k, the first k letters.  terminalInverse: w|^k, the inverse of
// the last k letters (equivalently the first k letters of w^{-1}).
Word subview(const Word& w, std::size_t k, Subview side);

// Longest common initial segment of two distinct words; x == y is an error.
Word maximalCommonInitial(const Word& x, const Word& y);

bool isLetterFree(const Word& w, int generator);

// Number of letters cancelled at the seam when forming the reduced product uv.
std::size_t cancellationLength(const Word& u, const Word& v);

BigInt countWordsOfLength(int n, int length);  // reduced words of exactly this length
BigInt countWords(int n, int p);               // |G_p| = words of length <= p, identity included

// All of G_p in length-then-lex order, identity first.  Refuses when |G_p|
// exceeds the cap.
std::vector<Word> enumerateWords(int n, int p, std::uint64_t cap = 1'000'000);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar: word := "1" | term+ ; term := gen ("^" nonzero-int)? ;
// gen := 'a'..'z' (letter mode) | 'g' digits (general mode, not mixable).
// Whitespace and '.' act as separators.
Word parseWord(std::string_view text, int n);

// Canonical form: letter mode with run-length exponents for n <= 26
// ("ba^3b", "a^-2b"), '.'-joined general mode otherwise ("g2.g1^3.g2").
std::string formatWord(const Word& w, int n);

}  // namespace wecken
