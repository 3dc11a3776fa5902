#include "wecken/word.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cctype>

namespace wecken {

namespace {

bool isReduced(const std::vector<Letter>& ls) {
  for (std::size_t i = 1; i < ls.size(); ++i)
    if (ls[i] == -ls[i - 1]) return false;
  return true;
}

constexpr std::size_t kMaxParsedLetters = 1'000'000;

}  // namespace

Word Word::fromLetters(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter x : raw) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return fromReducedUnchecked(std::move(out));
}

Word Word::fromReducedUnchecked(std::vector<Letter> ls) {
  assert(isReduced(ls));
  Word w;
  w.ls_ = std::move(ls);
  return w;
}

Word Word::single(Letter x) { return fromReducedUnchecked({x}); }

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the letter values
  std::uint64_t h = 1469598103934665603ull;
  for (Letter x : w.letters()) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

bool lengthLexLess(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto& x = a.letters();
  const auto& y = b.letters();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return letterRank(x[i]) < letterRank(y[i]);
  return false;
}

Word concat(const Word& u, const Word& v) {
  std::vector<Letter> out = u.letters();
  for (Letter x : v.letters()) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return Word::fromReducedUnchecked(std::move(out));
}

Word invert(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : out) x = -x;
  return Word::fromReducedUnchecked(std::move(out));
}

Word subview(const Word& w, std::size_t k, Subview side) {
  if (k > w.length()) throw std::out_of_range("subview: length exceeds word length");
  const auto& ls = w.letters();
  std::vector<Letter> out;
  out.reserve(k);
  if (side == Subview::initial) {
    out.assign(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    for (std::size_t i = 0; i < k; ++i) out.push_back(-ls[ls.size() - 1 - i]);
  }
  return Word::fromReducedUnchecked(std::move(out));
}

Word maximalCommonInitial(const Word& x, const Word& y) {
  if (x == y) throw std::invalid_argument("maximalCommonInitial: arguments are equal");
  const auto& a = x.letters();
  const auto& b = y.letters();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return subview(x, k, Subview::initial);
}

bool isLetterFree(const Word& w, int generator) {
  for (Letter x : w.letters())
    if (generatorOf(x) == generator) return false;
  return true;
}

std::size_t cancellationLength(const Word& u, const Word& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == -b[k]) ++k;
  return k;
}

BigInt countWordsOfLength(int n, int length) {
  if (n < 1) throw std::invalid_argument("countWordsOfLength: rank must be positive");
  if (length < 0) throw std::invalid_argument("countWordsOfLength: negative length");
  if (length == 0) return 1;
  BigInt c = 2 * n;
  for (int i = 1; i < length; ++i) c *= 2 * n - 1;
  return c;
}

BigInt countWords(int n, int p) {
  if (n < 1) throw std::invalid_argument("countWords: rank must be positive");
  if (p < 0) throw std::invalid_argument("countWords: negative length bound");
  BigInt total = 1;
  BigInt layer = 2 * n;
  for (int len = 1; len <= p; ++len) {
    total += layer;
    layer *= 2 * n - 1;
  }
  return total;
}

namespace {

void extend(std::vector<Word>& out, std::vector<Letter>& cur, int n, int remaining) {
  if (remaining == 0) {
    out.push_back(Word::fromReducedUnchecked(cur));
    return;
  }
  for (int r = 0; r < 2 * n; ++r) {
    Letter x = letterFromRank(r);
    if (!cur.empty() && cur.back() == -x) continue;
    cur.push_back(x);
    extend(out, cur, n, remaining - 1);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerateWords(int n, int p, std::uint64_t cap) {
  BigInt total = countWords(n, p);
  if (total > cap)
    throw std::length_error("enumerateWords: |G_p| = " + total.str() +
                            " exceeds cap " + std::to_string(cap));
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(static_cast<std::uint64_t>(total)));
  out.emplace_back();
  std::vector<Letter> cur;
  for (int len = 1; len <= p; ++len) extend(out, cur, n, len);
  return out;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skipSeparators() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
  }
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
};

long parseExponent(Cursor& c) {
  ++c.i;  // consume '^'
  if (c.done()) throw ParseError("unterminated exponent");
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') {
    neg = c.peek() == '-';
    ++c.i;
  }
  std::size_t start = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == start) throw ParseError("exponent requires digits");
  long value = 0;
  auto res = std::from_chars(c.s.data() + start, c.s.data() + c.i, value);
  if (res.ec != std::errc{} || value > static_cast<long>(kMaxParsedLetters))
    throw ParseError("exponent out of range");
  if (value == 0) throw ParseError("zero exponent is not a valid term");
  return neg ? -value : value;
}

}  // namespace

Word parseWord(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("parseWord: rank must be positive");
  Cursor c{text};
  std::vector<Letter> raw;
  bool letterMode = false, generalMode = false, sawIdentity = false, sawTerm = false;

  c.skipSeparators();
  while (!c.done()) {
    char ch = c.peek();
    if (sawIdentity) throw ParseError("'1' must stand alone");
    int gen = 0;
    if (ch == '1') {
      if (sawTerm) throw ParseError("'1' must stand alone");
      sawIdentity = true;
      ++c.i;
      c.skipSeparators();
      continue;
    }
    if (ch == 'g' && c.i + 1 < c.s.size() &&
        std::isdigit(static_cast<unsigned char>(c.s[c.i + 1]))) {
      if (letterMode) throw ParseError("cannot mix letter and general generator modes");
      generalMode = true;
      ++c.i;
      std::size_t start = c.i;
      while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
      auto res = std::from_chars(c.s.data() + start, c.s.data() + c.i, gen);
      if (res.ec != std::errc{}) throw ParseError("generator index out of range");
    } else if (ch >= 'a' && ch <= 'z') {
      if (generalMode) throw ParseError("cannot mix letter and general generator modes");
      letterMode = true;
      gen = ch - 'a' + 1;
      ++c.i;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'");
    }
    if (gen < 1 || gen > n)
      throw ParseError("generator index " + std::to_string(gen) + " outside rank " +
                       std::to_string(n));
    long exp = 1;
    if (!c.done() && c.peek() == '^') exp = parseExponent(c);
    Letter x = exp > 0 ? gen : -gen;
    long count = exp > 0 ? exp : -exp;
    if (raw.size() + static_cast<std::size_t>(count) > kMaxParsedLetters)
      throw ParseError("word too long");
    for (long k = 0; k < count; ++k) raw.push_back(x);
    sawTerm = true;
    c.skipSeparators();
  }
  if (!sawTerm && !sawIdentity) throw ParseError("empty word; write \"1\" for the identity");
  return Word::fromLetters(raw);
}

std::string formatWord(const Word& w, int n) {
  if (n < 1) throw std::invalid_argument("formatWord: rank must be positive");
  if (w.trivial()) return "1";
  const bool letterMode = n <= 26;
  std::string out;
  const auto& ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long run = static_cast<long>(j - i) * signOf(ls[i]);
    int g = generatorOf(ls[i]);
    if (letterMode) {
      out += static_cast<char>('a' + g - 1);
    } else {
      if (!out.empty()) out += '.';
      out += 'g';
      out += std::to_string(g);
    }
    if (run != 1) {
      out += '^';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

}  // namespace wecken
