#include "wecken/classes.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace wecken {

namespace {

std::vector<Word> nonWedgeTails(const Endomorphism& phi) {
  std::vector<Word> tails;
  for (const auto& r : tailTable(phi)) {
    if (r.kind == RecordKind::wedge) continue;
    tails.push_back(r.w);
    tails.push_back(r.wBar);
  }
  return tails;
}

}  // namespace

bool isVn(const Endomorphism& phi, VnReading reading) {
  auto records = tailTable(phi);
  if (reading == VnReading::strict) {
    std::unordered_set<Word, WordHash> seen;
    for (const auto& r : records) {
      if (r.kind == RecordKind::wedge) continue;
      if (r.w.trivial() || r.wBar.trivial()) return false;
      if (!seen.insert(r.w).second) return false;
      if (!seen.insert(r.wBar).second) return false;
    }
    return true;
  }
  // acrossOnly: a record may repeat its own tail, but no tail may appear in
  // two different records and none may be trivial.
  std::unordered_map<Word, int, WordHash> ownerOf;
  int id = 0;
  for (const auto& r : records) {
    if (r.kind == RecordKind::wedge) continue;
    ++id;
    if (r.w.trivial() || r.wBar.trivial()) return false;
    for (const Word* tail : {&r.w, &r.wBar}) {
      auto [it, inserted] = ownerOf.emplace(*tail, id);
      if (!inserted && it->second != id) return false;
    }
  }
  return true;
}

bool isRn(const Endomorphism& phi) { return hasRemnant(phi); }

ImageWordShape imageWordShape(const Endomorphism& phi, int i) {
  if (i < 1 || i > phi.rank) throw std::out_of_range("imageWordShape: generator out of range");
  const Word& u = phi.images[i - 1];
  const auto& ls = u.letters();
  std::size_t len = ls.size();
  std::vector<std::size_t> occ;
  for (std::size_t t = 0; t < len; ++t)
    if (generatorOf(ls[t]) == i) occ.push_back(t);

  ImageWordShape shape;
  if (occ.size() < 2) return shape;  // single or no occurrence: no usable split
  std::size_t f = occ.front(), t = occ.back();

  bool startA = false;
  if (f > 0) {
    shape.s = subview(u, f, Subview::initial);
    shape.x = f;
  } else if (ls[0] == -i) {
    shape.s = Word::single(-i);  // the occurrence itself supplies the tail
    shape.x = 1;
    startA = true;
  } else {
    return shape;  // leading a_i: trivial w tail
  }

  bool endB = false;
  if (t + 1 < len) {
    shape.l = subview(u, len - 1 - t, Subview::terminalInverse);
    shape.y = len - 1 - t;
  } else if (ls[t] == -i) {
    shape.l = Word::single(i);
    shape.y = 1;
    endB = true;
  } else {
    return shape;  // trailing a_i: trivial wbar tail
  }

  shape.m = Word::fromReducedUnchecked(
      std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(f) + 1,
                          ls.begin() + static_cast<std::ptrdiff_t>(t)));
  shape.type = startA ? (endB ? ImageType::type2 : ImageType::type1a)
                      : (endB ? ImageType::type1b : ImageType::type0);
  return shape;
}

bool allImagesTyped(const Endomorphism& phi) {
  for (int i = 1; i <= phi.rank; ++i)
    if (imageWordShape(phi, i).type == ImageType::other) return false;
  return true;
}

bool allImagesType0(const Endomorphism& phi) {
  for (int i = 1; i <= phi.rank; ++i)
    if (imageWordShape(phi, i).type != ImageType::type0) return false;
  return true;
}

bool allTailsNontrivial(const Endomorphism& phi) {
  for (const auto& r : tailTable(phi)) {
    if (r.kind == RecordKind::wedge) continue;
    if (r.w.trivial() || r.wBar.trivial()) return false;
  }
  return true;
}

namespace {

// w|_k, or nothing when the subview is longer than the word (such comparisons
// count as unequal).
std::optional<Word> initialOrNothing(const Word& w, std::size_t k) {
  if (k > w.length()) return std::nullopt;
  return subview(w, k, Subview::initial);
}

std::optional<Word> terminalInverseOrNothing(const Word& w, std::size_t k) {
  if (k > w.length()) return std::nullopt;
  return subview(w, k, Subview::terminalInverse);
}

bool matches(const std::optional<Word>& candidate, const Word& target) {
  return candidate.has_value() && *candidate == target;
}

}  // namespace

bool isKn(const Endomorphism& phi) {
  std::vector<ImageWordShape> shapes;
  for (int i = 1; i <= phi.rank; ++i) {
    shapes.push_back(imageWordShape(phi, i));
    if (shapes.back().type != ImageType::type0) return false;
  }
  for (int k = 0; k < phi.rank; ++k) {
    const auto& sh = shapes[k];
    if (matches(initialOrNothing(phi.images[k], sh.y), sh.l)) return false;
    for (int i = 0; i < k; ++i) {
      const Word& other = phi.images[i];
      if (matches(initialOrNothing(other, sh.x), sh.s)) return false;
      if (matches(terminalInverseOrNothing(other, sh.x), sh.s)) return false;
      if (matches(initialOrNothing(other, sh.y), sh.l)) return false;
      if (matches(terminalInverseOrNothing(other, sh.y), sh.l)) return false;
    }
  }
  return true;
}

namespace {

struct OrderedEntry {
  Word word;         // phi(a_i) for positive entries, phi(a_i)^{-1} for negative
  Word guard;        // s_i resp. l_i: the prefix whose reappearance is forbidden
  std::size_t guardLength;
};

// The proof's canonical ordering: Type-2 pairs (positive then negative) by
// generator; Type-1 entries on their automatic side; Type-1 entries on the
// word side; Type-0 pairs.
std::vector<OrderedEntry> canonicalOrdering(const Endomorphism& phi,
                                            const std::vector<ImageWordShape>& shapes) {
  auto positive = [&](int i) {
    return OrderedEntry{phi.images[i], shapes[i].s, shapes[i].x};
  };
  auto negative = [&](int i) {
    return OrderedEntry{invert(phi.images[i]), shapes[i].l, shapes[i].y};
  };
  std::vector<OrderedEntry> entries;
  for (int i = 0; i < phi.rank; ++i)
    if (shapes[i].type == ImageType::type2) {
      entries.push_back(positive(i));
      entries.push_back(negative(i));
    }
  for (int i = 0; i < phi.rank; ++i) {
    if (shapes[i].type == ImageType::type1a) entries.push_back(positive(i));
    if (shapes[i].type == ImageType::type1b) entries.push_back(negative(i));
  }
  for (int i = 0; i < phi.rank; ++i) {
    if (shapes[i].type == ImageType::type1a) entries.push_back(negative(i));
    if (shapes[i].type == ImageType::type1b) entries.push_back(positive(i));
  }
  for (int i = 0; i < phi.rank; ++i)
    if (shapes[i].type == ImageType::type0) {
      entries.push_back(positive(i));
      entries.push_back(negative(i));
    }
  return entries;
}

}  // namespace

bool isLn(const Endomorphism& phi) {
  std::vector<ImageWordShape> shapes;
  for (int i = 1; i <= phi.rank; ++i) {
    shapes.push_back(imageWordShape(phi, i));
    if (shapes.back().type == ImageType::other) return false;
  }
  auto entries = canonicalOrdering(phi, shapes);
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (matches(initialOrNothing(entries[j].word, entries[i].guardLength), entries[i].guard))
        return false;
  return true;
}

namespace {

Letter firstLetter(const Word& w) { return w.front(); }
Letter lastLetterInverse(const Word& w) { return -w.back(); }

struct TContext {
  Word a, b;          // the two images
  Letter sa, la, sb, lb;
};

bool structuralT2a(const TContext& c) {
  Letter v[4] = {c.sa, c.la, c.sb, c.lb};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[i] == v[j]) return false;
  return true;
}

// phi(x) = U X U^{-1} with U nontrivial, i.e. the image starts and ends with
// mutually inverse letters.  (X is then automatically nontrivial: a reduced
// word cannot be U U^{-1}.)
bool isConjugateShaped(const Word& w) {
  return w.length() >= 2 && w.front() == -w.back();
}

bool structuralT2b(const TContext& c) {
  return isConjugateShaped(c.a) && c.sb != c.lb && c.sa != c.sb && c.sa != c.lb;
}

bool structuralT2bPrime(const TContext& c) {
  return isConjugateShaped(c.b) && c.sa != c.la && c.sb != c.sa && c.sb != c.la;
}

// phi(a) = U X1, phi(b) = X2 U^{-1} with U nontrivial and maximal, i.e.
// phi(a) and phi(b)^{-1} share a nontrivial common prefix (and differ).
bool structuralT4(const TContext& c) {
  Word bInv = invert(c.b);
  if (c.a == bInv) return false;
  return maximalCommonInitial(c.a, bInv).length() >= 1 && c.sa != c.la && c.sb != c.lb &&
         c.la != c.sb;
}

bool structuralT4Prime(const TContext& c) {
  Word aInv = invert(c.a);
  if (c.b == aInv) return false;
  return maximalCommonInitial(c.b, aInv).length() >= 1 && c.sb != c.lb && c.sa != c.la &&
         c.lb != c.sa;
}

}  // namespace

TClassFlags classifyT(const Endomorphism& phi, bool structuralOnly) {
  if (phi.rank != 2) throw std::invalid_argument("classifyT: defined for rank 2 only");
  TClassFlags flags;
  if (phi.images[0].trivial() || phi.images[1].trivial()) return flags;
  TContext c{phi.images[0], phi.images[1], firstLetter(phi.images[0]),
             lastLetterInverse(phi.images[0]), firstLetter(phi.images[1]),
             lastLetterInverse(phi.images[1])};
  flags.t2a = structuralT2a(c);
  flags.t2b = structuralT2b(c);
  flags.t2bPrime = structuralT2bPrime(c);
  flags.t4 = structuralT4(c);
  flags.t4Prime = structuralT4Prime(c);
  if (!structuralOnly && flags.any() && !hasRemnant(phi)) flags = TClassFlags{};
  return flags;
}

ClassFlags classFlags(const Endomorphism& phi) {
  ClassFlags f;
  f.remnant = hasRemnant(phi);
  f.vnStrict = isVn(phi, VnReading::strict);
  f.vnLoose = isVn(phi, VnReading::acrossOnly);
  f.vNontrivial = allImagesType0(phi);
  f.wNontrivial = allTailsNontrivial(phi);
  f.kn = isKn(phi);
  f.ln = isLn(phi);
  if (phi.rank == 2) {
    TClassFlags t = classifyT(phi);
    f.t2a = t.t2a;
    f.t2b = t.t2b;
    f.t2bPrime = t.t2bPrime;
    f.t4 = t.t4;
    f.t4Prime = t.t4Prime;
  }
  return f;
}

const std::vector<PredicateEntry>& predicateRegistry() {
  static const std::vector<PredicateEntry> entries = {
      {"vn", "tails nontrivial and distinct across fixed points (experiment convention)",
       [](const Endomorphism& e) { return isVn(e, VnReading::acrossOnly); }},
      {"vn-strict", "tails nontrivial and pairwise distinct",
       [](const Endomorphism& e) { return isVn(e, VnReading::strict); }},
      {"vn-loose", "alias of vn",
       [](const Endomorphism& e) { return isVn(e, VnReading::acrossOnly); }},
      {"remnant", "every image survives worst-case cancellation", isRn},
      {"rn", "alias of remnant", isRn},
      {"kn", "type-0 images with non-reappearing boundary subwords", isKn},
      {"ln", "typed images passing the ordered prefix conditions", isLn},
      {"vnontrivial", "every image of Type 0", allImagesType0},
      {"wnontrivial", "every tail nontrivial", allTailsNontrivial},
      {"t2a", "rank 2: boundary letters all distinct, with remnant",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).t2a; }},
      {"t2b", "rank 2: first image conjugate-shaped, with remnant",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).t2b; }},
      {"t2b'", "rank 2: second image conjugate-shaped, with remnant",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).t2bPrime; }},
      {"t4", "rank 2: images sharing a boundary block, with remnant",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).t4; }},
      {"t4'", "rank 2: mirrored t4, with remnant",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).t4Prime; }},
      {"t-union", "rank 2: any T class",
       [](const Endomorphism& e) { return e.rank == 2 && classifyT(e).any(); }},
  };
  return entries;
}

const PredicateEntry* findPredicate(std::string_view name) {
  // tolerate the ascii spellings of the primed names
  std::string key(name);
  if (key == "t2b_prime" || key == "t2bprime") key = "t2b'";
  if (key == "t4_prime" || key == "t4prime") key = "t4'";
  for (const auto& e : predicateRegistry())
    if (e.name == key) return &e;
  return nullptr;
}

}  // namespace wecken
