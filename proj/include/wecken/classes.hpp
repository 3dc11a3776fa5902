#pragma once
// Membership predicates for the endomorphism classes with known Wecken
// behaviour: V_n, the rank-2 T classes, image-word Types 0/1a/1b/2, K_n, L_n,
// plus a name -> predicate registry for the sampling harness.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wecken/wagner.hpp"

namespace wecken {

enum class VnReading {
  strict,      // all tails pairwise distinct and nontrivial
  acrossOnly,  // tails nontrivial; distinctness required only across records
};

bool isVn(const Endomorphism& phi, VnReading reading = VnReading::strict);
bool isRn(const Endomorphism& phi);  // alias of hasRemnant

enum class ImageType { type0, type1a, type1b, type2, other };

// phi(a_k) = s a_k^{e} m a_k^{e'} l^{-1} around the first and last occurrence
// of a_k^{+-1}.  Type 0: s, l nontrivial a_k-free; Type 1a: s = a_k^{-1};
// Type 1b: l = a_k; Type 2: both; "other" when a_k^{+-1} occurs fewer than
// twice or a boundary occurrence leaves a trivial tail.
struct ImageWordShape {
  ImageType type = ImageType::other;
  Word s, l, m;
  std::size_t x = 0, y = 0;  // |s|, |l|
};

ImageWordShape imageWordShape(const Endomorphism& phi, int i);  // i is 1-based

bool allImagesTyped(const Endomorphism& phi);   // no image of type "other"
bool allImagesType0(const Endomorphism& phi);   // v-nontrivial
bool allTailsNontrivial(const Endomorphism& phi);  // w-nontrivial

bool isKn(const Endomorphism& phi);
bool isLn(const Endomorphism& phi);

struct TClassFlags {
  bool t2a = false, t2b = false, t2bPrime = false, t4 = false, t4Prime = false;
  bool any() const { return t2a || t2b || t2bPrime || t4 || t4Prime; }
};

// Rank 2 only (throws otherwise).  Flags are conjoined with the remnant
// condition unless structuralOnly is set.
TClassFlags classifyT(const Endomorphism& phi, bool structuralOnly = false);

struct ClassFlags {
  bool remnant = false;
  bool vnStrict = false, vnLoose = false;
  bool vNontrivial = false, wNontrivial = false;
  bool kn = false, ln = false;
  // rank 2 only; all false otherwise
  bool t2a = false, t2b = false, t2bPrime = false, t4 = false, t4Prime = false;
};

ClassFlags classFlags(const Endomorphism& phi);

using Predicate = std::function<bool(const Endomorphism&)>;

struct PredicateEntry {
  std::string name;
  std::string description;
  Predicate fn;
};

const std::vector<PredicateEntry>& predicateRegistry();
const PredicateEntry* findPredicate(std::string_view name);  // nullptr when unknown

}  // namespace wecken
