#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "wecken/montecarlo.hpp"
#include "wecken/wagner.hpp"

using namespace wecken;

namespace {

Endomorphism phi2(const char* text) { return parseEndomorphism(text, 2); }

// Reference remnant semantics: some subword of phi(a_i) must survive in every
// allowed product z phi(a_i) z'.  Checked pair by pair, unlike the max-
// cancellation decomposition in the library.
bool bruteRemnant(const Endomorphism& phi) {
  std::vector<Word> factors;
  for (const Word& img : phi.images) {
    factors.push_back(img);
    factors.push_back(invert(img));
  }
  for (int i = 0; i < phi.rank; ++i) {
    const Word& u = phi.images[i];
    if (u.trivial()) return false;
    for (int zi = 0; zi < static_cast<int>(factors.size()); ++zi) {
      if (zi == 2 * i + 1) continue;  // phi(a_i)^{-1} may not precede
      for (int zk = 0; zk < static_cast<int>(factors.size()); ++zk) {
        if (zk == 2 * i + 1) continue;  // nor follow
        if (cancellationLength(factors[zi], u) + cancellationLength(u, factors[zk]) >= u.length())
          return false;
      }
    }
  }
  return true;
}

int traceOfAbelianization(const Endomorphism& phi) {
  int trace = 0;
  for (int i = 1; i <= phi.rank; ++i)
    for (Letter x : phi.images[i - 1].letters())
      if (generatorOf(x) == i) trace += signOf(x);
  return trace;
}

}  // namespace

TEST_CASE("endomorphism construction and text form") {
  auto phi = phi2("ba^3b;ab^-1a^2");
  CHECK(phi.rank == 2);
  CHECK(formatEndomorphism(phi) == "ba^3b;ab^-1a^2");
  CHECK_THROWS_AS(parseEndomorphism("a;b;a", 2), std::invalid_argument);
  CHECK_THROWS_AS(parseEndomorphism("a", 2), std::invalid_argument);
  CHECK_THROWS_AS(parseEndomorphism("a;c", 2), ParseError);
  CHECK_THROWS_AS(makeEndomorphism(1, {Word::single(1)}), std::invalid_argument);
  // identity images are allowed
  CHECK(parseEndomorphism("1;1", 2).images[0].trivial());
}

TEST_CASE("tail table for the worked example") {
  auto records = tailTable(phi2("ba^3b;ab^-1a^2"));
  REQUIRE(records.size() == 5);
  auto fmt = [](const Word& word) { return formatWord(word, 2); };

  CHECK(records[0].kind == RecordKind::wedge);
  CHECK(records[0].w.trivial());
  CHECK(records[0].wBar.trivial());
  CHECK(records[0].index == 1);

  CHECK(records[1].owner == 1);
  CHECK(records[1].position == 2);
  CHECK(records[1].epsilon == 1);
  CHECK(fmt(records[1].w) == "b");
  CHECK(fmt(records[1].wBar) == "b^-1a^-2");
  CHECK(records[1].index == -1);

  CHECK(records[2].position == 3);
  CHECK(fmt(records[2].w) == "ba");
  CHECK(fmt(records[2].wBar) == "b^-1a^-1");

  CHECK(records[3].position == 4);
  CHECK(fmt(records[3].w) == "ba^2");
  CHECK(fmt(records[3].wBar) == "b^-1");

  CHECK(records[4].owner == 2);
  CHECK(records[4].position == 2);
  CHECK(records[4].epsilon == -1);
  CHECK(fmt(records[4].w) == "ab^-1");
  CHECK(fmt(records[4].wBar) == "a^-2b");
  CHECK(records[4].index == 1);
}

TEST_CASE("tail table case split for negative occurrences") {
  auto records = tailTable(phi2("a^2;b^-2"));
  REQUIRE(records.size() == 5);
  auto fmt = [](const Word& word) { return formatWord(word, 2); };
  CHECK(fmt(records[1].w) == "1");
  CHECK(fmt(records[1].wBar) == "a^-1");
  CHECK(fmt(records[2].w) == "a");
  CHECK(fmt(records[2].wBar) == "1");
  CHECK(fmt(records[3].w) == "b^-1");
  CHECK(fmt(records[3].wBar) == "b^2");
  CHECK(fmt(records[4].w) == "b^-2");
  CHECK(fmt(records[4].wBar) == "b");
  CHECK(records[3].index == 1);
  CHECK(records[4].index == 1);
}

TEST_CASE("wedge-only tail table") {
  auto records = tailTable(phi2("b^2;a^2"));
  REQUIRE(records.size() == 1);
  CHECK(records[0].kind == RecordKind::wedge);
}

TEST_CASE("remnant examples") {
  CHECK(hasRemnant(phi2("ba^3b;ab^-1a^2")));
  CHECK_FALSE(hasRemnant(phi2("ab;b^-1")));
  CHECK(hasRemnant(phi2("b^2;a^2")));
  CHECK_FALSE(hasRemnant(phi2("1;ab")));  // trivial image

  auto report = remnantReport(phi2("ab;b^-1"));
  CHECK_FALSE(report.hasRemnant);
  REQUIRE(report.perGenerator.size() == 2);
  CHECK(report.perGenerator[0].generator == 1);
  // phi(b) = b^-1 is consumed from the left by phi(a) = ab
  CHECK_FALSE(report.perGenerator[1].ok);
  CHECK(report.perGenerator[1].left + report.perGenerator[1].right >=
        report.perGenerator[1].imageLength);
}

TEST_CASE("remnant agrees with the product oracle exhaustively (n=2, |images| <= 3)") {
  auto words = enumerateWords(2, 3);
  for (const Word& a : words)
    for (const Word& b : words) {
      Endomorphism phi{2, {a, b}};
      CAPTURE(formatEndomorphism(phi));
      CHECK(hasRemnant(phi) == bruteRemnant(phi));
    }
}

TEST_CASE("remnant agrees with the product oracle on random maps") {
  for (int n : {2, 3, 4}) {
    WordSampler sampler(n, 5, true);
    for (std::uint64_t t = 0; t < 1500; ++t) {
      SplitMix64 rng = trialStream(31 + n, t);
      std::vector<Word> images;
      for (int i = 0; i < n; ++i) images.push_back(sampler.draw(rng));
      Endomorphism phi{n, images};
      CAPTURE(formatEndomorphism(phi));
      CHECK(hasRemnant(phi) == bruteRemnant(phi));
    }
  }
}

TEST_CASE("class partition examples") {
  auto classes = classPartition(phi2("ba^3b;ab^-1a^2"));
  REQUIRE(classes.size() == 5);
  std::multiset<int> sums;
  for (const auto& c : classes) {
    CHECK(c.records.size() == 1);
    CHECK(c.essential());
    sums.insert(c.indexSum);
  }
  CHECK(sums == std::multiset<int>{-1, -1, -1, 1, 1});

  classes = classPartition(phi2("a^2;b^-2"));
  REQUIRE(classes.size() == 3);
  std::multiset<int> sums2;
  std::multiset<std::size_t> sizes;
  for (const auto& c : classes) {
    sums2.insert(c.indexSum);
    sizes.insert(c.records.size());
  }
  CHECK(sums2 == std::multiset<int>{-1, 1, 1});
  CHECK(sizes == std::multiset<std::size_t>{3, 1, 1});

  classes = classPartition(phi2("b^2;a^2"));
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].indexSum == 1);
}

TEST_CASE("nielsen numbers") {
  CHECK(nielsenNumber(phi2("ba^3b;ab^-1a^2")) == 5);
  CHECK(nielsenNumber(phi2("b^2;a^2")) == 1);
  CHECK(nielsenNumber(phi2("a^2;b^-2")) == 3);
  CHECK_THROWS_AS(nielsenNumber(phi2("ab;b^-1")), NoRemnantError);
}

TEST_CASE("record count and index-sum laws on random maps") {
  for (int n : {2, 3, 5}) {
    WordSampler sampler(n, 8, true);
    for (std::uint64_t t = 0; t < 800; ++t) {
      SplitMix64 rng = trialStream(57 + n, t);
      std::vector<Word> images;
      for (int i = 0; i < n; ++i) images.push_back(sampler.draw(rng));
      Endomorphism phi{n, images};
      auto records = tailTable(phi);

      std::size_t occurrences = 0;
      for (int i = 1; i <= n; ++i)
        for (Letter x : images[i - 1].letters())
          if (generatorOf(x) == i) ++occurrences;
      CHECK(records.size() == occurrences + 1);

      int indexSum = 0;
      for (const auto& r : records) indexSum += r.index;
      CHECK(indexSum == 1 - traceOfAbelianization(phi));

      auto classes = classPartition(phi);
      std::size_t covered = 0;
      int essential = 0;
      for (const auto& c : classes) {
        covered += c.records.size();
        if (c.essential()) ++essential;
      }
      CHECK(covered == records.size());
      CHECK(essential <= static_cast<int>(classes.size()));
      if (hasRemnant(phi)) CHECK(nielsenNumber(phi) == essential);
    }
  }
}

TEST_CASE("relabeling generators permutes records and preserves invariants") {
  WordSampler sampler(3, 6, true);
  std::vector<int> perm = {2, 3, 1};  // sigma(1)=2 etc., 1-based
  for (std::uint64_t t = 0; t < 400; ++t) {
    SplitMix64 rng = trialStream(1234, t);
    std::vector<Word> images;
    for (int i = 0; i < 3; ++i) images.push_back(sampler.draw(rng));
    Endomorphism phi{3, images};

    std::vector<Word> relabeled(3);
    for (int i = 0; i < 3; ++i) {
      std::vector<Letter> ls;
      for (Letter x : images[i].letters()) {
        int g = perm[generatorOf(x) - 1];
        ls.push_back(signOf(x) > 0 ? g : -g);
      }
      relabeled[perm[i] - 1] = Word::fromReducedUnchecked(std::move(ls));
    }
    Endomorphism psi{3, relabeled};

    CHECK(tailTable(phi).size() == tailTable(psi).size());
    CHECK(hasRemnant(phi) == hasRemnant(psi));
    auto sums = [](const Endomorphism& e) {
      std::multiset<int> s;
      for (const auto& c : classPartition(e)) s.insert(c.indexSum);
      return s;
    };
    CHECK(sums(phi) == sums(psi));
    if (hasRemnant(phi)) CHECK(nielsenNumber(phi) == nielsenNumber(psi));
  }
}
