#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "wecken/bounds.hpp"
#include "wecken/montecarlo.hpp"

using namespace wecken;

namespace {

BigRational frac(const ExactDensity& d) { return {d.hits, d.total}; }

double chiSquaredCritical(int df, double significance) {
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::quantile(dist, 1.0 - significance);
}

}  // namespace

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng{0};
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);

  SplitMix64 a{42}, b{42}, c{43};
  CHECK(a.next() == b.next());
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
}

TEST_CASE("bounded draws stay in range and are unbiased") {
  SplitMix64 rng{7};
  std::map<std::uint64_t, int> counts;
  const int trials = 60'000;
  for (int i = 0; i < trials; ++i) ++counts[rng.nextBelow(6)];
  REQUIRE(counts.size() == 6);
  double expected = trials / 6.0;
  double chi2 = 0;
  for (auto& [v, c] : counts) {
    CHECK(v < 6);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < chiSquaredCritical(5, 1e-3));
  CHECK(rng.nextBelow(1) == 0);
}

TEST_CASE("trial streams are deterministic and distinct") {
  CHECK(trialStream(9, 0).next() == trialStream(9, 0).next());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t t = 0; t < 1000; ++t) firsts.insert(trialStream(9, t).state);
  CHECK(firsts.size() == 1000);
  CHECK(trialStream(9, 0).state != trialStream(10, 0).state);
}

TEST_CASE("word sampler domain sizes") {
  CHECK(WordSampler(2, 2, true).domainSize() == 17);
  CHECK(WordSampler(2, 2, false).domainSize() == 16);
  CHECK(WordSampler(2, 0, true).domainSize() == 1);
  CHECK(WordSampler(3, 3, true).domainSize() == 187);
  CHECK(WordSampler(50, 14, true).domainSize() ==
        BigInt("8864753191520186816058070001"));
  CHECK_THROWS_AS(WordSampler(2, 0, false), std::domain_error);
  CHECK_THROWS_AS(WordSampler(0, 2, true), std::invalid_argument);
  CHECK_THROWS_AS(WordSampler(2, -1, true), std::invalid_argument);
}

TEST_CASE("sampled words are reduced and within the length bound") {
  SplitMix64 rng{11};
  WordSampler sampler(3, 6, false);
  for (int i = 0; i < 2000; ++i) {
    Word w = sampler.draw(rng);
    CHECK(w.length() >= 1);
    CHECK(w.length() <= 6);
    CHECK(w == Word::fromLetters(w.letters()));  // already reduced
  }
}

TEST_CASE("sampler is uniform over G_1 (five outcomes)") {
  SplitMix64 rng{2024};
  WordSampler sampler(2, 1, true);
  std::map<std::string, int> counts;
  const int trials = 100'000;
  for (int i = 0; i < trials; ++i) ++counts[formatWord(sampler.draw(rng), 2)];
  REQUIRE(counts.size() == 5);
  double expected = trials / 5.0;
  double chi2 = 0;
  for (auto& [w, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < chiSquaredCritical(4, 1e-3));
}

TEST_CASE("independent draws give uniform pairs") {
  SplitMix64 rng{515};
  WordSampler sampler(2, 1, true);
  std::map<std::string, int> counts;
  const int trials = 100'000;
  for (int i = 0; i < trials; ++i) {
    std::string key = formatWord(sampler.draw(rng), 2);
    key += '|';
    key += formatWord(sampler.draw(rng), 2);
    ++counts[key];
  }
  REQUIRE(counts.size() == 25);
  double expected = trials / 25.0;
  double chi2 = 0;
  for (auto& [w, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < chiSquaredCritical(24, 1e-3));
}

TEST_CASE("big-integer rejection path behaves like the 64-bit one") {
  WordSampler sampler(50, 14, true);  // |G_14| needs 93 bits
  SplitMix64 a{77}, b{77};
  int longDraws = 0;
  for (int i = 0; i < 300; ++i) {
    Word wa = sampler.draw(a);
    Word wb = sampler.draw(b);
    CHECK(wa == wb);  // same stream, same words
    CHECK(wa.length() <= 14);
    if (wa.length() == 14) ++longDraws;
  }
  // words of maximal length outnumber the rest 98:1
  CHECK(longDraws > 280);
}

TEST_CASE("sampled endomorphisms respect rank and identity setting") {
  SplitMix64 rng{31};
  for (int i = 0; i < 200; ++i) {
    Endomorphism phi = sampleEndomorphism(3, 4, rng, false);
    CHECK(phi.rank == 3);
    REQUIRE(phi.images.size() == 3);
    for (const Word& w : phi.images) {
      CHECK_FALSE(w.trivial());
      CHECK(w.length() <= 4);
    }
  }
}

TEST_CASE("wilson interval") {
  auto [l0, h0] = wilsonInterval(0, 100);
  CHECK(l0 == 0.0);
  CHECK(h0 > 0.0);
  CHECK(h0 < 0.05);

  auto [l1, h1] = wilsonInterval(100, 100);
  CHECK(h1 == 1.0);
  CHECK(l1 > 0.95);

  auto [lm, hm] = wilsonInterval(50, 100);
  CHECK((lm + hm) / 2 == doctest::Approx(0.5).epsilon(1e-12));

  // against an independent evaluation of the closed form
  boost::math::normal_distribution<double> normal;
  double z = boost::math::quantile(normal, 0.975);
  double denom = 1 + z * z / 100;
  double half = z * std::sqrt(0.25 / 100 + z * z / (4 * 100.0 * 100.0)) / denom;
  CHECK(hm - lm == doctest::Approx(2 * half).epsilon(1e-12));
  CHECK(half == doctest::Approx(0.0961688).epsilon(1e-5));

  auto [ln_, hn] = wilsonInterval(500, 1000);
  CHECK(hn - ln_ < hm - lm);  // more trials, tighter interval

  auto [lw, hw] = wilsonInterval(50, 100, 0.999);
  CHECK(hw - lw > hm - lm);  // more confidence, wider interval

  CHECK_THROWS_AS(wilsonInterval(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(wilsonInterval(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(wilsonInterval(1, 2, 1.0), std::invalid_argument);
}

TEST_CASE("exact densities: small-case fractions") {
  CHECK(frac(exactDensity(2, 2, "vn")) == BigRational(25, 64));
  CHECK(frac(exactDensity(2, 3, "vn")) == BigRational(849, 2704));
  CHECK(frac(exactDensity(3, 2, "vn")) == BigRational(2197, 5832));
  CHECK(frac(exactDensity(2, 2, "vn-loose", true)) == BigRational(121, 289));
  CHECK(frac(exactDensity(2, 2, "vn-loose")) == BigRational(25, 64));  // = strict at p = 2
  CHECK(frac(exactDensity(2, 3, "vn-loose", true)) == BigRational(912, 2809));
  CHECK(frac(exactDensity(2, 2, "vn-strict", true)) == BigRational(121, 289));
  CHECK(frac(exactDensity(2, 3, "vn-strict", true)) == BigRational(832, 2809));
  CHECK(frac(exactDensity(2, 3, "vn-strict")) == BigRational(773, 2704));

  CHECK(frac(exactDensity(2, 2, "remnant", true)) == BigRational(144, 289));
  CHECK(frac(exactDensity(2, 3, "remnant", true)) == BigRational(1880, 2809));
  CHECK(frac(exactDensity(2, 2, "remnant")) == BigRational(9, 16));

  CHECK(exactDensity(2, 3, "kn", true).hits == 0);
  CHECK(frac(exactDensity(2, 4, "kn", true)) == BigRational(16, 25921));
  CHECK(frac(exactDensity(2, 3, "ln", true)) == BigRational(20, 2809));
  CHECK(frac(exactDensity(2, 4, "ln", true)) == BigRational(413, 25921));
}

TEST_CASE("exact densities: degenerate and guarded cases") {
  ExactDensity identityOnly = exactDensity(2, 0, "vn", true);
  CHECK(identityOnly.total == 1);
  CHECK(identityOnly.hits == 1);  // wedge-only record set is vacuously distinct
  CHECK(identityOnly.value() == 1.0);
  CHECK_THROWS_AS(exactDensity(2, 0, "vn", false), std::domain_error);
  CHECK_THROWS_AS(exactDensity(3, 4, "vn"), CapExceededError);  // 937^3 tuples
  CHECK_THROWS_AS(exactDensity(2, 3, "vn", false, 100), CapExceededError);
  CHECK_THROWS_AS(exactDensity(2, 2, "no-such-predicate"), std::invalid_argument);

  // name lookup and direct callable agree
  Predicate loose = [](const Endomorphism& e) { return isVn(e, VnReading::acrossOnly); };
  CHECK(frac(exactDensity(2, 2, loose)) == frac(exactDensity(2, 2, "vn")));
}

TEST_CASE("estimator is deterministic for any worker count") {
  SampleConfig cfg;
  cfg.n = 2;
  cfg.p = 4;
  cfg.trials = 6000;
  cfg.seed = 99;
  cfg.predicate = "vn";

  cfg.threads = 1;
  DensityEstimate one = estimateDensity(cfg);
  cfg.threads = 4;
  DensityEstimate four = estimateDensity(cfg);
  cfg.threads = 16;
  DensityEstimate sixteen = estimateDensity(cfg);
  CHECK(one.hits == four.hits);
  CHECK(one.hits == sixteen.hits);
  CHECK(four.threadsUsed == 4);

  DensityEstimate again = estimateDensity(cfg);
  CHECK(again.hits == sixteen.hits);

  cfg.seed = 100;
  CHECK(estimateDensity(cfg).hits != one.hits);

  CHECK(one.proportion == doctest::Approx(double(one.hits) / 6000).epsilon(1e-15));
  CHECK(one.ciLow <= one.proportion);
  CHECK(one.proportion <= one.ciHigh);
  CHECK(one.n == 2);
  CHECK(one.predicate == "vn");
  CHECK_FALSE(one.includeIdentity);
}

TEST_CASE("estimates agree with exhaustive densities") {
  auto run = [](int p, double exact) {
    SampleConfig cfg;
    cfg.n = 2;
    cfg.p = p;
    cfg.trials = 20'000;
    cfg.seed = 1;
    cfg.predicate = "vn";
    cfg.threads = 1;
    DensityEstimate est = estimateDensity(cfg);
    double se = std::sqrt(exact * (1 - exact) / double(cfg.trials));
    CHECK(std::abs(est.proportion - exact) < 3 * se);
  };
  run(2, 25.0 / 64.0);
  run(3, 849.0 / 2704.0);
}

TEST_CASE("remnant frequency grows with word length") {
  auto at = [](int p) {
    SampleConfig cfg;
    cfg.n = 2;
    cfg.p = p;
    cfg.trials = 4000;
    cfg.seed = 5;
    cfg.predicate = "remnant";
    cfg.threads = 1;
    return estimateDensity(cfg).proportion;
  };
  double slack = 2 * std::sqrt(0.25 / 4000) * 2;  // two 2-sigma allowances
  double prev = at(3);
  for (int p : {6, 9, 12}) {
    double cur = at(p);
    CHECK(cur + slack > prev);
    prev = cur;
  }
  CHECK(prev > 0.80);  // near-certain remnant by p = 12
}

TEST_CASE("thread resolution") {
  CHECK(resolveThreads(3) == 3);
  setenv("WECKEN_THREADS", "2", 1);
  CHECK(resolveThreads(0) == 2);
  setenv("WECKEN_THREADS", "junk", 1);
  CHECK(resolveThreads(0) >= 1);
  unsetenv("WECKEN_THREADS");
  CHECK(resolveThreads(0) >= 1);
}
