#pragma once
// Seeded uniform sampling over G_p, Monte Carlo density estimation with
// Wilson intervals, and exhaustive small-case densities.  Trials use
// counter-derived RNG substreams so results are identical for any worker
// count.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "wecken/classes.hpp"

namespace wecken {

struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased bounded draw (multiply-shift with rejection).
  std::uint64_t nextBelow(std::uint64_t bound);
};

// Independent substream for one trial of one experiment.
SplitMix64 trialStream(std::uint64_t seed, std::uint64_t trial);

// Uniform draws over G_p (or G_p minus the identity), length weighted by the
// exact word counts.  Construction precomputes the cumulative counts.
class WordSampler {
public:
  WordSampler(int n, int p, bool includeIdentity);
  Word draw(SplitMix64& rng) const;
  const BigInt& domainSize() const { return total_; }

private:
  int n_, p_;
  int minLength_;
  std::vector<BigInt> cumulative_;  // by length, starting at minLength_
  BigInt total_;
  bool fits64_ = false;
  std::vector<std::uint64_t> cumulative64_;
  unsigned bits_ = 0;  // top bit width of total_ for the big rejection path

  BigInt drawBig(SplitMix64& rng) const;
};

Word sampleWord(int n, int p, SplitMix64& rng, bool includeIdentity = true);
Endomorphism sampleEndomorphism(int n, int p, SplitMix64& rng, bool includeIdentity = true);

std::pair<double, double> wilsonInterval(std::uint64_t hits, std::uint64_t trials,
                                         double confidence = 0.95);

struct SampleConfig {
  int n = 2, p = 2;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  std::string predicate = "vn";
  bool includeIdentity = false;  // experiments sample nonidentity images
  unsigned threads = 0;          // 0: WECKEN_THREADS env var, else hardware count
};

struct DensityEstimate {
  int n = 0, p = 0;
  std::uint64_t trials = 0, seed = 0, hits = 0;
  std::string predicate;
  bool includeIdentity = false;
  double proportion = 0, ciLow = 0, ciHigh = 0;
  double elapsedSeconds = 0;
  unsigned threadsUsed = 0;
};

DensityEstimate estimateDensity(const SampleConfig& cfg);

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExactDensity {
  BigInt hits = 0, total = 0;
  double value() const;
};

// Exhaustive density of the predicate over all |G_p|^n image tuples (or the
// nonidentity variant).  Refuses when the tuple count exceeds the cap.
ExactDensity exactDensity(int n, int p, const Predicate& pred, bool includeIdentity = false,
                          std::uint64_t tupleCap = 10'000'000);
ExactDensity exactDensity(int n, int p, std::string_view predicateName,
                          bool includeIdentity = false, std::uint64_t tupleCap = 10'000'000);

unsigned resolveThreads(unsigned requested);

}  // namespace wecken
