#include "wecken/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>
#include <tuple>

#include <boost/math/distributions/normal.hpp>

namespace wecken {

std::uint64_t SplitMix64::nextBelow(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection for exact uniformity
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    std::uint64_t threshold = -bound % bound;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

SplitMix64 trialStream(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return SplitMix64{z ^ (z >> 31)};
}

WordSampler::WordSampler(int n, int p, bool includeIdentity)
    : n_(n), p_(p), minLength_(includeIdentity ? 0 : 1) {
  if (n < 1) throw std::invalid_argument("WordSampler: rank must be positive");
  if (p < 0) throw std::invalid_argument("WordSampler: negative length bound");
  if (!includeIdentity && p == 0)
    throw std::domain_error("WordSampler: no nonidentity words of length 0");
  BigInt running = 0;
  for (int len = minLength_; len <= p; ++len) {
    running += countWordsOfLength(n, len);
    cumulative_.push_back(running);
  }
  total_ = running;
  if (total_ <= std::numeric_limits<std::uint64_t>::max()) {
    fits64_ = true;
    for (const BigInt& c : cumulative_)
      cumulative64_.push_back(static_cast<std::uint64_t>(c));
  } else {
    bits_ = boost::multiprecision::msb(total_ - 1) + 1;
  }
}

BigInt WordSampler::drawBig(SplitMix64& rng) const {
  // assemble bits_ random bits and reject values >= total_
  const unsigned words = (bits_ + 63) / 64;
  const unsigned topBits = bits_ - 64 * (words - 1);
  const std::uint64_t topMask =
      topBits == 64 ? ~0ull : ((std::uint64_t{1} << topBits) - 1);
  while (true) {
    BigInt r = rng.next() & topMask;
    for (unsigned i = 1; i < words; ++i) r = (r << 64) | rng.next();
    if (r < total_) return r;
  }
}

Word WordSampler::draw(SplitMix64& rng) const {
  std::size_t lenIdx = 0;
  if (fits64_) {
    std::uint64_t r = rng.nextBelow(static_cast<std::uint64_t>(total_));
    while (r >= cumulative64_[lenIdx]) ++lenIdx;
  } else {
    BigInt r = drawBig(rng);
    while (r >= cumulative_[lenIdx]) ++lenIdx;
  }
  int length = minLength_ + static_cast<int>(lenIdx);
  std::vector<Letter> ls;
  ls.reserve(length);
  for (int i = 0; i < length; ++i) {
    if (i == 0) {
      ls.push_back(letterFromRank(static_cast<int>(rng.nextBelow(2 * n_))));
    } else {
      int forbidden = letterRank(-ls.back());
      int r = static_cast<int>(rng.nextBelow(2 * n_ - 1));
      ls.push_back(letterFromRank(r < forbidden ? r : r + 1));
    }
  }
  return Word::fromReducedUnchecked(std::move(ls));
}

Word sampleWord(int n, int p, SplitMix64& rng, bool includeIdentity) {
  return WordSampler(n, p, includeIdentity).draw(rng);
}

Endomorphism sampleEndomorphism(int n, int p, SplitMix64& rng, bool includeIdentity) {
  WordSampler sampler(n, p, includeIdentity);
  std::vector<Word> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) images.push_back(sampler.draw(rng));
  return makeEndomorphism(n, std::move(images));
}

std::pair<double, double> wilsonInterval(std::uint64_t hits, std::uint64_t trials,
                                         double confidence) {
  if (trials == 0) throw std::invalid_argument("wilsonInterval: trials must be positive");
  if (hits > trials) throw std::invalid_argument("wilsonInterval: hits exceed trials");
  if (confidence <= 0 || confidence >= 1)
    throw std::invalid_argument("wilsonInterval: confidence must lie in (0,1)");
  boost::math::normal_distribution<double> normal;
  double z = boost::math::quantile(normal, 0.5 + confidence / 2);
  double nT = static_cast<double>(trials);
  double pHat = static_cast<double>(hits) / nT;
  double z2 = z * z;
  double denom = 1 + z2 / nT;
  double center = (pHat + z2 / (2 * nT)) / denom;
  double half = z * std::sqrt(pHat * (1 - pHat) / nT + z2 / (4 * nT * nT)) / denom;
  // center - half == 0 exactly when hits == 0 (and dually at hits == trials);
  // pin the endpoints so rounding cannot leak past them
  double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  double high = hits == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

unsigned resolveThreads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WECKEN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

DensityEstimate estimateDensity(const SampleConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("estimateDensity: trials must be positive");
  const PredicateEntry* entry = findPredicate(cfg.predicate);
  if (!entry) throw std::invalid_argument("unknown predicate: " + cfg.predicate);
  const Predicate& pred = entry->fn;

  WordSampler sampler(cfg.n, cfg.p, cfg.includeIdentity);
  unsigned threads = resolveThreads(cfg.threads);
  if (threads > cfg.trials) threads = static_cast<unsigned>(cfg.trials);

  auto started = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> hitsPerWorker(threads, 0);
  auto worker = [&](unsigned w) {
    std::uint64_t lo = cfg.trials * w / threads;
    std::uint64_t hi = cfg.trials * (w + 1) / threads;
    std::uint64_t hits = 0;
    Endomorphism e{cfg.n, std::vector<Word>(cfg.n)};
    for (std::uint64_t t = lo; t < hi; ++t) {
      SplitMix64 rng = trialStream(cfg.seed, t);
      for (int i = 0; i < cfg.n; ++i) e.images[i] = sampler.draw(rng);
      if (pred(e)) ++hits;
    }
    hitsPerWorker[w] = hits;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  std::uint64_t hits = 0;
  for (std::uint64_t h : hitsPerWorker) hits += h;
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);

  DensityEstimate est;
  est.n = cfg.n;
  est.p = cfg.p;
  est.trials = cfg.trials;
  est.seed = cfg.seed;
  est.hits = hits;
  est.predicate = cfg.predicate;
  est.includeIdentity = cfg.includeIdentity;
  est.proportion = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  std::tie(est.ciLow, est.ciHigh) = wilsonInterval(hits, cfg.trials);
  est.elapsedSeconds = elapsed.count();
  est.threadsUsed = threads;
  return est;
}

double ExactDensity::value() const {
  if (total == 0) return 0.0;
  return static_cast<double>(boost::multiprecision::cpp_rational(hits, total));
}

ExactDensity exactDensity(int n, int p, const Predicate& pred, bool includeIdentity,
                          std::uint64_t tupleCap) {
  if (n < 2) throw std::invalid_argument("exactDensity: rank must be at least 2");
  BigInt words = countWords(n, p) - (includeIdentity ? 0 : 1);
  if (words == 0) throw std::domain_error("exactDensity: empty sample space (p = 0 without identity)");
  BigInt tuples = 1;
  for (int i = 0; i < n; ++i) tuples *= words;
  if (tuples > tupleCap)
    throw CapExceededError("exactDensity: " + tuples.str() + " tuples exceed cap " +
                           std::to_string(tupleCap));

  auto vocabulary = enumerateWords(n, p, std::numeric_limits<std::uint64_t>::max());
  if (!includeIdentity) vocabulary.erase(vocabulary.begin());

  std::vector<std::size_t> idx(n, 0);
  std::vector<Word> images(n, vocabulary.front());
  BigInt hits = 0;
  while (true) {
    if (pred(Endomorphism{n, images})) ++hits;
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < vocabulary.size()) {
        images[pos] = vocabulary[idx[pos]];
        break;
      }
      idx[pos] = 0;
      images[pos] = vocabulary.front();
      --pos;
    }
    if (pos < 0) break;
  }
  return ExactDensity{hits, tuples};
}

ExactDensity exactDensity(int n, int p, std::string_view predicateName, bool includeIdentity,
                          std::uint64_t tupleCap) {
  const PredicateEntry* entry = findPredicate(predicateName);
  if (!entry) throw std::invalid_argument("unknown predicate: " + std::string(predicateName));
  return exactDensity(n, p, entry->fn, includeIdentity, tupleCap);
}

}  // namespace wecken
