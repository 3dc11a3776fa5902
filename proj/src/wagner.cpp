#include "wecken/wagner.hpp"

#include <numeric>
#include <unordered_map>

namespace wecken {

Endomorphism makeEndomorphism(int rank, std::vector<Word> images) {
  if (rank < 2) throw std::invalid_argument("endomorphism rank must be at least 2");
  if (static_cast<int>(images.size()) != rank)
    throw std::invalid_argument("expected " + std::to_string(rank) + " images, got " +
                                std::to_string(images.size()));
  for (const Word& w : images)
    for (Letter x : w.letters())
      if (generatorOf(x) > rank)
        throw std::invalid_argument("image uses generator outside rank " + std::to_string(rank));
  return Endomorphism{rank, std::move(images)};
}

Endomorphism parseEndomorphism(std::string_view text, int n) {
  std::vector<Word> images;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    std::string_view piece =
        semi == std::string_view::npos ? text.substr(start) : text.substr(start, semi - start);
    images.push_back(parseWord(piece, n));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return makeEndomorphism(n, std::move(images));
}

std::string formatEndomorphism(const Endomorphism& phi) {
  std::string out;
  for (int i = 0; i < phi.rank; ++i) {
    if (i) out += ';';
    out += formatWord(phi.images[i], phi.rank);
  }
  return out;
}

std::vector<FixedPointRecord> tailTable(const Endomorphism& phi) {
  std::vector<FixedPointRecord> records;
  records.push_back(FixedPointRecord{RecordKind::wedge, 0, 0, 0, Word{}, Word{}, +1});
  for (int i = 1; i <= phi.rank; ++i) {
    const Word& u = phi.images[i - 1];
    const auto& ls = u.letters();
    for (std::size_t t = 0; t < ls.size(); ++t) {
      if (generatorOf(ls[t]) != i) continue;
      int eps = signOf(ls[t]);
      // phi(a_i) = v a_i^eps vbar: w = v (eps=+1) or v a_i^-1 (eps=-1),
      // wbar = vbar^-1 (eps=+1) or vbar^-1 a_i (eps=-1); both are prefixes
      // of u resp. u^-1, so the subview lengths below say it all.
      std::size_t wLen = (eps == 1) ? t : t + 1;
      std::size_t barLen = (eps == 1) ? ls.size() - t - 1 : ls.size() - t;
      FixedPointRecord r;
      r.kind = RecordKind::occurrence;
      r.owner = i;
      r.position = static_cast<int>(t) + 1;
      r.epsilon = eps;
      r.w = subview(u, wLen, Subview::initial);
      r.wBar = subview(u, barLen, Subview::terminalInverse);
      r.index = -eps;
      records.push_back(std::move(r));
    }
  }
  return records;
}

RemnantReport remnantReport(const Endomorphism& phi) {
  RemnantReport report;
  report.hasRemnant = true;
  std::vector<Word> inverses(phi.rank);
  for (int j = 0; j < phi.rank; ++j) inverses[j] = invert(phi.images[j]);
  for (int i = 0; i < phi.rank; ++i) {
    const Word& u = phi.images[i];
    GeneratorRemnant g;
    g.generator = i + 1;
    g.imageLength = u.length();
    for (int j = 0; j < phi.rank; ++j) {
      // left factor z in {phi(a_j)^{+-1}} \ {phi(a_i)^{-1}}; right symmetric
      g.left = std::max(g.left, cancellationLength(phi.images[j], u));
      if (j != i) g.left = std::max(g.left, cancellationLength(inverses[j], u));
      g.right = std::max(g.right, cancellationLength(u, phi.images[j]));
      if (j != i) g.right = std::max(g.right, cancellationLength(u, inverses[j]));
    }
    g.ok = g.left + g.right < g.imageLength;
    if (!g.ok) report.hasRemnant = false;
    report.perGenerator.push_back(g);
  }
  return report;
}

bool hasRemnant(const Endomorphism& phi) { return remnantReport(phi).hasRemnant; }

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<FixedPointClass> classPartition(const Endomorphism& phi) {
  auto records = tailTable(phi);
  int m = static_cast<int>(records.size());
  UnionFind uf(m);
  std::unordered_map<Word, int, WordHash> owner;
  for (int r = 0; r < m; ++r) {
    for (const Word* tail : {&records[r].w, &records[r].wBar}) {
      auto [it, inserted] = owner.emplace(*tail, r);
      if (!inserted) uf.unite(it->second, r);
    }
  }
  std::vector<FixedPointClass> classes;
  std::unordered_map<int, int> classOf;
  for (int r = 0; r < m; ++r) {
    int root = uf.find(r);
    auto [it, inserted] = classOf.emplace(root, static_cast<int>(classes.size()));
    if (inserted) classes.emplace_back();
    FixedPointClass& c = classes[it->second];
    c.records.push_back(r);
    c.indexSum += records[r].index;
  }
  return classes;
}

int nielsenNumber(const Endomorphism& phi) {
  if (!hasRemnant(phi))
    throw NoRemnantError("endomorphism has no remnant; Wagner's theorem does not apply");
  int count = 0;
  for (const auto& c : classPartition(phi))
    if (c.essential()) ++count;
  return count;
}

}  // namespace wecken
