#include "wecken/bounds.hpp"

#include <cmath>
#include <cstdio>

namespace wecken {

namespace {

void requireRank(int n) {
  if (n < 2) throw std::invalid_argument("bounds are defined for rank >= 2");
}

void requireExactRange(int n) {
  requireRank(n);
  if (n > 50) throw std::domain_error("exact-rational bounds are provided for n <= 50");
}

// N(k,n) = (2(n-1)^2 - (2k-2)) (2(n-1)^2 - (2k-1)); negative only at n = 2.
long long productNumerator(int k, int n) {
  long long a = 2ll * (n - 1) * (n - 1);
  return (a - (2 * k - 2)) * (a - (2 * k - 1));
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

BigRational ratPow(const BigRational& base, int e) {
  BigRational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

BigInt derangements(int n) {
  if (n < 0) throw std::invalid_argument("derangements: n must be nonnegative");
  BigInt prev = 1, cur = 0;  // !0, !1
  if (n == 0) return prev;
  for (int k = 2; k <= n; ++k) {
    BigInt next = (k - 1) * (cur + prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

BigRational cLowerExact(int n) {
  requireExactRange(n);
  BigInt d = derangements(n);
  BigRational q(n - 1, BigInt(n) * (2 * n - 1) * (2 * n - 1));
  BigRational r = ratPow(BigRational(2), n) * d * d;
  return r * ratPow(q, n);
}

BigRational vUpperExact(int n) {
  requireExactRange(n);
  BigRational base(4ll * n * n - 6 * n + 3, 4ll * n * n - 2 * n);
  return ratPow(base, n);
}

BigRational dLowerExact(int n) {
  requireExactRange(n);
  BigRational r = 1;
  BigInt den = BigInt(n) * (n - 1) * (2 * n - 1) * (2 * n - 1);
  for (int k = 1; k <= n; ++k) r *= BigRational(productNumerator(k, n), den);
  return r;
}

BigRational dStarLowerExact(int n) {
  requireExactRange(n);
  long long A = 2ll * (n - 1) * (n - 1);
  BigInt denT = BigInt(n) * (2 * n - 1) * (2 * n - 1);
  BigInt denN = denT * (n - 1);
  BigRational q(n - 1, denT);
  BigRational sum = 0;
  for (int c = 0; c <= n; ++c) {
    for (int b = 0; b <= n - c; ++b) {
      BigRational term = BigRational(binomial(n, c) * binomial(n - c, b));
      term *= ratPow(BigRational(2), b) * ratPow(q, c);
      for (int j = 1; j <= b; ++j) term *= BigRational(A - (2 * c + b + j - 1), denT);
      for (int k = c + b + 1; k <= n; ++k) term *= BigRational(productNumerator(k, n), denN);
      sum += term;
    }
  }
  return sum;
}

double cLower(int n) {
  requireRank(n);
  double q = (n - 1.0) / (static_cast<double>(n) * (2.0 * n - 1) * (2.0 * n - 1));
  if (n <= 50) {
    double d = static_cast<double>(derangements(n));
    return std::pow(2.0, n) * d * d * std::pow(q, n);
  }
  // !n = n!/e to relative accuracy ~1/n!; ample for the vanishing tail
  double logD = std::lgamma(n + 1.0) - 1.0;
  return std::exp(n * std::log(2.0) + 2.0 * logD + n * std::log(q));
}

double vUpper(int n) {
  requireRank(n);
  double num = 4.0 * n * n - 6.0 * n + 3.0;
  double den = 4.0 * n * n - 2.0 * n;
  return std::pow(num / den, n);
}

double dLower(int n) {
  requireRank(n);
  double den = static_cast<double>(n) * (n - 1.0) * (2.0 * n - 1) * (2.0 * n - 1);
  double r = 1.0;
  double a = 2.0 * (n - 1.0) * (n - 1.0);
  for (int k = 1; k <= n; ++k) r *= (a - (2.0 * k - 2)) * (a - (2.0 * k - 1)) / den;
  // at n = 2 the k = n factor is (0)(-1), leaving r = -0.0; normalize so tables print 0
  return r + 0.0;
}

namespace {

double dStarDirect(int n) {
  // every binomial stays within double range here
  double A = 2.0 * (n - 1.0) * (n - 1.0);
  double denT = static_cast<double>(n) * (2.0 * n - 1) * (2.0 * n - 1);
  double denN = denT * (n - 1.0);
  double q = (n - 1.0) / denT;
  long double sum = 0;
  for (int c = 0; c <= n; ++c) {
    for (int b = 0; b <= n - c; ++b) {
      long double term = static_cast<double>(binomial(n, c) * binomial(n - c, b));
      term *= std::pow(2.0, b) * std::pow(q, c);
      for (int j = 1; j <= b; ++j) term *= (A - (2.0 * c + b + j - 1)) / denT;
      for (int k = c + b + 1; k <= n; ++k)
        term *= (A - (2.0 * k - 2)) * (A - (2.0 * k - 1)) / denN;
      sum += term;
    }
  }
  return static_cast<double>(sum);
}

double dStarLogSpace(int n) {
  // all summands are positive once n >= 3, so magnitudes can ride in logs
  double A = 2.0 * (n - 1.0) * (n - 1.0);
  double logDenT = std::log(static_cast<double>(n)) + 2.0 * std::log(2.0 * n - 1);
  double logDenN = logDenT + std::log(n - 1.0);
  double logq = std::log(n - 1.0) - logDenT;
  double log2 = std::log(2.0);

  std::vector<double> lgInt(n + 2);
  for (int i = 0; i <= n + 1; ++i) lgInt[i] = std::lgamma(i + 1.0);
  std::vector<double> suffixLogN(n + 2, 0.0);
  for (int k = n; k >= 1; --k)
    suffixLogN[k] = suffixLogN[k + 1] + std::log(A - (2.0 * k - 2)) + std::log(A - (2.0 * k - 1));

  long double sum = 0;
  for (int c = 0; c <= n; ++c) {
    double logChooseC = lgInt[n] - lgInt[c] - lgInt[n - c];
    for (int b = 0; b <= n - c; ++b) {
      double logChooseB = lgInt[n - c] - lgInt[b] - lgInt[n - c - b];
      double logTNum = std::lgamma(A - 2.0 * c - b + 1) - std::lgamma(A - 2.0 * c - 2.0 * b + 1);
      double logK = suffixLogN[c + b + 1] - (n - c - b) * logDenN;
      double logTerm = logChooseC + logChooseB + b * log2 + c * logq + logTNum - b * logDenT + logK;
      sum += std::exp(static_cast<long double>(logTerm));
    }
  }
  return static_cast<double>(sum);
}

}  // namespace

double dStarLower(int n) {
  requireRank(n);
  return n <= 50 ? dStarDirect(n) : dStarLogSpace(n);
}

Constants constants() {
  return Constants{std::exp(-1.0), std::exp(-2.0), std::exp(-3.0), 23.0 / 108.0};
}

std::vector<BoundsRow> boundsTable(const std::vector<int>& ns) {
  std::vector<BoundsRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    BoundsRow row;
    row.n = n;
    row.cLower = cLower(n);
    row.dLower = dLower(n);
    row.dStarLower = dStarLower(n);
    row.vUpper = vUpper(n);
    if (n == 2) row.w2Lower = constants().w2Lower;
    rows.push_back(row);
  }
  return rows;
}

std::string boundsCsv(const std::vector<BoundsRow>& rows) {
  std::string out = "n,c_lower,d_lower,dstar_lower,v_upper,w2_lower\n";
  char buf[64];
  auto cell = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out += buf;
  };
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    cell(r.cLower);
    out += ',';
    cell(r.dLower);
    out += ',';
    cell(r.dStarLower);
    out += ',';
    cell(r.vUpper);
    out += ',';
    if (r.w2Lower) cell(*r.w2Lower);
    out += '\n';
  }
  return out;
}

}  // namespace wecken
