#pragma once
// Closed-form density bounds: the derangement-based lower bound c_n, the
// product bound d_n, the refined double-sum bound d_n*, the upper bound for
// D(V_n), and the named constants.

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wecken/word.hpp"

namespace wecken {

using BigRational = boost::multiprecision::cpp_rational;

BigInt derangements(int n);  // !n, n >= 0

// Floating evaluations (n >= 2).  Direct products/pows for small n, log-space
// accumulation once factorials and binomials leave double range.
double cLower(int n);
double vUpper(int n);
double dLower(int n);
double dStarLower(int n);

// Exact rational evaluations for golden tests; limited to n <= 50 where the
// numerators stay manageable.
BigRational cLowerExact(int n);
BigRational vUpperExact(int n);
BigRational dLowerExact(int n);
BigRational dStarLowerExact(int n);

struct Constants {
  double invE, invE2, invE3;
  double w2Lower;  // 23/108
};
Constants constants();

struct BoundsRow {
  int n = 0;
  double cLower = 0, dLower = 0, dStarLower = 0, vUpper = 0;
  std::optional<double> w2Lower;  // populated for n = 2 only
};

std::vector<BoundsRow> boundsTable(const std::vector<int>& ns);

// Header n,c_lower,d_lower,dstar_lower,v_upper,w2_lower; 6 significant
// digits; w2_lower empty except at n = 2.
std::string boundsCsv(const std::vector<BoundsRow>& rows);

}  // namespace wecken
