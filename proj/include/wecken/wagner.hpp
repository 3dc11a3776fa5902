#pragma once
// Fixed-point bookkeeping for free-group endomorphisms: Wagner tails and
// indices, the remnant test, the direct-relation class partition, and the
// Nielsen number under Wagner's hypothesis.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wecken/word.hpp"

namespace wecken {

struct Endomorphism {
  int rank = 0;
  std::vector<Word> images;  // images[i-1] = phi(a_i)
};

// Validates rank >= 2, image count = rank, generators within range.
Endomorphism makeEndomorphism(int rank, std::vector<Word> images);
// Text form: images joined by ';' in generator order, e.g. "ba^3b;ab^-1a^2".
Endomorphism parseEndomorphism(std::string_view text, int n);
std::string formatEndomorphism(const Endomorphism& phi);

enum class RecordKind { wedge, occurrence };

struct FixedPointRecord {
  RecordKind kind = RecordKind::wedge;
  int owner = 0;     // generator index, 1-based; 0 for the wedge
  int position = 0;  // 1-based letter position of the occurrence in phi(a_owner)
  int epsilon = 0;   // sign of the occurrence; 0 for the wedge
  Word w, wBar;      // tail pair; both trivial for the wedge
  int index = 0;     // +1 for the wedge, -epsilon for occurrences
};

// Wedge record first, then occurrence records in (owner, position) order.
std::vector<FixedPointRecord> tailTable(const Endomorphism& phi);

struct GeneratorRemnant {
  int generator = 0;
  std::size_t left = 0, right = 0;  // worst-case cancellation from either side
  std::size_t imageLength = 0;
  bool ok = false;  // left + right < imageLength
};

struct RemnantReport {
  bool hasRemnant = false;
  std::vector<GeneratorRemnant> perGenerator;
};

RemnantReport remnantReport(const Endomorphism& phi);
bool hasRemnant(const Endomorphism& phi);

struct FixedPointClass {
  std::vector<int> records;  // indices into the tailTable record sequence
  int indexSum = 0;
  bool essential() const { return indexSum != 0; }
};

// Connected components of the direct-relation graph (tail sets intersect),
// in order of each class's least record.
std::vector<FixedPointClass> classPartition(const Endomorphism& phi);

struct NoRemnantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Count of essential classes.  Only valid when phi has remnant; throws
// NoRemnantError otherwise rather than returning an unsupported value.
int nielsenNumber(const Endomorphism& phi);

}  // namespace wecken
