#pragma once

#include <string>
#include <vector>

#include "qrlift/ideal.hpp"

namespace qrlift {

// Exhaustive squaring table: row a holds every y with y^2 = a, sorted. Row
// sizes sum to |R| since each element squares to exactly one target.
class SquareTable {
 public:
  explicit SquareTable(RingHandle ring);

  const RingHandle& ring() const { return ring_; }
  const std::vector<std::vector<Element>>& rows() const { return rows_; }
  const std::vector<Element>& roots_of(const Element& a) const;
  mpz_class total() const;

 private:
  RingHandle ring_;
  std::vector<std::vector<Element>> rows_;
};

SquareTable brute_squares(const RingHandle& r);

// One audited statement. Mismatches are recorded, never thrown.
struct AuditRow {
  std::string name;
  bool pass = false;
  std::string details;
};

// Recomputes every counting identity for the chain from first principles
// (squaring tables, unit scans, projections) and compares the census output
// against that ground truth. When 2 fails to be invertible modulo the top
// ideal the identities are reported as out of scope rather than failed.
std::vector<AuditRow> audit(const RingHandle& r, const CncChain& chain);

bool all_pass(const std::vector<AuditRow>& rows);

}  // namespace qrlift
