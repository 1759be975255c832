#include "qrlift/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "qrlift/census.hpp"

namespace qrlift {

namespace {

void push(std::vector<AuditRow>& rows, std::string name, bool pass, std::string details) {
  rows.push_back({std::move(name), pass, std::move(details)});
}

std::string eq_text(const mpz_class& lhs, const mpz_class& rhs) {
  return lhs.get_str() + (lhs == rhs ? " == " : " != ") + rhs.get_str();
}

}  // namespace

SquareTable::SquareTable(RingHandle ring) : ring_(std::move(ring)) {
  ring_->require_enumerable();
  const std::uint64_t n = ring_->size_u64();
  rows_.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Element y = ring_->element_at(i);
    rows_[ring_->index_of(ring_->mul(y, y))].push_back(std::move(y));
  }
  for (std::vector<Element>& row : rows_) {
    std::sort(row.begin(), row.end(), ElementLess{});
  }
}

const std::vector<Element>& SquareTable::roots_of(const Element& a) const {
  return rows_.at(ring_->index_of(a));
}

mpz_class SquareTable::total() const {
  std::uint64_t sum = 0;
  for (const std::vector<Element>& row : rows_) sum += row.size();
  return mpz_class(static_cast<unsigned long>(sum));
}

SquareTable brute_squares(const RingHandle& r) { return SquareTable(r); }

bool all_pass(const std::vector<AuditRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const AuditRow& r) { return r.pass; });
}

std::vector<AuditRow> audit(const RingHandle& r, const CncChain& chain) {
  if (chain.ring().get() != r.get()) {
    throw DomainError("the chain belongs to a different ring");
  }
  r->require_enumerable();
  std::vector<AuditRow> rows;

  SquareTable table(r);
  const std::uint64_t n = r->size_u64();
  push(rows, "square_table_partition", table.total() == r->cardinality(),
       "root total " + table.total().get_str() + " over " +
           r->cardinality().get_str() + " elements");

  // Ground truth in the ring: units and squares of units, by definition.
  std::vector<std::uint8_t> unit(n, 0), in_q(n, 0);
  std::uint64_t unit_total = 0, q_total = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!r->is_unit(r->element_at(i))) continue;
    unit[i] = 1;
    ++unit_total;
    if (!table.rows()[i].empty()) {
      in_q[i] = 1;
      ++q_total;
    }
  }
  const mpz_class units_true(static_cast<unsigned long>(unit_total));
  const mpz_class q_true(static_cast<unsigned long>(q_total));

  const Ideal& top = chain.top();
  Quotient q = quotient(r, top);
  const RingHandle& qr = q.ring();

  if (!top.is_zero() && !qr->is_unit(qr->integer(2))) {
    push(rows, "hypothesis-not-met", true,
         "2 is not invertible modulo the top ideal, so the counting "
         "identities are out of scope; brute figures: units " +
             units_true.get_str() + ", invertible squares " + q_true.get_str());
    return rows;
  }

  // Ground truth in the quotient, same definitions one level down.
  SquareTable qtable(qr);
  const std::uint64_t qn = qr->size_u64();
  std::vector<std::uint8_t> in_qq(qn, 0);
  std::uint64_t q_unit_total = 0, qq_total = 0;
  for (std::uint64_t i = 0; i < qn; ++i) {
    if (!qr->is_unit(qr->element_at(i))) continue;
    ++q_unit_total;
    if (!qtable.rows()[i].empty()) {
      in_qq[i] = 1;
      ++qq_total;
    }
  }
  const mpz_class q_units_true(static_cast<unsigned long>(q_unit_total));
  const mpz_class qq_true(static_cast<unsigned long>(qq_total));

  // Uniform root count over the quotient residue classes, if any.
  std::optional<mpz_class> alpha_true;
  bool alpha_uniform = true;
  for (std::uint64_t i = 0; i < qn; ++i) {
    if (!in_qq[i]) continue;
    mpz_class count(static_cast<unsigned long>(qtable.rows()[i].size()));
    if (!alpha_true) {
      alpha_true = count;
    } else if (*alpha_true != count) {
      alpha_uniform = false;
    }
  }
  if (!alpha_uniform) alpha_true = std::nullopt;

  // The identities themselves, stated entirely in oracle figures.
  push(rows, "units_lift_identity", units_true == top.size() * q_units_true,
       eq_text(units_true, top.size() * q_units_true));
  push(rows, "qr_lift_identity", q_true == top.size() * qq_true,
       eq_text(q_true, top.size() * qq_true));
  if (alpha_true) {
    push(rows, "alpha_units_identity", *alpha_true * q_true == units_true,
         eq_text(*alpha_true * q_true, units_true));
  }

  // The census under audit, figure by figure.
  try {
    ResidueReport rep = chain_census(r, chain);
    push(rows, "census_units", rep.unit_count == units_true,
         eq_text(rep.unit_count, units_true));
    push(rows, "census_q_actual", rep.q_actual == q_true,
         eq_text(rep.q_actual, q_true));
    push(rows, "census_q_predicted", rep.q_predicted == top.size() * qq_true,
         eq_text(rep.q_predicted, top.size() * qq_true));
    const bool alpha_match =
        rep.alpha.has_value() == alpha_true.has_value() &&
        (!rep.alpha || *rep.alpha == *alpha_true);
    push(rows, "census_alpha", alpha_match,
         std::string("census ") +
             (rep.alpha ? rep.alpha->get_str() : "non-uniform") + ", oracle " +
             (alpha_true ? alpha_true->get_str() : "non-uniform"));
  } catch (const HypothesisError& e) {
    push(rows, "hypothesis-not-met", true,
         std::string("census declined the chain: ") + e.what());
  }

  // Residue class membership must be constant on every coset.
  std::vector<std::uint64_t> proj(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    proj[i] = qr->index_of(q.project(r->element_at(i)));
  }
  bool equiv = true;
  std::string equiv_details = "every coset agrees with its projection";
  for (std::uint64_t i = 0; i < n && equiv; ++i) {
    if (in_q[i] != in_qq[proj[i]]) {
      equiv = false;
      equiv_details = "class of " + r->format(r->element_at(i)) +
                      " disagrees with its members";
    }
  }
  push(rows, "coset_equivalence", equiv, equiv_details);

  // Root counts are flat across the chain: every residue keeps its count in
  // every proper quotient. The zero ideal level is the ring itself.
  bool counts_flat = true;
  std::string counts_details = "root counts constant across all levels";
  for (const Ideal& link : chain.ideals()) {
    if (link.is_zero()) continue;
    Quotient ql = quotient(r, link);
    SquareTable lt(ql.ring());
    for (std::uint64_t i = 0; i < n && counts_flat; ++i) {
      if (!in_q[i]) continue;
      const std::size_t here = table.rows()[i].size();
      const std::size_t there = lt.roots_of(ql.project(r->element_at(i))).size();
      if (here != there) {
        counts_flat = false;
        counts_details = r->format(r->element_at(i)) + " has " +
                         std::to_string(here) + " roots but " +
                         std::to_string(there) + " in " + ql.ring()->describe();
      }
    }
    if (!counts_flat) break;
  }
  push(rows, "solution_counts", counts_flat, counts_details);

  // T(a+N) sets: units partition across the residue classes of the quotient,
  // and each block has |s(a+N)| * |N| elements.
  std::vector<std::uint64_t> tsize(qn, 0);
  bool cover = true;
  std::string cover_details = "unit group partitioned by the residue classes";
  std::uint64_t covered = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t cls = proj[r->index_of(r->mul(r->element_at(i), r->element_at(i)))];
    if (!in_qq[cls]) {
      if (unit[i]) {
        cover = false;
        cover_details = "unit " + r->format(r->element_at(i)) +
                        " squares outside the residue classes";
      }
      continue;
    }
    if (!unit[i]) {
      cover = false;
      cover_details = "non-unit " + r->format(r->element_at(i)) +
                      " squares into a residue class";
      continue;
    }
    ++tsize[cls];
    ++covered;
  }
  if (cover && covered != unit_total) {
    cover = false;
    cover_details = "blocks cover " + std::to_string(covered) + " of " +
                    units_true.get_str() + " units";
  }
  push(rows, "t_partition", cover, cover_details);

  bool sizes = true;
  std::string sizes_details = "every block has quotient root count times |N|";
  for (std::uint64_t c = 0; c < qn && sizes; ++c) {
    if (!in_qq[c]) continue;
    mpz_class expect = mpz_class(static_cast<unsigned long>(qtable.rows()[c].size())) * top.size();
    if (mpz_class(static_cast<unsigned long>(tsize[c])) != expect) {
      sizes = false;
      sizes_details = "block of " + qr->format(qr->element_at(c)) + " has " +
                      std::to_string(tsize[c]) + " elements, expected " +
                      expect.get_str();
    }
  }
  push(rows, "t_size", sizes, sizes_details);

  return rows;
}

}  // namespace qrlift
