#include "cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrlift/census.hpp"
#include "qrlift/lift.hpp"
#include "qrlift/oracle.hpp"
#include "qrlift/specparse.hpp"

namespace qrlift::cli {

namespace {

using nlohmann::ordered_json;

const char* condition_name(CncError::Condition c) {
  switch (c) {
    case CncError::Condition::Chain:
      return "chain";
    case CncError::Condition::Nilpotency:
      return "nilpotency";
    case CncError::Condition::Characteristic:
      return "characteristic";
  }
  return "unknown";
}

CncChain chain_from_text(const RingHandle& r, const std::string& text) {
  std::vector<Ideal> links;
  for (const std::vector<Element>& gens : parse_chain_generators(r, text)) {
    links.push_back(ideal_from_generators(r, gens));
  }
  return verify_cnc(r, links);
}

std::string chain_text(const CncChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.ideals().size(); ++i) {
    if (i > 0) out += " > ";
    out += chain.ideals()[i].describe();
  }
  return out;
}

void emit_describe(const RingHandle& r, const std::string& format, std::ostream& out) {
  std::optional<mpz_class> units;
  try {
    units = r->unit_count();
  } catch (const CapError&) {
  }
  if (format == "json") {
    ordered_json j;
    j["ring_spec"] = r->describe();
    j["cardinality"] = r->cardinality().get_str();
    j["characteristic"] = r->characteristic().get_str();
    j["units"] = units ? ordered_json(units->get_str()) : ordered_json(nullptr);
    j["enumerable"] = r->enumerable();
    out << j.dump(2) << "\n";
    return;
  }
  out << "ring            " << r->describe() << "\n"
      << "cardinality     " << r->cardinality().get_str() << "\n"
      << "characteristic  " << r->characteristic().get_str() << "\n"
      << "units           " << (units ? units->get_str() : "unknown (above cap)") << "\n"
      << "enumerable      " << (r->enumerable() ? "yes" : "no") << "\n";
}

void emit_qr_test(const RingHandle& r, const Element& a, const std::string& format,
                  std::ostream& out) {
  const bool verdict = is_qr_unit(r, a);
  if (format == "json") {
    ordered_json j;
    j["ring_spec"] = r->describe();
    j["value"] = r->format(a);
    j["is_qr_unit"] = verdict;
    out << j.dump(2) << "\n";
    return;
  }
  out << r->format(a) << " is " << (verdict ? "" : "not ")
      << "an invertible square in " << r->describe() << "\n";
}

void emit_sqrt(const RingHandle& r, const SolutionSet& roots, const std::string& format,
               std::ostream& out) {
  if (format == "json") {
    ordered_json j;
    j["ring_spec"] = r->describe();
    j["value"] = r->format(roots.target());
    j["count"] = roots.count();
    ordered_json list = ordered_json::array();
    for (const Element& y : roots.roots()) list.push_back(r->format(y));
    j["roots"] = std::move(list);
    out << j.dump(2) << "\n";
    return;
  }
  out << "roots of " << r->format(roots.target()) << " in " << r->describe() << ": "
      << roots.count() << "\n";
  for (const Element& y : roots.roots()) out << r->format(y) << "\n";
}

void emit_witness(const RingHandle& r, const LiftWitness& w, const std::string& format,
                  std::ostream& out) {
  if (format == "json") {
    ordered_json j;
    j["ring_spec"] = r->describe();
    j["mode"] = "chain";
    j["target"] = r->format(w.target());
    j["root"] = r->format(w.root());
    j["exponent"] = w.exponent().get_str();
    ordered_json trace = ordered_json::array();
    for (const mpz_class& s : w.exponent_trace()) trace.push_back(s.get_str());
    j["trace"] = std::move(trace);
    out << j.dump(2) << "\n";
    return;
  }
  out << "target    " << r->format(w.target()) << "\n"
      << "root      " << r->format(w.root()) << "\n"
      << "exponent  " << w.exponent().get_str() << "\n";
  if (!w.exponent_trace().empty()) {
    out << "trace     ";
    for (std::size_t i = 0; i < w.exponent_trace().size(); ++i) {
      if (i > 0) out << ", ";
      out << w.exponent_trace()[i].get_str();
    }
    out << "\n";
  }
}

// The least square root of the projection of a modulo the top ideal, found
// by scanning the quotient; this is the seed of a chain lift when the caller
// does not hand one over.
Element default_chain_root(const RingHandle& r, const CncChain& chain, const Element& a) {
  Quotient q = quotient(r, chain.top());
  q.ring()->require_enumerable();
  Element target = q.project(a);
  const std::uint64_t n = q.ring()->size_u64();
  std::optional<Element> best;
  for (std::uint64_t i = 0; i < n; ++i) {
    Element y = q.ring()->element_at(i);
    if (q.ring()->mul(y, y) == target && (!best || ElementLess{}(y, *best))) {
      best = std::move(y);
    }
  }
  if (!best) {
    throw HypothesisError(r->format(a) +
                          " has no square root modulo the top ideal; nothing to lift");
  }
  return q.representative(*best);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"invertible quadratic residues in finite commutative rings"};
  app.require_subcommand(1);

  std::uint64_t cap = kDefaultEnumerationCap;
  std::string format = "table";
  app.add_option("--cap", cap, "enumeration cap (elements walked per exhaustive scan)")
      ->envname("QRLIFT_CAP");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}));

  std::string ring_text, value_text, chain_arg, ideal_arg, root_arg, factors_arg;

  CLI::App* ring = app.add_subcommand("ring", "inspect rings");
  ring->fallthrough();
  ring->require_subcommand(1);
  CLI::App* describe = ring->add_subcommand("describe", "print ring figures");
  describe->fallthrough();
  describe->add_option("--ring", ring_text, "ring spec")->required();

  CLI::App* qr = app.add_subcommand("qr", "quadratic residue operations");
  qr->fallthrough();
  qr->require_subcommand(1);
  CLI::App* qr_test = qr->add_subcommand("test", "invertible square membership");
  qr_test->fallthrough();
  qr_test->add_option("--ring", ring_text, "ring spec")->required();
  qr_test->add_option("--value", value_text, "element literal")->required();
  CLI::App* qr_sqrt = qr->add_subcommand("sqrt", "all square roots of a value");
  qr_sqrt->fallthrough();
  qr_sqrt->add_option("--ring", ring_text, "ring spec")->required();
  qr_sqrt->add_option("--value", value_text, "element literal")->required();
  qr_sqrt->add_option("--factors", factors_arg, "prime factorization of the modulus");
  CLI::App* qr_census = qr->add_subcommand("census", "count invertible squares");
  qr_census->fallthrough();
  qr_census->add_option("--ring", ring_text, "ring spec")->required();
  CLI::Option* census_chain =
      qr_census->add_option("--chain", chain_arg, "ideal chain, generators ';'-separated");
  CLI::Option* census_factors =
      qr_census->add_option("--factors", factors_arg, "prime factorization of the modulus");

  CLI::App* lift = app.add_subcommand("lift", "lift roots along a chain or an ideal");
  lift->fallthrough();
  lift->add_option("--ring", ring_text, "ring spec")->required();
  lift->add_option("--value", value_text, "element whose root is wanted")->required();
  CLI::Option* lift_chain = lift->add_option("--chain", chain_arg, "ideal chain");
  CLI::Option* lift_ideal =
      lift->add_option("--ideal", ideal_arg, "ideal generators for quadratic refinement");
  CLI::Option* lift_root = lift->add_option("--root", root_arg, "starting root");

  CLI::App* cnc = app.add_subcommand("cnc", "chain conditions");
  cnc->fallthrough();
  cnc->require_subcommand(1);
  CLI::App* cnc_verify = cnc->add_subcommand("verify", "verify a chain of ideals");
  cnc_verify->fallthrough();
  cnc_verify->add_option("--ring", ring_text, "ring spec")->required();
  cnc_verify->add_option("--chain", chain_arg, "ideal chain")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force audits");
  oracle->fallthrough();
  oracle->require_subcommand(1);
  CLI::App* oracle_check = oracle->add_subcommand("check", "audit all identities");
  oracle_check->fallthrough();
  oracle_check->add_option("--ring", ring_text, "ring spec")->required();
  CLI::Option* oracle_chain = oracle_check->add_option("--chain", chain_arg, "ideal chain");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qrlift");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream war;
    const int code = app.exit(e, out, war);
    err << war.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (describe->parsed()) {
      emit_describe(make_ring(parse_ring_spec(ring_text), cap), format, out);
      return 0;
    }
    if (qr_test->parsed()) {
      RingHandle r = make_ring(parse_ring_spec(ring_text), cap);
      emit_qr_test(r, parse_element(r, value_text), format, out);
      return 0;
    }
    if (qr_sqrt->parsed()) {
      RingSpec spec = parse_ring_spec(ring_text);
      RingHandle r = make_ring(spec, cap);
      Element a = parse_element(r, value_text);
      if (!factors_arg.empty() && spec.kind() == RingSpec::Kind::ZMod) {
        emit_sqrt(r,
                  sqrt_zn(spec.zmod_modulus(), a.residue(),
                          parse_factorization(factors_arg), cap),
                  format, out);
      } else {
        emit_sqrt(r, sqrt_all(r, a), format, out);
      }
      return 0;
    }
    if (qr_census->parsed()) {
      if (*census_chain && *census_factors) {
        err << "usage: --factors only applies to the closed-form census without --chain\n";
        return 2;
      }
      RingSpec spec = parse_ring_spec(ring_text);
      RingHandle r = make_ring(spec, cap);
      ResidueReport rep = [&] {
        if (*census_chain) return chain_census(r, chain_from_text(r, chain_arg));
        std::optional<ZnFactorization> fact;
        if (*census_factors) fact = parse_factorization(factors_arg);
        if (spec.kind() == RingSpec::Kind::ZMod) {
          return zn_census(spec.zmod_modulus(), fact, cap);
        }
        if (spec.kind() == RingSpec::Kind::Product) {
          if (fact) throw DomainError("--factors does not apply to product rings");
          std::vector<ResidueReport> parts;
          for (const RingSpec& f : spec.factors()) {
            if (f.kind() != RingSpec::Kind::ZMod) {
              throw DomainError("the closed-form census needs modular factors; pass --chain");
            }
            parts.push_back(zn_census(f.zmod_modulus(), std::nullopt, cap));
          }
          return product_census(parts);
        }
        throw DomainError("this ring needs an explicit --chain for its census");
      }();
      out << (format == "json" ? report_to_json(rep) + "\n" : report_to_table(rep));
      return rep.all_checks_pass() ? 0 : 1;
    }
    if (lift->parsed()) {
      RingHandle r = make_ring(parse_ring_spec(ring_text), cap);
      Element a = parse_element(r, value_text);
      if (*lift_ideal) {
        if (!*lift_root) {
          err << "usage: --ideal refinement needs --root\n";
          return 2;
        }
        Ideal N = ideal_from_generators(r, parse_chain_generators(r, ideal_arg).at(0));
        Element y = root_in_coset(r, N, parse_element(r, root_arg), a);
        if (format == "json") {
          ordered_json j;
          j["ring_spec"] = r->describe();
          j["mode"] = "coset";
          j["target"] = r->format(a);
          j["root"] = r->format(y);
          j["ideal"] = N.describe();
          out << j.dump(2) << "\n";
        } else {
          out << "root      " << r->format(y) << "\n"
              << "ideal     " << N.describe() << "\n";
        }
        return 0;
      }
      CncChain chain = chain_from_text(r, *lift_chain ? chain_arg : std::string());
      Element g = *lift_root ? parse_element(r, root_arg)
                             : default_chain_root(r, chain, a);
      emit_witness(r, chain_power_lift(chain, g, a), format, out);
      return 0;
    }
    if (cnc_verify->parsed()) {
      RingHandle r = make_ring(parse_ring_spec(ring_text), cap);
      CncChain chain = chain_from_text(r, chain_arg);
      if (format == "json") {
        ordered_json j;
        j["ring_spec"] = r->describe();
        j["valid"] = true;
        ordered_json links = ordered_json::array();
        for (std::size_t i = 0; i + 1 < chain.length(); ++i) {
          links.push_back({{"ideal", chain.ideals()[i].describe()},
                           {"t", chain.nilpotency_exponents()[i]},
                           {"s", chain.additive_exponents()[i].get_str()}});
        }
        j["links"] = std::move(links);
        out << j.dump(2) << "\n";
      } else {
        out << "chain valid in " << r->describe() << ": " << chain_text(chain) << "\n";
        for (std::size_t i = 0; i + 1 < chain.length(); ++i) {
          out << "link " << (i + 1) << ": t=" << chain.nilpotency_exponents()[i]
              << " s=" << chain.additive_exponents()[i].get_str() << "\n";
        }
      }
      return 0;
    }
    if (oracle_check->parsed()) {
      RingHandle r = make_ring(parse_ring_spec(ring_text), cap);
      CncChain chain = chain_from_text(r, *oracle_chain ? chain_arg : std::string());
      std::vector<AuditRow> rows = audit(r, chain);
      if (format == "json") {
        ordered_json j = ordered_json::array();
        for (const AuditRow& row : rows) {
          j.push_back({{"name", row.name}, {"pass", row.pass}, {"details", row.details}});
        }
        out << j.dump(2) << "\n";
      } else {
        for (const AuditRow& row : rows) {
          out << (row.pass ? "pass  " : "FAIL  ") << row.name << "  " << row.details
              << "\n";
        }
      }
      return all_pass(rows) ? 0 : 1;
    }
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CncError& e) {
    err << "error: chain rejected, " << condition_name(e.condition())
        << " condition failed at link " << e.link() << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qrlift::cli
