#include "cayscheme/runner.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cayscheme/catalogue.hpp"
#include "cayscheme/cayley.hpp"
#include "cayscheme/errors.hpp"
#include "cayscheme/io.hpp"
#include "cayscheme/parallel.hpp"
#include "cayscheme/spectra.hpp"

namespace cayscheme {

using nlohmann::json;

namespace {

bool is_config_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NotAGroupError*>(&e) ||
         dynamic_cast<const BadActionError*>(&e) || dynamic_cast<const OverflowError*>(&e) ||
         dynamic_cast<const NotInverseCompatibleError*>(&e);
}

std::string partition_plain(const Partition& p) {
  std::ostringstream os;
  for (int b = 0; b < p.block_count(); ++b) {
    os << "  block " << b << " (size " << p.blocks[b].size() << "): {";
    for (size_t i = 0; i < p.blocks[b].size(); ++i)
      os << (i ? "," : "") << p.blocks[b][i];
    os << "}\n";
  }
  return os.str();
}

json partition_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) blocks.push_back(b);
  return blocks;
}

struct QuotientCheckResult {
  std::vector<QuotientReport> reports;
  bool all_pass = false;
};

// Exact check when the conjugacy scheme is itself integral, then the
// mod-p check over `prime_count` admissible primes (SplitFailure moves
// on to the next prime in the pool).
QuotientCheckResult run_quotient_check(const FiniteGroup& g, int prime_count,
                                       uint64_t seed) {
  QuotientCheckResult result;
  AssociationScheme conj_scheme = scheme_from_partition(g, conjugacy_classes(g));
  AssociationScheme pc_scheme = scheme_from_partition(g, pc_classes(g));
  SubschemeResult sub = is_subscheme(pc_scheme, conj_scheme);
  if (!sub.ok()) throw Error("PC scheme is not a subscheme: " + sub.witness);
  Eigensystem pc_eigen = eigensystem_integral(pc_scheme);

  try {
    Eigensystem conj_eigen = eigensystem_integral(conj_scheme);
    result.reports.push_back(
        equitable_quotient_check(conj_eigen, pc_eigen, *sub.certificate));
  } catch (const NonIntegralSchemeError&) {
    // irrational conjugacy spectrum: the mod-p path below carries the check
  }

  AxiomReport axioms = verify_scheme_axioms(conj_scheme);
  if (!axioms.all_pass())
    throw Error("conjugacy scheme failed axiom verification: " + axioms.witness);
  const std::vector<int> v = valencies(conj_scheme);
  std::vector<uint64_t> pool = admissible_primes(g, prime_count + 8);
  int done = 0;
  for (size_t i = 0; i < pool.size() && done < prime_count; ++i) {
    try {
      ModPEigenmatrix pm =
          conjugacy_eigenmatrix_modp(conj_scheme, *axioms.numbers, pool[i], seed);
      std::vector<Int> mults = multiplicities_modp(pm, v, g.n);
      result.reports.push_back(
          equitable_quotient_check_modp(pm, mults, pc_eigen, *sub.certificate));
      ++done;
    } catch (const SplitFailureError&) {
      continue;
    }
  }
  if (done < prime_count) throw SplitFailureError("not enough primes split the class algebra");
  result.all_pass = !result.reports.empty();
  for (const auto& r : result.reports) result.all_pass = result.all_pass && r.all_pass();
  return result;
}

void print_verification_plain(std::ostream& out, const VerificationReport& r,
                              bool timings) {
  out << r.check << ": " << r.detail;
  if (timings) {
    char buf[32];
    snprintf(buf, sizeof(buf), " (%.3fs)", r.elapsed_seconds);
    out << buf;
  }
  out << "\n";
  if (r.counterexample_vector) {
    out << "  counterexample x = (";
    for (size_t i = 0; i < r.counterexample_vector->size(); ++i)
      out << (i ? "," : "") << (*r.counterexample_vector)[i];
    out << ")\n";
  }
  if (r.counterexample_spectrum) {
    out << "  spectrum:";
    for (auto& [value, mult] : r.counterexample_spectrum->eigenvalues)
      out << " " << value << "^" << mult;
    out << "\n";
  }
}

int verification_exit(const VerificationReport& r) {
  switch (r.status) {
    case VerifyStatus::kPassed: return kExitOk;
    case VerifyStatus::kViolation: return kExitViolation;
    case VerifyStatus::kInapplicable: return kExitConfig;
    case VerifyStatus::kSkipped: return kExitOk;
  }
  return kExitConfig;
}

struct SweepEntry {
  std::string descriptor;
  VerificationReport odd;
  VerificationReport sgn;
  ClassAlgebraReport class_algebra;
  Parity det_parity_pc = Parity::kEven;
  bool quotient_pass = false;
  bool ok = false;
  std::string error;
};

SweepEntry sweep_group(const std::string& descriptor, const RunConfig& cfg) {
  SweepEntry entry;
  entry.descriptor = descriptor;
  try {
    FiniteGroup g = group_builtin(descriptor, cfg.group_cap);
    entry.odd = verify_odd_eigenvalue(g);
    entry.odd.group = descriptor;
    entry.sgn = verify_signed_corollary(g, cfg.signed_class_cap);
    entry.sgn.group = descriptor;

    AssociationScheme conj_scheme = scheme_from_partition(g, conjugacy_classes(g));
    AxiomReport axioms = verify_scheme_axioms(conj_scheme);
    if (!axioms.all_pass()) throw Error("conjugacy axioms failed: " + axioms.witness);
    entry.class_algebra =
        analyze_class_algebra(g, conj_scheme, *axioms.numbers, cfg.prime_count, cfg.seed);

    Eigensystem pc_eigen = eigensystem_integral(scheme_from_partition(g, pc_classes(g)));
    entry.det_parity_pc = det_parity(pc_eigen.P);

    entry.quotient_pass = run_quotient_check(g, cfg.prime_count, cfg.seed).all_pass;

    bool odd_order = g.n % 2 == 1;
    entry.ok = entry.odd.status != VerifyStatus::kViolation &&
               entry.sgn.status != VerifyStatus::kViolation &&
               entry.class_algebra.consistent_across_primes && entry.quotient_pass &&
               (!odd_order || (entry.class_algebra.frame_quotient_odd &&
                               entry.det_parity_pc == Parity::kOdd &&
                               entry.odd.passed() &&
                               (entry.sgn.passed() || entry.sgn.status == VerifyStatus::kSkipped)));
  } catch (const Error& e) {
    entry.error = e.what();
    entry.ok = false;
  }
  return entry;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool json_format = cfg.format == "json";
  try {
    if (cfg.command == "describe-group") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      Partition conj = conjugacy_classes(g);
      Partition pow = power_classes(g);
      Partition pc = pc_classes(g);
      if (json_format) {
        json doc;
        doc["format"] = "cayscheme-group-summary";
        doc["version"] = 1;
        doc["order"] = g.n;
        doc["abelian"] = g.is_abelian();
        doc["exponent"] = exponent(g);
        doc["element_orders"] = g.elem_order;
        doc["conjugacy_class_sizes"] = [&] {
          std::vector<int> s;
          for (auto& b : conj.blocks) s.push_back(static_cast<int>(b.size()));
          return s;
        }();
        doc["power_class_count"] = pow.block_count();
        doc["pc_class_count"] = pc.block_count();
        out << doc.dump(2) << "\n";
      } else {
        out << "order " << g.n << (g.is_abelian() ? ", abelian" : ", non-abelian")
            << ", exponent " << exponent(g) << "\n";
        out << "conjugacy classes: " << conj.block_count() << ", power classes: "
            << pow.block_count() << ", pc classes: " << pc.block_count() << "\n";
      }
      return kExitOk;
    }

    if (cfg.command == "classes") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      Partition conj = conjugacy_classes(g);
      Partition pow = power_classes(g);
      Partition pc = pc_classes(g);
      if (json_format) {
        json doc;
        doc["format"] = "cayscheme-classes";
        doc["version"] = 1;
        doc["conjugacy"] = partition_json(conj);
        doc["power"] = partition_json(pow);
        doc["pc"] = partition_json(pc);
        out << doc.dump(2) << "\n";
      } else {
        out << "conjugacy classes:\n" << partition_plain(conj);
        out << "power classes:\n" << partition_plain(pow);
        out << "pc classes:\n" << partition_plain(pc);
      }
      return kExitOk;
    }

    if (cfg.command == "scheme") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      Partition part = cfg.partition == "conjugacy" ? conjugacy_classes(g) : pc_classes(g);
      AssociationScheme s = scheme_from_partition(g, part);
      AxiomReport axioms = verify_scheme_axioms(s);
      if (json_format) {
        out << scheme_to_json(s, cfg.include_relation) << "\n";
      } else {
        out << "scheme on " << s.n << " vertices with " << s.d + 1 << " classes\n";
        out << "valencies:";
        for (int v : valencies(s)) out << " " << v;
        out << "\naxioms: " << (axioms.all_pass() ? "pass" : ("FAIL " + axioms.witness))
            << "\n";
      }
      return axioms.all_pass() ? kExitOk : kExitViolation;
    }

    if (cfg.command == "eigen") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      Partition part = cfg.partition == "conjugacy" ? conjugacy_classes(g) : pc_classes(g);
      AssociationScheme s = scheme_from_partition(g, part);
      Eigensystem e = eigensystem_integral(s);
      Int frame = frame_quotient(e);
      if (json_format) {
        out << eigensystem_to_json(e, frame) << "\n";
      } else {
        out << "eigenmatrix P (rows = eigenspaces, columns = classes):\n";
        for (int r = 0; r <= e.d; ++r) {
          out << " ";
          for (int c = 0; c <= e.d; ++c) out << " " << e.P(r, c).get_str();
          out << "\n";
        }
        out << "multiplicities:";
        for (int m : e.m) out << " " << m;
        out << "\nvalencies:";
        for (int v : e.v) out << " " << v;
        out << "\nframe quotient: " << frame.get_str() << "\n";
        out << "det(P) parity: " << (det_parity(e.P) == Parity::kOdd ? "odd" : "even") << "\n";
      }
      return kExitOk;
    }

    if (cfg.command == "frame-quotient") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      AssociationScheme pc_scheme = scheme_from_partition(g, pc_classes(g));
      Eigensystem e = eigensystem_integral(pc_scheme);
      Int pc_frame = frame_quotient(e);
      AssociationScheme conj_scheme = scheme_from_partition(g, conjugacy_classes(g));
      AxiomReport axioms = verify_scheme_axioms(conj_scheme);
      if (!axioms.all_pass()) throw Error("conjugacy axioms failed: " + axioms.witness);
      ClassAlgebraReport car =
          analyze_class_algebra(g, conj_scheme, *axioms.numbers, cfg.prime_count, cfg.seed);
      if (json_format) {
        json doc = json::parse(class_algebra_report_to_json(car));
        doc["pc_frame_quotient"] = pc_frame.get_str();
        doc["pc_frame_quotient_parity"] = is_odd(pc_frame) ? "odd" : "even";
        out << doc.dump(2) << "\n";
      } else {
        out << "conjugacy scheme frame quotient: " << car.frame_quotient.get_str() << " ("
            << (car.frame_quotient_odd ? "odd" : "even") << ")\n";
        out << "pc scheme frame quotient: " << pc_frame.get_str() << " ("
            << (is_odd(pc_frame) ? "odd" : "even") << ")\n";
        out << "primes:";
        for (uint64_t p : car.primes) out << " " << p;
        out << "\nconsistent across primes: "
            << (car.consistent_across_primes ? "yes" : "NO") << "\n";
      }
      bool violation = !car.consistent_across_primes ||
                       (g.n % 2 == 1 && (!car.frame_quotient_odd || !is_odd(pc_frame)));
      return violation ? kExitViolation : kExitOk;
    }

    if (cfg.command == "verify-odd" || cfg.command == "verify-signed" ||
        cfg.command == "verify-gs") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      VerificationReport r;
      if (cfg.command == "verify-odd") r = verify_odd_eigenvalue(g);
      else if (cfg.command == "verify-signed") r = verify_signed_corollary(g, cfg.signed_class_cap);
      else r = verify_godsil_spiga(g, cfg.gs_class_cap);
      r.group = cfg.group_source;
      if (json_format) out << verification_report_to_json(r, cfg.include_timings) << "\n";
      else print_verification_plain(out, r, cfg.include_timings);
      return verification_exit(r);
    }

    if (cfg.command == "quotient-check") {
      FiniteGroup g = group_from_source(cfg.group_source, cfg.group_cap);
      QuotientCheckResult result = run_quotient_check(g, cfg.prime_count, cfg.seed);
      if (json_format) {
        out << quotient_reports_to_json(result.reports, cfg.group_source) << "\n";
      } else {
        for (const auto& r : result.reports) {
          if (r.prime == 0) out << "exact: ";
          else out << "mod " << r.prime << ": ";
          out << (r.all_pass() ? "equitable, multiplicities match, char poly divides"
                               : ("FAIL " + r.witness))
              << "\n";
        }
      }
      return result.all_pass ? kExitOk : kExitViolation;
    }

    if (cfg.command == "sweep") {
      if (cfg.order_lo < 1 || cfg.order_hi < cfg.order_lo)
        throw ParseError("sweep requires a valid --order-range lo..hi");
      if (cfg.order_hi > cfg.group_cap) throw ParseError("order range exceeds the group cap");
      std::vector<std::string> descriptors =
          enumerate_builtin_groups(cfg.order_lo, cfg.order_hi, cfg.odd_only);
      std::vector<SweepEntry> entries(descriptors.size());
      parallel_for(descriptors.size(),
                   [&](size_t i) { entries[i] = sweep_group(descriptors[i], cfg); });
      bool all_ok = true;
      if (json_format) {
        json doc;
        doc["format"] = "cayscheme-sweep";
        doc["version"] = 1;
        doc["order_range"] = {cfg.order_lo, cfg.order_hi};
        doc["odd_only"] = cfg.odd_only;
        json arr = json::array();
        for (const auto& e : entries) {
          json item;
          item["group"] = e.descriptor;
          item["ok"] = e.ok;
          if (!e.error.empty()) {
            item["error"] = e.error;
          } else {
            item["odd_eigenvalue"] = json::parse(
                verification_report_to_json(e.odd, cfg.include_timings));
            item["signed_odd_eigenvalue"] = json::parse(
                verification_report_to_json(e.sgn, cfg.include_timings));
            item["class_algebra"] = json::parse(class_algebra_report_to_json(e.class_algebra));
            item["pc_det_parity"] = e.det_parity_pc == Parity::kOdd ? "odd" : "even";
            item["quotient_check"] = e.quotient_pass;
          }
          arr.push_back(std::move(item));
          all_ok = all_ok && e.ok;
        }
        doc["groups"] = std::move(arr);
        doc["all_ok"] = all_ok;
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& e : entries) {
          out << (e.ok ? "[ok]  " : "[FAIL] ") << e.descriptor;
          if (!e.error.empty()) {
            out << " error: " << e.error << "\n";
            all_ok = false;
            continue;
          }
          out << "  odd: " << e.odd.detail << "; signed: " << e.sgn.detail
              << "; frame: " << e.class_algebra.frame_quotient.get_str() << " ("
              << (e.class_algebra.frame_quotient_odd ? "odd" : "even") << ")"
              << "; det(P): " << (e.det_parity_pc == Parity::kOdd ? "odd" : "even")
              << "; quotient: " << (e.quotient_pass ? "pass" : "FAIL") << "\n";
          all_ok = all_ok && e.ok;
        }
        out << (all_ok ? "sweep passed" : "sweep FAILED") << "\n";
      }
      return all_ok ? kExitOk : kExitViolation;
    }

    err << "unknown command \"" << cfg.command << "\"\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_config_error(e) ? kExitConfig : kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace cayscheme
