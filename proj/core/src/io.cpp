#include "cayscheme/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cayscheme/errors.hpp"

namespace cayscheme {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void check_header(const json& doc, const std::string& format) {
  if (!doc.is_object()) throw ParseError("document root must be an object");
  if (doc.value("format", "") != format)
    throw ParseError("field \"format\" must be \"" + format + "\"");
  if (doc.value("version", 0) != 1)
    throw ParseError("field \"version\" must be 1");
}

std::vector<std::vector<int>> int_grid(const json& arr, const char* field) {
  if (!arr.is_array()) throw ParseError(std::string("field \"") + field + "\" must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& row : arr) {
    if (!row.is_array()) throw ParseError(std::string("field \"") + field + "\" rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw ParseError(std::string("field \"") + field + "\" entries must be integers");
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

FiniteGroup group_from_json(const std::string& text, int cap) {
  json doc = parse_document(text);
  check_header(doc, "cayscheme-group");
  int sources = doc.contains("table") + doc.contains("permutation_generators") +
                doc.contains("builtin");
  if (sources != 1)
    throw ParseError("exactly one of \"table\", \"permutation_generators\", \"builtin\" required");
  if (doc.contains("table")) return group_from_table(int_grid(doc["table"], "table"), cap);
  if (doc.contains("permutation_generators"))
    return group_from_permutations(int_grid(doc["permutation_generators"], "permutation_generators"),
                                   cap);
  if (!doc["builtin"].is_string()) throw ParseError("field \"builtin\" must be a string");
  return group_builtin(doc["builtin"].get<std::string>(), cap);
}

FiniteGroup load_group_file(const std::string& path, int cap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return group_from_json(buf.str(), cap);
}

FiniteGroup group_from_source(const std::string& source, int cap) {
  if (source.rfind("builtin:", 0) == 0) return group_builtin(source.substr(8), cap);
  return load_group_file(source, cap);
}

std::string group_to_json(const FiniteGroup& g) {
  json doc;
  doc["format"] = "cayscheme-group";
  doc["version"] = 1;
  json table = json::array();
  for (int a = 0; a < g.n; ++a) {
    json row = json::array();
    for (int b = 0; b < g.n; ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  return doc.dump(2);
}

std::string scheme_to_json(const AssociationScheme& s, bool include_relation) {
  json doc;
  doc["format"] = "cayscheme-scheme";
  doc["version"] = 1;
  doc["n"] = s.n;
  doc["d"] = s.d;
  doc["valencies"] = valencies(s);
  doc["transpose_map"] = s.transpose_map;
  if (include_relation) {
    json rel = json::array();
    for (int g = 0; g < s.n; ++g) {
      json row = json::array();
      for (int h = 0; h < s.n; ++h) row.push_back(s.rel(g, h));
      rel.push_back(std::move(row));
    }
    doc["relation"] = std::move(rel);
  }
  return doc.dump(2);
}

std::string eigensystem_to_json(const Eigensystem& e, const Int& frame) {
  json doc;
  doc["format"] = "cayscheme-eigensystem";
  doc["version"] = 1;
  doc["n"] = e.n;
  doc["d"] = e.d;
  json p = json::array();
  for (int r = 0; r <= e.d; ++r) {
    json row = json::array();
    for (int c = 0; c <= e.d; ++c) row.push_back(e.P(r, c).get_si());
    p.push_back(std::move(row));
  }
  doc["P"] = std::move(p);
  json q = json::array();
  for (int r = 0; r <= e.d; ++r) {
    json row = json::array();
    for (int c = 0; c <= e.d; ++c) row.push_back(to_string(e.Q(r, c)));
    q.push_back(std::move(row));
  }
  doc["Q"] = std::move(q);
  doc["valencies"] = e.v;
  doc["multiplicities"] = e.m;
  doc["frame_quotient"] = frame.get_str();
  return doc.dump(2);
}

namespace {

json spectrum_json(const SpectrumReport& s) {
  json out;
  out["source"] = s.source;
  out["has_odd"] = s.has_odd;
  json evs = json::array();
  for (auto& [value, mult] : s.eigenvalues) {
    json pair = json::array();
    pair.push_back(value);
    pair.push_back(mult);
    evs.push_back(std::move(pair));
  }
  out["eigenvalues"] = std::move(evs);
  return out;
}

const char* status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kPassed: return "passed";
    case VerifyStatus::kViolation: return "violation";
    case VerifyStatus::kInapplicable: return "inapplicable";
    case VerifyStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

}  // namespace

std::string verification_report_to_json(const VerificationReport& r, bool include_timings) {
  json doc;
  doc["format"] = "cayscheme-verification";
  doc["version"] = 1;
  doc["check"] = r.check;
  if (!r.group.empty()) doc["group"] = r.group;
  doc["status"] = status_name(r.status);
  doc["scheme_classes"] = r.scheme_classes;
  doc["cases_checked"] = r.cases_checked;
  doc["detail"] = r.detail;
  if (include_timings) doc["elapsed_seconds"] = r.elapsed_seconds;
  if (r.counterexample_vector) doc["counterexample"] = *r.counterexample_vector;
  if (r.counterexample_spectrum)
    doc["counterexample_spectrum"] = spectrum_json(*r.counterexample_spectrum);
  return doc.dump(2);
}

std::string class_algebra_report_to_json(const ClassAlgebraReport& r) {
  json doc;
  doc["format"] = "cayscheme-class-algebra";
  doc["version"] = 1;
  doc["primes"] = r.primes;
  doc["seed"] = r.seed;
  doc["pm_digests"] = r.pm_digests;
  json mults = json::array();
  for (const Int& m : r.multiplicities) mults.push_back(m.get_str());
  doc["multiplicities"] = std::move(mults);
  doc["frame_quotient"] = r.frame_quotient.get_str();
  doc["frame_quotient_parity"] = r.frame_quotient_odd ? "odd" : "even";
  doc["consistent_across_primes"] = r.consistent_across_primes;
  doc["class_count"] = r.class_count;
  return doc.dump(2);
}

std::string quotient_reports_to_json(const std::vector<QuotientReport>& reports,
                                     const std::string& group) {
  json doc;
  doc["format"] = "cayscheme-quotient-check";
  doc["version"] = 1;
  if (!group.empty()) doc["group"] = group;
  json arr = json::array();
  for (const auto& r : reports) {
    json item;
    item["prime"] = r.prime;  // 0 = exact rational check
    item["equitable"] = r.equitable;
    item["multiplicities_match"] = r.multiplicities_match;
    item["char_poly_divides"] = r.char_poly_divides;
    item["row_cell"] = r.row_cell;
    if (!r.witness.empty()) item["witness"] = r.witness;
    arr.push_back(std::move(item));
  }
  doc["checks"] = std::move(arr);
  bool all = !reports.empty();
  for (const auto& r : reports) all = all && r.all_pass();
  doc["all_pass"] = all;
  return doc.dump(2);
}

}  // namespace cayscheme
