#pragma once

#include <string>

#include "cayscheme/cayley.hpp"
#include "cayscheme/classalg.hpp"
#include "cayscheme/group.hpp"
#include "cayscheme/scheme.hpp"
#include "cayscheme/spectra.hpp"

namespace cayscheme {

// Documented file formats, all versioned JSON documents. See README for
// the schemas.

// Group document: exactly one of the fields "table" (n x n grid),
// "permutation_generators" (list of 0-indexed images) or "builtin"
// (family descriptor). Throws ParseError with field diagnostics.
FiniteGroup group_from_json(const std::string& text, int cap = kDefaultGroupCap);
FiniteGroup load_group_file(const std::string& path, int cap = kDefaultGroupCap);

// Resolves "builtin:<descriptor>" or a file path.
FiniteGroup group_from_source(const std::string& source, int cap = kDefaultGroupCap);

std::string group_to_json(const FiniteGroup& g);

// Scheme export; the relation table is size-gated behind the flag.
std::string scheme_to_json(const AssociationScheme& s, bool include_relation);

// Eigensystem export: P as exact integers, Q as "num/den" strings, plus
// valencies, multiplicities and the frame quotient.
std::string eigensystem_to_json(const Eigensystem& e, const Int& frame);

std::string verification_report_to_json(const VerificationReport& r,
                                        bool include_timings);
std::string class_algebra_report_to_json(const ClassAlgebraReport& r);
std::string quotient_reports_to_json(const std::vector<QuotientReport>& reports,
                                     const std::string& group);

}  // namespace cayscheme
