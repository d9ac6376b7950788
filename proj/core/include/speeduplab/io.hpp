#pragma once

// JSON documents for systems, jump functions and reports, and line-oriented
// trace exports.

#include <string>

#include <json.hpp>

#include "speeduplab/analysis.hpp"
#include "speeduplab/odometer.hpp"
#include "speeduplab/speedup.hpp"
#include "speeduplab/subshift.hpp"
#include "speeduplab/symbols.hpp"

namespace speeduplab {

using Json = nlohmann::ordered_json;

/// { "alphabet": n, "images": { "0": [..], ... } }. FormatError names the field.
Substitution substitution_from_json(const Json& doc);
Json to_json(const Substitution& theta);

/// { "left", "right", "table": [{ "word", "value" }], "default" }, or
/// { "cylinders": [{ "offset", "word", "value" }], "default" } compiled
/// against the language of `theta` (required for that form).
JumpFunction jump_from_json(const Json& doc, const Substitution* theta = nullptr);
Json to_json(const JumpFunction& p);

/// { "preperiod": [..], "cycle": [..] }.
OdometerSpec odometer_from_json(const Json& doc);
Json to_json(const OdometerSpec& alpha);

/// { "level": I, "q": [..] }.
OdometerJumpSpec odometer_jump_from_json(const Json& doc);
Json to_json(const OdometerJumpSpec& jump);

Json to_json(const Permutation& pi);
Json to_json(const PermutationTuple& pi);

/// Substitution document plus "pairs": [[i, l], ...] and "rendered" lines.
Json to_json(const SigmaSubstitution& sigma);

/// Rows [column, height, label, jump].
Json labeling_table(const Labeling& labeling);

/// "step,position,jump" lines with a header.
std::string walk_records(const WalkTrace& walk);

/// "n,sum" lines with a header.
std::string trace_csv(const PartialSumTrace& trace);

/// Summary of a trace: horizon, max_abs, checkpoints and their sums.
Json to_json(const PartialSumTrace& trace);

}  // namespace speeduplab
