// JSON report emission for the command-line tool: a stable envelope
// (tool/version/kind/ok/params/results) around per-check serializers.
//
// Determinism contract: when SOURCE_DATE_EPOCH is set, its value is used as
// the report timestamp and all wall-clock duration fields are omitted, so a
// repeated run over identical inputs produces byte-identical files.
// QLOOP_REPORT_DIR provides a default output directory when the caller does
// not pass one explicitly.
#pragma once

#include "qloop/numeric_checks.hpp"
#include "qloop/prover.hpp"

#include "json.hpp"

#include <string>

namespace qloop {

using json = nlohmann::ordered_json;

#ifndef QLOOP_VERSION
#define QLOOP_VERSION "0.0.0"
#endif

inline constexpr const char* kToolName = "qloop";
inline constexpr const char* kToolVersion = QLOOP_VERSION;

/// True when SOURCE_DATE_EPOCH is set (timestamps pinned, durations omitted).
bool deterministic_reports();

/// SOURCE_DATE_EPOCH when set, otherwise the current UNIX time.
long long report_timestamp();

/// Output directory resolution: explicit CLI value, else QLOOP_REPORT_DIR,
/// else empty (meaning: do not write a file).
std::string resolve_report_dir(const std::string& cli_dir);

/// The standard envelope around one check's parameters and results.
json report_envelope(const std::string& kind, bool ok, json params, json results);

/// Serialize `doc` (2-space indent, trailing newline) to dir/name.json;
/// creates the directory if needed. Returns the full path written.
std::string write_report(const std::string& dir, const std::string& name, const json& doc);

json to_json(const cplx& z);
json to_json(const CheckResult& r);
json to_json(const GrothendieckResult& r);
json to_json(const ResummationCheck& r);
json to_json(const FactorizationResult& r);
json to_json(const DeterminantResult& r);
json to_json(const AnsatzScanResult& r);
json to_json(const NumericParams& p);
json to_json(const CaseMetrics& m);
json to_json(const NumericOutcome& o);

}  // namespace qloop
