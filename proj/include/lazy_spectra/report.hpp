#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lazy_spectra/lazy_cca.hpp"
#include "lazy_spectra/lazy_ev.hpp"
#include "lazy_spectra/oracle.hpp"

// JSON artifacts. Every document carries "schema" and a "timestamp"; the
// timestamp is the only field that differs between identical runs.
namespace lazy_spectra::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "lazy-spectra/1";
// Vectors longer than this go to a binary sidecar file.
inline constexpr Index kInlineVectorLimit = 10000;

struct ExportOptions {
  // Path of the JSON being written; sidecars are named after it. Empty
  // forces inline vectors.
  std::string output_path;
  bool timestamp = true;
};

Json schedule_json(const AppxPcaSchedule& schedule);
Json config_json(const SolverConfig& config, const AppxPcaSchedule& schedule);
Json trace_json(const AppxPcaTrace& trace);
Json lemma_json(const oracle::LemmaReport& report);

Json genev_json(const SpectralResult& result, const ExportOptions& options);
// leakage is reported when an oracle value is available
Json cca_json(const CcaResult& result, const ExportOptions& options, std::optional<double> leakage = std::nullopt);

// Adds schema and timestamp fields in front of body.
Json envelope(const std::string& kind, const Json& body, bool timestamp);
void write_json(const Json& doc, const std::string& path);
// Copy of doc without the timestamp field, for comparisons.
Json strip_volatile(Json doc);

}  // namespace lazy_spectra::report
