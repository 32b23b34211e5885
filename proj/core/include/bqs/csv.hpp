#pragma once

#include "bqs/diagnostics.hpp"
#include "bqs/experiment.hpp"
#include "bqs/far_field.hpp"
#include "bqs/states.hpp"

#include <filesystem>
#include <string>

namespace bqs {

/// Shortest decimal form that round-trips a double ("%.17g"), locale-free.
std::string format_double(double v);

// Interchange formats. Every writer emits '#'-prefixed comment lines before
// a fixed header row; writers are deterministic byte-for-byte for identical
// inputs. Readers accept any comment lines and ignore blank lines.

/// State CSV: header "twice_l1,twice_l2,re,im", one row per amplitude with
/// |c| > 1e-12, plus a "# dimension=D" comment.
void write_state_csv(const std::filesystem::path& path, const QuditPureState& state);
QuditPureState read_state_csv(const std::filesystem::path& path);

/// Mixture CSV: header "twice_l,weight" plus "# dimension=D".
void write_mixture_csv(const std::filesystem::path& path, const CorrelatedMixture& mixture);
CorrelatedMixture read_mixture_csv(const std::filesystem::path& path);

/// Scan CSV: header "x2_m,singles,coincidences"; comments carry the fixed
/// slit, seed, acquisition and flux.
void write_scan_csv(const std::filesystem::path& path, const ScanRecord& record);
ScanRecord read_scan_csv(const std::filesystem::path& path);

/// Histogram CSV: header "twice_l1,twice_l2,probability,std_err".
void write_histogram_csv(const std::filesystem::path& path, const ProbabilityTable& table);
ProbabilityTable read_histogram_csv(const std::filesystem::path& path);

/// Fringe slice CSV: header "x1_m,rate" with "# x2_m=..." and
/// "# visibility=..." comments.
void write_slice_csv(const std::filesystem::path& path, const FringeSlice& slice);

/// Map CSV: header "x1_m,x2_m,rate" with a "# provenance=..." comment.
void write_map_csv(const std::filesystem::path& path, const CoincidenceMap& map);

/// Diagnostics report as "metric,value" rows (schmidt_1..., entropy_bits,
/// negativity, purity, witness_score, verdict).
void write_metrics_csv(const std::filesystem::path& path, const DiagnosticsReport& report);

/// Same report rendered as readable plain text.
std::string render_report_text(const DiagnosticsReport& report);

} // namespace bqs
