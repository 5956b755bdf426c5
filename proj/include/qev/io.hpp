#pragma once

// Document formats (JSON) and text/CSV emitters.
//
// CBBA document:
//   {"frame": ["A","B"], "tolerance": 1e-6,
//    "masses": [{"focal": ["A"], "re": 0.1, "im": -0.176776695297}, ...]}
// Dataset document:
//   {"name": "busemeyer2009-narrow", "p_g": 0.17, "p_a_given_g": 0.41,
//    "p_b": 0.83, "p_a_given_b": 0.63, "p_t": 0.59, "p_a": 0.69}
//
// All numbers are written with std::to_chars, so output never depends on the
// process locale.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qev/evidence.hpp"
#include "qev/fitting.hpp"

namespace qev::io {

struct MassRecord {
    std::vector<std::string> focal;
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const MassRecord&, const MassRecord&) = default;
};

struct CbbaDocument {
    std::vector<std::string> frame;
    double tolerance = kDefaultSumTolerance;
    std::vector<MassRecord> masses;

    friend bool operator==(const CbbaDocument&, const CbbaDocument&) = default;
};

/// Throws Errc::Parse on malformed JSON, missing fields, empty focal lists,
/// labels outside the frame or duplicated focal sets.
CbbaDocument parse_cbba_document(std::string_view text);
std::string serialize(const CbbaDocument& doc);

/// Builds the CBBA without validating it. Throws Errc::Parse for a bad frame.
Cbba to_cbba(const CbbaDocument& doc);
CbbaDocument to_document(const Cbba& m, double tolerance = kDefaultSumTolerance);

/// Reads, parses and validates at the document's tolerance. Throws Errc::Io,
/// Errc::Parse, or Errc::Validation (message lists every violation).
Cbba load_cbba(const std::filesystem::path& path);

ObservedDataset parse_dataset_document(std::string_view text);
std::string serialize(const ObservedDataset& ds);
/// Reads and parses; throws Errc::Validation when the dataset violates its
/// invariants.
ObservedDataset load_dataset(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over the target, so a
/// failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Fixed-point with the given number of fractional digits; values that round
/// to zero print without a minus sign.
std::string fixed(double v, int digits);
/// "0.097923 + 0.018634i"
std::string fixed(Complex z, int digits);

/// "x,y,k_abs" header then one row per point, 6 fractional digits.
std::string surface_csv(const std::vector<SurfacePoint>& points);

/// Header "dataset,method,p_g,p_a_given_g,p_b,p_a_given_b,p_t,p_a".
std::string rows_csv(const std::vector<ReportRow>& rows);
/// Column-aligned table of the same rows.
std::string rows_table(const std::vector<ReportRow>& rows);

/// Observed, fitted and published rows for every dataset, then averages,
/// plus a per-dataset SSE / interference summary.
std::string report_table(const Report& report);
std::string report_csv(const Report& report);

}  // namespace qev::io
