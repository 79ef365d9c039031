#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cavphase/core_model.hpp"
#include "cavphase/sweep.hpp"

namespace cavphase {

inline constexpr int kSignificantDigits = 12;
inline constexpr const char* kCsvHeader =
    "delta_p,phi1,phi2,i_c,i_out_r,i_out_l,i_total,absorption,chi_re,chi_im,flag";

// Shortest-general formatting at 12 significant digits; "nan" for NaN.
std::string format_real(double v);
// The value format_real(v) denotes.
double round_significant(double v);

/// One header line then one LF-terminated row per record. Rejects empty tables;
/// throws Error if the stream fails.
void write_csv(std::ostream& out, std::span<const IntensityRecord> records);
void write_csv(std::ostream& out, const SweepResult& result);

/// Inverse of write_csv. Throws ParseError.
std::vector<IntensityRecord> read_csv(std::istream& in);

/// JSON document with the base parameters, axes and records; numbers carry
/// the same 12-digit values as the CSV, NaN becomes null.
void write_json(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const SystemParams& params,
                std::span<const IntensityRecord> records);

}  // namespace cavphase
