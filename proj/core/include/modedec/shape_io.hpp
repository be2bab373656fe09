#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "modedec/waveform.hpp"

namespace modedec {

enum class ShapeFormat { bruker_text, csv, json };

/// Accepts "bruker", "bruker_text", "csv", "json".
ShapeFormat parse_shape_format(std::string_view name);
std::string_view file_extension(ShapeFormat format);

// bruker_text: "##TITLE= <title>", "##NPOINTS= <n>", "##XYPOINTS= (XY..XY)",
//   then "<amp>, <phase>" per sample (amp in [0,100] normalized to the
//   maximum, phase in degrees [0,360), six decimals), then "##END=".
// csv: "t_s,wx_rad_s,wy_rad_s,amp_rad_s,phase_rad", 17 significant digits.
// json: {"dt", "duration", "generator", "samples": [[wx, wy], ...]}.
//
// All formats use LF line endings. Throws std::invalid_argument for a
// bruker_text export of an all-zero waveform and std::runtime_error when the
// stream goes bad.
void export_shape(const Waveform& waveform, ShapeFormat format, std::ostream& out,
                  std::string_view title = "modedec");
std::string export_shape(const Waveform& waveform, ShapeFormat format,
                         std::string_view title = "modedec");

Waveform import_csv(std::istream& in);
Waveform import_json(std::istream& in);

}  // namespace modedec
