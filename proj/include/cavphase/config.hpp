#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavphase/params.hpp"
#include "cavphase/sweep.hpp"

namespace cavphase {

enum class Mode { point, spectrum, contour, preset, validate };
enum class Format { csv, json };

struct RunConfig {
  Mode mode = Mode::point;
  SystemParams params;
  double delta_p = 0;
  std::string preset_id;     // preset mode only
  std::vector<Axis> axes;    // explicit --axis values, at most two
  std::string output;        // empty writes to stdout
  Format format = Format::csv;
  int workers = 0;           // <= 0 uses every core
  double tolerance_scale = 1;
  std::optional<std::string> help;  // set when --help was requested
};

// Keys accepted in config files and as --key flags.
const std::vector<std::string>& config_keys();

/// Reals as decimal numbers, optionally written as multiples of pi:
/// "1.5", "pi", "-0.5pi", "2*pi", "pi/2", "3pi/4". Returns nullopt otherwise.
std::optional<double> parse_real(std::string_view text);

/// "name:start:stop:count". Throws ParseError.
Axis parse_axis(std::string_view spec);

/// Applies flat `key = value` lines (with `#` comments) onto `params` and
/// `delta_p`. Throws ParseError naming the line.
void apply_config_text(std::string_view text, SystemParams& params, double& delta_p);

/// Builds a RunConfig from command-line arguments (without the program name).
/// Precedence: flags, then `config_text` (or the file named by --config when
/// no text is passed), then defaults. Throws ParseError for malformed input
/// and ValidationError for out-of-domain values.
RunConfig parse_config(const std::vector<std::string>& args,
                       std::optional<std::string> config_text = std::nullopt);

}  // namespace cavphase
