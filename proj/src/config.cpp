#include "cavphase/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "cavphase/errors.hpp"

namespace cavphase {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_plain(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double* field(SystemParams& p, double& delta_p, std::string_view key) {
  static const std::map<std::string, double SystemParams::*, std::less<>> members{
      {"g_n", &SystemParams::g_sqrt_n},     {"omega1", &SystemParams::omega1},
      {"omega2", &SystemParams::omega2},    {"omega_t", &SystemParams::omega_t},
      {"kappa", &SystemParams::kappa},      {"gamma12", &SystemParams::gamma12},
      {"gamma3", &SystemParams::gamma3},    {"gamma4", &SystemParams::gamma4},
      {"delta1", &SystemParams::delta1},    {"delta2", &SystemParams::delta2},
      {"delta_t", &SystemParams::delta_t},  {"delta_ac", &SystemParams::delta_ac},
      {"phi1", &SystemParams::phi1},        {"phi2", &SystemParams::phi2}};
  if (key == "delta_p") return &delta_p;
  const auto it = members.find(key);
  return it == members.end() ? nullptr : &(p.*(it->second));
}

void validate_run(const RunConfig& rc) {
  validate(rc.params);
  if (!std::isfinite(rc.delta_p)) throw ValidationError("delta_p must be finite");
  for (const auto& a : rc.axes) a.validate();
  if (rc.axes.size() == 2 && rc.axes[0].name == rc.axes[1].name)
    throw ValidationError("the two --axis values must name different axes");
  if (!(rc.tolerance_scale >= 0)) throw ValidationError("tolerance-scale must be >= 0");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "g_n",    "omega1", "omega2", "omega_t", "kappa",    "gamma12", "gamma3", "gamma4",
      "delta1", "delta2", "delta_t", "delta_ac", "phi1",   "phi2",    "delta_p"};
  return keys;
}

std::optional<double> parse_real(std::string_view text) {
  std::string_view s = trim(text);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) return parse_plain(s);

  std::string_view coeff = trim(s.substr(0, pi_at));
  std::string_view rest = trim(s.substr(pi_at + 2));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double factor = 1;
  if (coeff == "-") {
    factor = -1;
  } else if (!coeff.empty() && coeff != "+") {
    const auto c = parse_plain(coeff);
    if (!c) return std::nullopt;
    factor = *c;
  }
  double divisor = 1;
  if (!rest.empty()) {
    if (rest.front() != '/') return std::nullopt;
    const auto d = parse_plain(trim(rest.substr(1)));
    if (!d || *d == 0) return std::nullopt;
    divisor = *d;
  }
  return factor * std::numbers::pi / divisor;
}

Axis parse_axis(std::string_view spec) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    const auto colon = spec.find(':', pos);
    parts.push_back(spec.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  const std::string where = "--axis '" + std::string(spec) + "'";
  if (parts.size() != 4) throw ParseError(where + ": expected name:start:stop:count");

  Axis axis;
  axis.name = axis_name_from_string(trim(parts[0]));
  const auto start = parse_real(parts[1]);
  const auto stop = parse_real(parts[2]);
  if (!start || !stop) throw ParseError(where + ": bad start/stop");
  axis.start = *start;
  axis.stop = *stop;
  const auto count_text = trim(parts[3]);
  const auto [ptr, ec] =
      std::from_chars(count_text.data(), count_text.data() + count_text.size(), axis.count);
  if (ec != std::errc{} || ptr != count_text.data() + count_text.size())
    throw ParseError(where + ": bad count");
  return axis;
}

void apply_config_text(std::string_view text, SystemParams& params, double& delta_p) {
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    const std::string where = "config line " + std::to_string(lineno);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + ": expected 'key = value'");
    const std::string_view key = trim(body.substr(0, eq));
    double* target = field(params, delta_p, key);
    if (!target) throw ParseError(where + ": unknown key '" + std::string(key) + "'");
    const auto value = parse_real(body.substr(eq + 1));
    if (!value) throw ParseError(where + ": bad value for '" + std::string(key) + "'");
    *target = *value;
  }
}

RunConfig parse_config(const std::vector<std::string>& args,
                       std::optional<std::string> config_text) {
  CLI::App app{"Closed-loop four-level atoms in a two-sided cavity: phase-controlled intensities",
               "cavphase"};
  app.fallthrough();

  std::map<std::string, std::string> overrides;
  for (const auto& key : config_keys())
    app.add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "override " + key);

  std::string config_path, format = "csv", output;
  std::vector<std::string> axis_specs;
  int workers = 0;
  double tolerance_scale = 1;
  app.add_option("--config", config_path, "flat key = value parameter file");
  app.add_option("--axis", axis_specs, "name:start:stop:count (repeatable, max 2)");
  app.add_option("--output", output, "output path (default stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.add_option("--tolerance-scale", tolerance_scale, "validate: multiply every threshold");

  std::string preset_id;
  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  auto* spectrum = app.add_subcommand("spectrum", "1D sweep (default delta_p:-5:5:201)");
  auto* contour = app.add_subcommand("contour", "2D sweep (default delta_p x phi2)");
  auto* preset = app.add_subcommand("preset", "reproduce a figure grid");
  preset->add_option("id", preset_id, "figure preset id")->required();
  auto* validate_cmd = app.add_subcommand("validate", "run the identity and oracle checks");
  app.require_subcommand(1);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  RunConfig rc;
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    rc.help = app.help();
    return rc;
  } catch (const CLI::RequiredError& e) {
    if (app.get_subcommands().empty()) throw ParseError("a mode is required: point, spectrum, contour, preset <id> or validate");
    throw ParseError(e.what());
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (point->parsed()) rc.mode = Mode::point;
  if (spectrum->parsed()) rc.mode = Mode::spectrum;
  if (contour->parsed()) rc.mode = Mode::contour;
  if (preset->parsed()) rc.mode = Mode::preset;
  if (validate_cmd->parsed()) rc.mode = Mode::validate;

  if (!config_text && !config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ParseError("--config: cannot open '" + config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    config_text = buf.str();
  }
  if (config_text) apply_config_text(*config_text, rc.params, rc.delta_p);

  for (const auto& [key, text] : overrides) {
    const auto value = parse_real(text);
    if (!value) throw ParseError("--" + key + ": bad value '" + text + "'");
    *field(rc.params, rc.delta_p, key) = *value;
  }

  if (format == "csv") rc.format = Format::csv;
  else if (format == "json") rc.format = Format::json;
  else throw ParseError("--format: expected csv or json, got '" + format + "'");

  if (axis_specs.size() > 2) throw ParseError("--axis: at most two axes");
  for (const auto& spec : axis_specs) rc.axes.push_back(parse_axis(spec));

  switch (rc.mode) {
    case Mode::point:
    case Mode::preset:
    case Mode::validate:
      if (!rc.axes.empty()) throw ParseError("--axis is only valid for spectrum and contour");
      break;
    case Mode::spectrum:
      if (rc.axes.size() > 1) throw ParseError("spectrum takes exactly one --axis");
      break;
    case Mode::contour:
      if (rc.axes.size() == 1) throw ParseError("contour takes exactly two --axis values");
      break;
  }

  rc.preset_id = preset_id;
  rc.output = output;
  rc.workers = workers;
  rc.tolerance_scale = tolerance_scale;
  validate_run(rc);
  return rc;
}

}  // namespace cavphase
