#include "cavphase/serialize.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cavphase/errors.hpp"

namespace cavphase {

namespace {

using nlohmann::ordered_json;

std::string_view flag_name(PointFlag f) { return f == PointFlag::ok ? "" : "near_singular"; }

void check_stream(const std::ostream& out) {
  if (!out) throw Error("output stream write failed");
}

ordered_json number(double v) {
  if (std::isnan(v)) return nullptr;
  return round_significant(v);
}

ordered_json params_json(const SystemParams& p) {
  return ordered_json{{"g_n", number(p.g_sqrt_n)},     {"omega1", number(p.omega1)},
                      {"omega2", number(p.omega2)},    {"omega_t", number(p.omega_t)},
                      {"kappa", number(p.kappa)},      {"gamma12", number(p.gamma12)},
                      {"gamma3", number(p.gamma3)},    {"gamma4", number(p.gamma4)},
                      {"delta1", number(p.delta1)},    {"delta2", number(p.delta2)},
                      {"delta_t", number(p.delta_t)},  {"delta_ac", number(p.delta_ac)},
                      {"phi1", number(p.phi1)},        {"phi2", number(p.phi2)}};
}

ordered_json records_json(std::span<const IntensityRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records)
    rows.push_back({{"delta_p", number(r.delta_p)},
                    {"phi1", number(r.phi1)},
                    {"phi2", number(r.phi2)},
                    {"i_c", number(r.i_c)},
                    {"i_out_r", number(r.i_out_r)},
                    {"i_out_l", number(r.i_out_l)},
                    {"i_total", number(r.i_total)},
                    {"absorption", number(r.absorption)},
                    {"chi_re", number(r.chi.real())},
                    {"chi_im", number(r.chi.imag())},
                    {"flag", std::string(flag_name(r.flag))}});
  return rows;
}

double parse_cell(std::string_view cell, int lineno) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ParseError("csv line " + std::to_string(lineno) + ": bad number '" + std::string(cell) +
                     "'");
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                 kSignificantDigits);
  return std::string(buf, res.ptr);
}

double round_significant(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_real(v);
  double out = 0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

void write_csv(std::ostream& out, std::span<const IntensityRecord> records) {
  if (records.empty()) throw ValidationError("refusing to write a CSV table with no rows");
  std::string text = kCsvHeader;
  text += '\n';
  for (const auto& r : records) {
    for (double v : {r.delta_p, r.phi1, r.phi2, r.i_c, r.i_out_r, r.i_out_l, r.i_total,
                     r.absorption, r.chi.real(), r.chi.imag()}) {
      text += format_real(v);
      text += ',';
    }
    text += flag_name(r.flag);
    text += '\n';
  }
  out << text;
  out.flush();
  check_stream(out);
}

void write_csv(std::ostream& out, const SweepResult& result) { write_csv(out, result.records); }

std::vector<IntensityRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("csv: missing header");
  std::vector<IntensityRecord> records;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 11)
      throw ParseError("csv line " + std::to_string(lineno) + ": expected 11 columns");
    IntensityRecord r;
    r.delta_p = parse_cell(cells[0], lineno);
    r.phi1 = parse_cell(cells[1], lineno);
    r.phi2 = parse_cell(cells[2], lineno);
    r.i_c = parse_cell(cells[3], lineno);
    r.i_out_r = parse_cell(cells[4], lineno);
    r.i_out_l = parse_cell(cells[5], lineno);
    r.i_total = parse_cell(cells[6], lineno);
    r.absorption = parse_cell(cells[7], lineno);
    r.chi = {parse_cell(cells[8], lineno), parse_cell(cells[9], lineno)};
    if (cells[10] == "near_singular") r.flag = PointFlag::near_singular;
    else if (!cells[10].empty())
      throw ParseError("csv line " + std::to_string(lineno) + ": unknown flag");
    records.push_back(r);
  }
  return records;
}

void write_json(std::ostream& out, const SystemParams& params,
                std::span<const IntensityRecord> records) {
  if (records.empty()) throw ValidationError("refusing to write a table with no rows");
  ordered_json doc{{"params", params_json(params)}, {"records", records_json(records)}};
  out << doc.dump(2) << '\n';
  out.flush();
  check_stream(out);
}

void write_json(std::ostream& out, const SweepResult& result) {
  if (result.records.empty()) throw ValidationError("refusing to write a table with no rows");
  ordered_json axes = ordered_json::array();
  for (const auto& a : result.axes)
    axes.push_back({{"name", std::string(to_string(a.name))},
                    {"start", number(a.start)},
                    {"stop", number(a.stop)},
                    {"count", a.count}});
  ordered_json doc{{"params", params_json(result.params)},
                   {"delta_p", number(result.delta_p)},
                   {"axes", axes},
                   {"records", records_json(result.records)}};
  out << doc.dump(2) << '\n';
  out.flush();
  check_stream(out);
}

}  // namespace cavphase
