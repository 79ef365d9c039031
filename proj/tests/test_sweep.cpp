#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cavphase/sweep.hpp"

using namespace cavphase;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_record(const IntensityRecord& a, const IntensityRecord& b) {
  return a.delta_p == b.delta_p && a.phi1 == b.phi1 && a.phi2 == b.phi2 && a.i_c == b.i_c &&
         a.i_out_r == b.i_out_r && a.i_out_l == b.i_out_l && a.chi == b.chi && a.flag == b.flag;
}

}  // namespace

TEST_CASE("axis grid includes both endpoints") {
  const Axis a{AxisName::phi2, 0, 2 * kPi, 5};
  CHECK(a.at(0) == 0);
  CHECK(a.at(2) == doctest::Approx(kPi));
  CHECK(a.at(4) == 2 * kPi);
  CHECK_THROWS_AS((Axis{AxisName::phi1, 1, 1, 3}.validate()), ValidationError);
  CHECK_THROWS_AS((Axis{AxisName::phi1, 0, 1, 1}.validate()), ValidationError);
  CHECK_THROWS_AS(axis_name_from_string("kappa"), ParseError);
}

TEST_CASE("phi2 sweep is periodic") {
  SystemParams p;
  p.phi1 = 0.9;
  const auto res = sweep1d(p, 0.6, {AxisName::phi2, 0, 2 * kPi, 5});
  REQUIRE(res.records.size() == 5);
  const auto& first = res.records.front();
  const auto& last = res.records.back();
  CHECK(std::abs(first.i_c - last.i_c) <= 1e-12);
  CHECK(std::abs(first.i_out_r - last.i_out_r) <= 1e-12);
  CHECK(std::abs(first.i_out_l - last.i_out_l) <= 1e-12);
}

TEST_CASE("spectrum at phi2 = pi is flat at total output 2") {
  SystemParams p;
  p.phi2 = kPi;
  const auto res = sweep1d(p, 0, {AxisName::delta_p, -5, 5, 101});
  for (const auto& r : res.records) CHECK(std::abs(r.i_total - 2) <= 1e-12);
}

TEST_CASE("phi1 sweep is mirror symmetric about pi") {
  const auto res = sweep1d(SystemParams{}, 0, {AxisName::phi1, 0, 2 * kPi, 101});
  for (int k = 0; k <= 100; ++k) {
    const auto& a = res.records[k];
    const auto& b = res.records[100 - k];
    CHECK(std::abs(a.i_c - b.i_c) <= 1e-12);
    CHECK(std::abs(a.i_out_r - b.i_out_r) <= 1e-12);
    CHECK(std::abs(a.i_out_l - b.i_out_l) <= 1e-12);
  }
}

TEST_CASE("2D sweep is row-major, outer axis first") {
  const auto res =
      sweep2d(SystemParams{}, 0, {AxisName::delta_p, -1, 1, 2}, {AxisName::phi2, 0, 1, 2});
  REQUIRE(res.records.size() == 4);
  CHECK(res.records[0].delta_p == -1);
  CHECK(res.records[0].phi2 == 0);
  CHECK(res.records[1].delta_p == -1);
  CHECK(res.records[1].phi2 == 1);
  CHECK(res.records[2].delta_p == 1);
  CHECK(res.records[2].phi2 == 0);
  CHECK(res.records[3].delta_p == 1);
  CHECK(res.records[3].phi2 == 1);
  CHECK_THROWS_AS(sweep2d(SystemParams{}, 0, {AxisName::phi2, 0, 1, 2}, {AxisName::phi2, 0, 1, 2}),
                  ValidationError);
}

TEST_CASE("rows equal independent point evaluations") {
  const auto setup = figure_preset("fig2a");
  const auto res = run_sweep(setup, {4});
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> row(0, static_cast<int>(res.records.size()) - 1);
  for (int n = 0; n < 10; ++n) {
    const auto& r = res.records[row(rng)];
    SystemParams p = setup.params;
    p.phi2 = r.phi2;
    CHECK(same_record(r, intensity_ratios(p, r.delta_p)));
  }
}

TEST_CASE("worker count does not change the table") {
  const auto setup = figure_preset("fig3b");
  const auto a = run_sweep(setup, {1});
  const auto b = run_sweep(setup, {7});
  REQUIRE(a.records.size() == b.records.size());
  bool all_same = true;
  for (std::size_t k = 0; k < a.records.size(); ++k)
    all_same = all_same && same_record(a.records[k], b.records[k]);
  CHECK(all_same);
}

TEST_CASE("singular points are flagged, not dropped") {
  SystemParams p;
  p.omega1 = p.omega2 = p.omega_t = 0;
  p.gamma3 = p.gamma4 = p.gamma12 = 1e-14;
  const auto res = sweep1d(p, 0, {AxisName::delta_p, -1, 1, 3});
  REQUIRE(res.records.size() == 3);
  CHECK(res.records[1].flag == PointFlag::near_singular);
  CHECK(std::isnan(res.records[1].i_c));
  CHECK(res.records[0].flag == PointFlag::ok);
}

TEST_CASE("figure presets") {
  CHECK(preset_ids().size() == 11);
  for (const auto& id : preset_ids()) CHECK_NOTHROW(figure_preset(id));
  CHECK_THROWS_AS(figure_preset("fig6"), UnknownPreset);

  const auto f4b = figure_preset("fig4b");
  CHECK(f4b.params.phi1 == kPi / 2);
  CHECK(f4b.delta_p == 2);
  REQUIRE(f4b.axes.size() == 1);
  CHECK(f4b.axes[0].name == AxisName::phi2);
  CHECK(f4b.axes[0].start == 0);
  CHECK(f4b.axes[0].stop == 2 * kPi);
  CHECK(f4b.axes[0].count == kPresetResolution);
  CHECK(f4b.params.g_sqrt_n == 1);
  CHECK(f4b.params.gamma12 == 0.001);

  const auto f2a = figure_preset("fig2a");
  CHECK(f2a.params.phi1 == 0);
  REQUIRE(f2a.axes.size() == 2);
  CHECK(f2a.axes[0].name == AxisName::delta_p);
  CHECK(f2a.axes[0].start == -5);
  CHECK(f2a.axes[0].stop == 5);
  CHECK(f2a.axes[1].name == AxisName::phi2);

  const auto f5c = figure_preset("fig5c");
  CHECK(f5c.delta_p == 0);
  CHECK(f5c.params.phi2 == kPi);
  CHECK(f5c.axes[0].name == AxisName::phi1);

  CHECK(figure_preset("fig3a").delta_p == -1);
  CHECK(figure_preset("fig3c").delta_p == 1);
}

TEST_CASE("fig3b: the phi2 = pi row is a perfect reflector") {
  const auto res = run_sweep(figure_preset("fig3b"));
  const int n = kPresetResolution;
  // phi2 grid point 100 of 0..200 over [0, 2pi] is pi.
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(res.records[i * n + 100].i_out_r - 1) <= 1e-12);
}

TEST_CASE("fig2b is symmetric under phi1 -> 2pi - phi1") {
  const auto res = run_sweep(figure_preset("fig2b"));
  const int n = kPresetResolution;
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(res.records[i * n + k].i_out_r -
                                       res.records[i * n + n - 1 - k].i_out_r));
  CHECK(worst <= 1e-12);
}
