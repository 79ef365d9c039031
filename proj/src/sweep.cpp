#include "cavphase/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cavphase/errors.hpp"

namespace cavphase {

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::delta_p: return "delta_p";
    case AxisName::phi1: return "phi1";
    case AxisName::phi2: return "phi2";
  }
  return "?";
}

AxisName axis_name_from_string(std::string_view s) {
  if (s == "delta_p") return AxisName::delta_p;
  if (s == "phi1") return AxisName::phi1;
  if (s == "phi2") return AxisName::phi2;
  throw ParseError("unknown axis name '" + std::string(s) + "' (expected delta_p, phi1 or phi2)");
}

void Axis::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
    throw ValidationError("axis " + std::string(to_string(name)) + ": need start < stop");
  if (count < 2)
    throw ValidationError("axis " + std::string(to_string(name)) + ": count must be >= 2");
}

double Axis::at(int k) const {
  if (k == count - 1) return stop;
  return start + (stop - start) * k / (count - 1);
}

namespace {

struct GridPoint {
  SystemParams params;
  double delta_p;
};

void apply(GridPoint& pt, AxisName name, double value) {
  switch (name) {
    case AxisName::delta_p: pt.delta_p = value; break;
    case AxisName::phi1: pt.params.phi1 = value; break;
    case AxisName::phi2: pt.params.phi2 = value; break;
  }
}

IntensityRecord flagged(const GridPoint& pt) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  IntensityRecord rec;
  rec.delta_p = pt.delta_p;
  rec.phi1 = pt.params.phi1;
  rec.phi2 = pt.params.phi2;
  rec.i_c = rec.i_out_r = rec.i_out_l = rec.i_total = rec.absorption = nan;
  rec.chi = {nan, nan};
  rec.flag = PointFlag::near_singular;
  return rec;
}

// Each worker writes only its own slots, so the table is identical for any
// worker count.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < n;) fn(k);
    });
}

SweepResult run_grid(const SystemParams& p, double delta_p, std::vector<Axis> axes,
                     SweepOptions opt) {
  validate(p);
  for (const auto& a : axes) a.validate();
  const int inner_count = axes.size() == 2 ? axes[1].count : 1;
  const std::size_t n = static_cast<std::size_t>(axes[0].count) * inner_count;

  SweepResult out{p, delta_p, std::move(axes), std::vector<IntensityRecord>(n)};
  parallel_for(n, opt.workers, [&](std::size_t k) {
    GridPoint pt{p, delta_p};
    apply(pt, out.axes[0].name, out.axes[0].at(static_cast<int>(k / inner_count)));
    if (out.axes.size() == 2)
      apply(pt, out.axes[1].name, out.axes[1].at(static_cast<int>(k % inner_count)));
    out.records[k] = evaluate_point(pt.params, pt.delta_p);
  });
  return out;
}

}  // namespace

IntensityRecord evaluate_point(const SystemParams& p, double delta_p) {
  try {
    return intensity_ratios(p, delta_p);
  } catch (const NearSingular&) {
    return flagged(GridPoint{p, delta_p});
  }
}

SweepResult sweep1d(const SystemParams& p, double delta_p, const Axis& axis, SweepOptions opt) {
  return run_grid(p, delta_p, {axis}, opt);
}

SweepResult sweep2d(const SystemParams& p, double delta_p, const Axis& outer, const Axis& inner,
                    SweepOptions opt) {
  if (outer.name == inner.name) throw ValidationError("sweep axes must differ");
  return run_grid(p, delta_p, {outer, inner}, opt);
}

SweepResult run_sweep(const SweepSetup& setup, SweepOptions opt) {
  switch (setup.axes.size()) {
    case 1: return sweep1d(setup.params, setup.delta_p, setup.axes[0], opt);
    case 2: return sweep2d(setup.params, setup.delta_p, setup.axes[0], setup.axes[1], opt);
    default: throw ValidationError("a sweep needs one or two axes");
  }
}

}  // namespace cavphase
