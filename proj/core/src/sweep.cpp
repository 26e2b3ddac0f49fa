#include "spherebot/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace spherebot {

namespace {

std::size_t axis_len(std::size_t n) { return n == 0 ? 1 : n; }

void check_axis(const std::vector<double>& values, const char* name,
                bool allow_zero) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
      throw std::invalid_argument(std::string("sweep: invalid ") + name +
                                  " value " + std::to_string(v));
    }
  }
}

}  // namespace

std::size_t SweepGrid::size() const {
  return axis_len(kp.size()) * axis_len(kv.size()) * axis_len(dt.size()) *
         axis_len(x0.size()) * axis_len(y0.size()) *
         axis_len(attitude.size()) * axis_len(omega0.size());
}

bool SweepGrid::has_axes() const {
  return !kp.empty() || !kv.empty() || !dt.empty() || !x0.empty() ||
         !y0.empty() || !attitude.empty() || !omega0.empty();
}

Scenario scenario_at(const Scenario& base, const SweepGrid& grid,
                     std::size_t index, SweepPoint* point) {
  if (index >= grid.size()) {
    throw std::out_of_range("sweep index out of range");
  }
  // Mixed-radix decode, fastest axis last.
  std::size_t rest = index;
  const auto take = [&rest](std::size_t n) {
    const std::size_t len = axis_len(n);
    const std::size_t i = rest % len;
    rest /= len;
    return i;
  };
  const std::size_t i_omega = take(grid.omega0.size());
  const std::size_t i_att = take(grid.attitude.size());
  const std::size_t i_y = take(grid.y0.size());
  const std::size_t i_x = take(grid.x0.size());
  const std::size_t i_dt = take(grid.dt.size());
  const std::size_t i_kv = take(grid.kv.size());
  const std::size_t i_kp = take(grid.kp.size());

  Scenario sc = base;
  const double kp = grid.kp.empty() ? base.gains.kp() : grid.kp[i_kp];
  const double kv = grid.kv.empty() ? base.gains.kv() : grid.kv[i_kv];
  sc.gains = Gains::unchecked(kp, kv);
  if (!grid.dt.empty()) sc.config.dt = grid.dt[i_dt];
  if (!grid.x0.empty()) sc.initial.x = grid.x0[i_x];
  if (!grid.y0.empty()) sc.initial.y = grid.y0[i_y];
  if (!grid.attitude.empty()) sc.initial.attitude = grid.attitude[i_att];
  if (!grid.omega0.empty()) sc.initial.omega = grid.omega0[i_omega];

  if (point != nullptr) {
    *point = SweepPoint{kp, kv, sc.config.dt, sc.initial.x, sc.initial.y,
                        i_att, i_omega};
  }
  return sc;
}

RunSummary summarize(std::size_t index, const SweepPoint& point,
                     const Trajectory& traj, const ConvergenceCriteria& criteria) {
  RunSummary summary;
  summary.index = index;
  summary.point = point;
  summary.completed = true;
  summary.report = check_convergence(traj, criteria);
  return summary;
}

std::vector<RunSummary> sweep(const Scenario& base, const SweepGrid& grid,
                              const ConvergenceCriteria& criteria,
                              unsigned threads) {
  if (!grid.has_axes()) {
    throw std::invalid_argument("sweep: grid has no axes");
  }
  check_axis(grid.kp, "k_p", false);
  check_axis(grid.kv, "k_v", true);
  check_axis(grid.dt, "dt", false);
  for (double v : grid.x0) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep: non-finite x0");
  }
  for (double v : grid.y0) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep: non-finite y0");
  }
  for (const Vec3& w : grid.omega0) {
    if (!w.allFinite()) throw std::invalid_argument("sweep: non-finite omega0");
  }

  const std::size_t n = grid.size();
  // Resolve every point up front so configuration errors surface before any
  // simulation starts.
  std::vector<Scenario> scenarios;
  std::vector<SweepPoint> points(n);
  scenarios.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scenarios.push_back(scenario_at(base, grid, i, &points[i]));
    scenarios.back().validate();
  }

  std::vector<RunSummary> results(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        results[i] = summarize(i, points[i], simulate(scenarios[i]), criteria);
      } catch (const DivergenceError& e) {
        RunSummary failed;
        failed.index = i;
        failed.point = points[i];
        failed.completed = false;
        failed.error = e.what();
        results[i] = std::move(failed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

}  // namespace spherebot
