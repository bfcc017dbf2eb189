#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "autotamp/environment.hpp"
#include "autotamp/stl.hpp"

namespace testsupport {

// Independent robustness oracle: direct recursion over the semantics, one
// (formula, grid index) at a time, with its own signed-distance arithmetic.
// Deliberately naive apart from memoization, which only caches repeated
// (node, index) queries; kept separate from the production monitor.
class NaiveMonitor {
 public:
  NaiveMonitor(const autotamp::Trajectory& traj, const autotamp::Environment& env, double step)
      : traj_(traj), env_(env), step_(step) {
    final_ = traj.final_time();
    last_ = std::max(0, static_cast<int>(std::ceil(final_ / step_ - 1e-9)));
  }

  int last_index() const { return last_; }

  double rho(const autotamp::StlFormula& f, int i) const {
    const auto key = std::make_pair(&f, i);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    const double v = rho_uncached(f, i);
    memo_.emplace(key, v);
    return v;
  }

 private:
  double rho_uncached(const autotamp::StlFormula& f, int i) const {
    using autotamp::StlKind;
    const double inf = std::numeric_limits<double>::infinity();
    switch (f.kind) {
      case StlKind::Predicate: {
        double best = -inf;
        const double t = std::min(i * step_, final_);
        for (const auto& [name, pts] : traj_.agents) {
          const autotamp::AgentSpec* spec = env_.find_agent(name);
          const double hw = spec ? spec->half_width : 0.0;
          const autotamp::Point p = autotamp::interpolate(traj_, name, t);
          for (const autotamp::Region* r : env_.resolve_region(f.region)) {
            const double lo_x = r->rect.x_min + hw, hi_x = r->rect.x_max - hw;
            const double lo_y = r->rect.y_min + hw, hi_y = r->rect.y_max - hw;
            const double sd = std::min(std::min(p.x - lo_x, hi_x - p.x), std::min(p.y - lo_y, hi_y - p.y));
            best = std::max(best, sd);
          }
        }
        return f.action == autotamp::Action::Enter ? best : -best;
      }
      case StlKind::Not:
        return -rho(*f.left, i);
      case StlKind::And:
        return std::min(rho(*f.left, i), rho(*f.right, i));
      case StlKind::Or:
        return std::max(rho(*f.left, i), rho(*f.right, i));
      case StlKind::Imply:
        return std::max(-rho(*f.left, i), rho(*f.right, i));
      case StlKind::Equiv:
        return std::min(std::max(-rho(*f.left, i), rho(*f.right, i)),
                        std::max(-rho(*f.right, i), rho(*f.left, i)));
      case StlKind::Finally:
      case StlKind::Globally: {
        const int lo = std::max(0, i + static_cast<int>(std::floor(f.interval.lower / step_ + 1e-9)));
        const int hi = std::isinf(f.interval.upper)
                           ? last_
                           : std::min(last_, i + static_cast<int>(std::ceil(f.interval.upper / step_ - 1e-9)));
        double acc = f.kind == StlKind::Finally ? -inf : inf;
        for (int j = lo; j <= hi; ++j)
          acc = f.kind == StlKind::Finally ? std::max(acc, rho(*f.left, j)) : std::min(acc, rho(*f.left, j));
        return acc;
      }
      case StlKind::Until: {
        const int lo = std::max(i, i + static_cast<int>(std::floor(f.interval.lower / step_ + 1e-9)));
        const int hi = std::isinf(f.interval.upper)
                           ? last_
                           : std::min(last_, i + static_cast<int>(std::ceil(f.interval.upper / step_ - 1e-9)));
        double best = -inf;
        for (int tau = lo; tau <= hi; ++tau) {
          double prefix = inf;
          for (int tp = i; tp < tau; ++tp) prefix = std::min(prefix, rho(*f.left, tp));
          best = std::max(best, std::min(rho(*f.right, tau), prefix));
        }
        return best;
      }
    }
    return -inf;
  }

  struct KeyHash {
    size_t operator()(const std::pair<const autotamp::StlFormula*, int>& k) const {
      return std::hash<const void*>()(k.first) ^ (std::hash<int>()(k.second) * 0x9e3779b97f4a7c15ULL);
    }
  };

  const autotamp::Trajectory& traj_;
  const autotamp::Environment& env_;
  double step_;
  double final_ = 0;
  int last_ = 0;
  mutable std::unordered_map<std::pair<const autotamp::StlFormula*, int>, double, KeyHash> memo_;
};

}  // namespace testsupport
