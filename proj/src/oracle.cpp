#include "curvebound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "curvebound/errors.hpp"

namespace curvebound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const SegmentKind kKinds[3] = {SegmentKind::LeftArc, SegmentKind::RightArc,
                               SegmentKind::Straight};

// Residual of the last-segment closure: given the pose after the first two
// segments, solve the third magnitude in closed form and report how far the
// resulting endpoint stays from Y. Heading mismatch is weighted by the turn
// radius so the residual is a length.
struct Closure {
  double residual = kInf;
  double m3 = 0.0;
};

Closure close_third(const OrientedPose& p, SegmentKind kind, const OrientedPose& Y,
                    const CurvatureBound& k) {
  Closure c;
  const double r = k.radius();
  if (kind == SegmentKind::Straight) {
    const Vec2 d = Y.position() - p.position();
    const Vec2 u = p.direction();
    const double along = d.dot(u);
    c.m3 = std::max(0.0, along);
    const Vec2 end = p.position() + u * c.m3;
    c.residual = (Y.position() - end).norm() + r * angular_distance(p.theta, Y.theta);
    return c;
  }
  const TurnCenters tc = turn_centers(p, k);
  const bool left = kind == SegmentKind::LeftArc;
  const Vec2 center = left ? tc.left : tc.right;
  const double radial = std::fabs((Y.position() - center).norm() - r);
  const double target_angle = (Y.position() - center).angle();
  const double start_angle = (p.position() - center).angle();
  const double sweep = left ? normalize_angle(target_angle - start_angle)
                            : normalize_angle(start_angle - target_angle);
  c.m3 = sweep;
  const double end_heading = left ? p.theta + sweep : p.theta - sweep;
  c.residual = radial + r * angular_distance(end_heading, Y.theta);
  return c;
}

struct TripleEval {
  double residual = kInf;
  double length = kInf;
  CurvaturePath path;
};

TripleEval eval_triple(const OrientedPose& X, const OrientedPose& Y,
                       const CurvatureBound& k,
                       const std::array<SegmentKind, 3>& pattern, double m1,
                       double m2) {
  TripleEval ev;
  CurvaturePath path{X, {}, k};
  path.segments.push_back({pattern[0], m1});
  path.segments.push_back({pattern[1], m2});
  OrientedPose p = propagate(X, path.segments[0], k);
  p = propagate(p, path.segments[1], k);
  const Closure c = close_third(p, pattern[2], Y, k);
  path.segments.push_back({pattern[2], c.m3});
  ev.residual = c.residual;
  ev.length = path_length(path);
  ev.path = std::move(path);
  return ev;
}

// Derivative-free local descent on the closure residual.
TripleEval refine_triple(const OrientedPose& X, const OrientedPose& Y,
                         const CurvatureBound& k,
                         const std::array<SegmentKind, 3>& pattern, double m1,
                         double m2, double step, const OracleConfig& cfg,
                         double hi1, double hi2) {
  TripleEval best = eval_triple(X, Y, k, pattern, m1, m2);
  for (int it = 0; it < cfg.refine_iters && step > 1e-13; ++it) {
    bool improved = false;
    const double moves[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    for (const auto& mv : moves) {
      const double a = std::clamp(m1 + mv[0], 0.0, hi1);
      const double b = std::clamp(m2 + mv[1], 0.0, hi2);
      TripleEval ev = eval_triple(X, Y, k, pattern, a, b);
      if (ev.residual < best.residual) {
        best = std::move(ev);
        m1 = a;
        m2 = b;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

std::optional<double> pattern_search_min(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k,
                                         const std::array<SegmentKind, 3>& pattern,
                                         const OracleConfig& cfg) {
  const double r = k.radius();
  const double reach = (Y.position() - X.position()).norm();
  const double straight_hi = reach + 7.0 * r;
  const double hi1 = pattern[0] == SegmentKind::Straight ? straight_hi : kTwoPi;
  const double hi2 = pattern[1] == SegmentKind::Straight ? straight_hi : kTwoPi;
  const int n = std::max(8, static_cast<int>(std::ceil(kTwoPi / cfg.grid_resolution)));
  const int n1 = n;
  const int n2 = n;
  // Cell sizes expressed in length units, to match the residual.
  const double cell1 =
      (hi1 / n1) * (pattern[0] == SegmentKind::Straight ? 1.0 : r);
  const double cell2 =
      (hi2 / n2) * (pattern[1] == SegmentKind::Straight ? 1.0 : r);

  // Keep the most promising cells for refinement.
  struct Cell {
    double residual;
    double m1, m2;
  };
  std::vector<Cell> cells;
  const double coarse_accept = 3.0 * std::max(cell1, cell2);
  for (int i = 0; i < n1; ++i) {
    const double m1 = hi1 * (i + 0.5) / n1;
    for (int j = 0; j < n2; ++j) {
      const double m2 = hi2 * (j + 0.5) / n2;
      const TripleEval ev = eval_triple(X, Y, k, pattern, m1, m2);
      if (ev.residual < coarse_accept) cells.push_back({ev.residual, m1, m2});
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.residual < b.residual; });
  if (cells.size() > 64) cells.resize(64);

  double best = kInf;
  const double scale = std::max(1.0, reach);
  for (const Cell& cell : cells) {
    const TripleEval ev =
        refine_triple(X, Y, k, pattern, cell.m1, cell.m2,
                      std::max(hi1, hi2) / std::max(n1, n2), cfg, hi1, hi2);
    if (ev.residual > cfg.accept_tol * scale) continue;
    if (!validate(ev.path, X, Y).within(10.0 * cfg.accept_tol * scale)) continue;
    best = std::min(best, ev.length);
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

// ---- fixed-length search over up to five segments ----

struct SwitchEval {
  double residual = kInf;
  CurvaturePath path;
};

SwitchEval eval_switches(const OrientedPose& X, const OrientedPose& Y,
                         const CurvatureBound& k,
                         const std::vector<SegmentKind>& types, double s,
                         std::array<double, 4> a) {
  std::sort(a.begin(), a.end());
  SwitchEval ev;
  CurvaturePath path{X, {}, k};
  double prev = 0.0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const double next = (i + 1 < types.size()) ? std::clamp(a[i], 0.0, s) : s;
    const double len = std::max(0.0, next - prev);
    const double magnitude =
        types[i] == SegmentKind::Straight ? len : len * k.kappa;
    path.segments.push_back({types[i], magnitude});
    prev = std::max(prev, next);
  }
  const OrientedPose end = end_pose(path);
  ev.residual = (Y.position() - end.position()).norm() +
                k.radius() * angular_distance(end.theta, Y.theta);
  ev.path = std::move(path);
  return ev;
}

std::vector<std::vector<SegmentKind>> sequences_of(int n) {
  std::vector<std::vector<SegmentKind>> out;
  std::vector<SegmentKind> cur;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      out.push_back(cur);
      return;
    }
    for (SegmentKind kind : kKinds) {
      if (!cur.empty() && cur.back() == kind) continue;
      cur.push_back(kind);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

std::optional<double> oracle_pattern_min(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k,
                                         const std::array<SegmentKind, 3>& pattern,
                                         const OracleConfig& cfg) {
  return pattern_search_min(X, Y, k, pattern, cfg);
}

double oracle_shortest(const OrientedPose& X, const OrientedPose& Y,
                       const CurvatureBound& k, const OracleConfig& cfg) {
  double best = kInf;
  for (SegmentKind a : kKinds) {
    for (SegmentKind b : kKinds) {
      if (b == a) continue;
      for (SegmentKind c : kKinds) {
        if (c == b) continue;
        const auto found = pattern_search_min(X, Y, k, {a, b, c}, cfg);
        if (found) best = std::min(best, *found);
      }
    }
  }
  if (!std::isfinite(best)) throw NoSolutionFound();
  return best;
}

bool oracle_exists_length(const OrientedPose& X, const OrientedPose& Y,
                          const CurvatureBound& k, double s,
                          const OracleConfig& cfg) {
  return oracle_find_length(X, Y, k, s, cfg).has_value();
}

std::optional<CurvaturePath> oracle_find_length(const OrientedPose& X,
                                                const OrientedPose& Y,
                                                const CurvatureBound& k, double s,
                                                const OracleConfig& cfg) {
  if (!(s > 0.0)) return std::nullopt;
  const double scale = std::max(1.0, (Y.position() - X.position()).norm());
  const int levels = 13;

  for (const auto& types : sequences_of(std::max(3, cfg.families))) {
    struct Cell {
      double residual;
      std::array<double, 4> a;
    };
    std::vector<Cell> cells;
    // Coarse pass over ordered switch-point tuples.
    for (int i = 0; i <= levels; ++i) {
      for (int j = i; j <= levels; ++j) {
        for (int l = j; l <= levels; ++l) {
          for (int m = l; m <= levels; ++m) {
            const std::array<double, 4> a = {s * i / levels, s * j / levels,
                                             s * l / levels, s * m / levels};
            const SwitchEval ev = eval_switches(X, Y, k, types, s, a);
            if (ev.residual < 0.75 * s / levels + 0.5 * k.radius()) {
              cells.push_back({ev.residual, a});
            }
          }
        }
      }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.residual < b.residual; });
    if (cells.size() > 48) cells.resize(48);

    for (const Cell& cell : cells) {
      std::array<double, 4> a = cell.a;
      double residual = cell.residual;
      double step = s / levels;
      for (int it = 0; it < cfg.refine_iters && step > 1e-13; ++it) {
        bool improved = false;
        for (int dim = 0; dim < 4 && !improved; ++dim) {
          for (double dir : {1.0, -1.0}) {
            std::array<double, 4> trial = a;
            trial[dim] = std::clamp(trial[dim] + dir * step, 0.0, s);
            const SwitchEval ev = eval_switches(X, Y, k, types, s, trial);
            if (ev.residual < residual) {
              residual = ev.residual;
              a = trial;
              improved = true;
              break;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
      if (residual <= cfg.accept_tol * scale) {
        const SwitchEval ev = eval_switches(X, Y, k, types, s, a);
        if (validate(ev.path, X, Y).within(10.0 * cfg.accept_tol * scale) &&
            std::fabs(path_length(ev.path) - s) <= kLengthTol * scale) {
          return ev.path;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace curvebound
