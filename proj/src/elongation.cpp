#include "curvebound/elongation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvebound/errors.hpp"

namespace curvebound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SegmentKind opposite(SegmentKind h) {
  return h == SegmentKind::LeftArc ? SegmentKind::RightArc : SegmentKind::LeftArc;
}

Word same_handed_word(SegmentKind h) {
  return h == SegmentKind::RightArc ? Word::RSR : Word::LSL;
}

Word ccc_word(SegmentKind outer) {
  return outer == SegmentKind::RightArc ? Word::RLR : Word::LRL;
}

Vec2 center_of(const TurnCenters& tc, SegmentKind hand) {
  return hand == SegmentKind::RightArc ? tc.right : tc.left;
}

double max_arc_magnitude(const CurvaturePath& path) {
  double m = 0.0;
  for (const PathSegment& seg : path.segments) {
    if (seg.is_arc()) m = std::max(m, seg.magnitude);
  }
  return m;
}

std::optional<std::size_t> long_straight_index(const CurvaturePath& path) {
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const PathSegment& seg = path.segments[i];
    if (seg.kind == SegmentKind::Straight &&
        seg.magnitude >= 4.0 / path.bound.kappa - kGeomSlack) {
      return i;
    }
  }
  return std::nullopt;
}

// Word hands of a CSC shortest result, with commitment flags for the
// degenerate zero-magnitude arcs.
struct WordHands {
  SegmentKind first;
  SegmentKind last;
  bool first_committed;
  bool last_committed;
};

WordHands word_hands(const ShortestShape& shape) {
  WordHands h{SegmentKind::LeftArc, SegmentKind::LeftArc, false, false};
  switch (shape.result.word) {
    case Word::LSL: h.first = h.last = SegmentKind::LeftArc; break;
    case Word::RSR: h.first = h.last = SegmentKind::RightArc; break;
    case Word::LSR:
      h.first = SegmentKind::LeftArc;
      h.last = SegmentKind::RightArc;
      break;
    case Word::RSL:
      h.first = SegmentKind::RightArc;
      h.last = SegmentKind::LeftArc;
      break;
    default: break;
  }
  h.first_committed = shape.first_arc > kSnapTol;
  h.last_committed = shape.last_arc > kSnapTol;
  return h;
}

using FamilyFn = std::function<std::optional<CurvaturePath>(double)>;

struct FamilySolution {
  std::optional<CurvaturePath> path;
  double best_length = kInf;  // closest achieved length, for diagnostics
};

// Finds lambda in [0, 1] whose path length matches s: coarse grid to bracket,
// then bisection on the length offset. Only the bracketed span needs to be
// continuous; invalid or jumping spans are skipped.
FamilySolution solve_family(const FamilyFn& family, const OrientedPose& X,
                            const OrientedPose& Y, double s, double tol,
                            int grid = 96) {
  FamilySolution sol;

  auto probe = [&](double lambda) -> std::pair<bool, double> {
    auto path = family(lambda);
    if (!path || !validate(*path, X, Y).within(kPoseTol)) return {false, kInf};
    return {true, path_length(*path)};
  };
  auto record = [&](double lambda, double len) {
    if (std::fabs(len - s) < std::fabs(sol.best_length - s)) sol.best_length = len;
    if (std::fabs(len - s) <= tol && !sol.path) sol.path = family(lambda);
  };

  std::vector<double> lambdas(grid + 1), lengths(grid + 1, kInf);
  std::vector<bool> valid(grid + 1, false);
  for (int i = 0; i <= grid; ++i) {
    lambdas[i] = static_cast<double>(i) / grid;
    auto [ok, len] = probe(lambdas[i]);
    valid[i] = ok;
    lengths[i] = len;
    if (ok) record(lambdas[i], len);
    if (sol.path) return sol;
  }

  for (int i = 0; i < grid && !sol.path; ++i) {
    if (!valid[i] || !valid[i + 1]) continue;
    if ((lengths[i] - s) * (lengths[i + 1] - s) > 0.0) continue;
    double lo = lambdas[i], hi = lambdas[i + 1];
    double flo = lengths[i];
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto [ok, len] = probe(mid);
      if (!ok) break;
      record(mid, len);
      if (sol.path) break;
      if ((flo - s) * (len - s) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = len;
      }
      if (hi - lo < 1e-17) break;
    }
  }
  return sol;
}

// ---- deformation families of a CSC word ----

// Geometry of the straight segment of a CSC path.
struct StraightFrame {
  Vec2 begin;
  Vec2 direction;
  double length = 0.0;
};

StraightFrame straight_frame(const CurvaturePath& csc) {
  const OrientedPose after_first = propagate(csc.start, csc.segments.at(0), csc.bound);
  return {after_first.position(), after_first.direction(), csc.segments.at(1).magnitude};
}

Vec2 middle_center_of_root(const CurvaturePath& root, const CurvatureBound& k) {
  const OrientedPose p = propagate(root.start, root.segments.at(0), k);
  return center_of(turn_centers(p, k), root.segments.at(1).kind);
}

// Deformation that presses a disk against the straight of the same-handed
// word C_h S C_h, moving the disk center along the perpendicular bisector of
// the two turn centers from its grazing position down to simultaneous
// tangency with both circles (the short CCC root on side h).
std::optional<FamilyFn> make_push_family(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k, SegmentKind h) {
  const auto base = solve_csc(X, Y, k, same_handed_word(h));
  if (!base) return std::nullopt;
  const double r = k.radius();
  const Vec2 o1 = center_of(turn_centers(X, k), h);
  const Vec2 o2 = center_of(turn_centers(Y, k), h);
  const double dist = (o2 - o1).norm();
  if (dist > 4.0 * r + kGeomSlack) return std::nullopt;

  const StraightFrame frame = straight_frame(*base);
  const Vec2 u = frame.direction;
  const Vec2 away = (h == SegmentKind::RightArc) ? left_normal(u) : left_normal(u) * -1.0;
  const Vec2 foot = frame.begin + u * (frame.length / 2.0);
  const double q = std::sqrt(std::max(0.0, 4.0 * r * r - 0.25 * dist * dist));
  const double apex = -r + q;  // signed height of the root middle center

  const SegmentKind mid_hand = opposite(h);
  return FamilyFn([=](double lambda) -> std::optional<CurvaturePath> {
    if (lambda < 0.0 || lambda > 1.0) return std::nullopt;
    const bool at_root = lambda >= 1.0 - 1e-12;
    const Vec2 o = foot + away * (r + lambda * (apex - r));
    return chain_path(X, Y,
                      {{o1, h},
                       {o, mid_hand, at_root},
                       {o2, h, at_root}},
                      k);
  });
}

// Deformation that rolls the disk around one turn circle, staying tangent to
// it, from the grazing position that reproduces the mixed word to a target
// position (a CCC root middle or the grazing position of the same-handed
// word). Direction around the ring is picked by probing.
std::optional<FamilyFn> make_roll_family(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k, SegmentKind h,
                                         bool at_start, Vec2 disk_begin, Vec2 disk_end,
                                         bool end_is_root) {
  const double r = k.radius();
  const Vec2 cxh = center_of(turn_centers(X, k), h);
  const Vec2 cyh = center_of(turn_centers(Y, k), h);
  const Vec2 ring = at_start ? cxh : cyh;
  const SegmentKind mid_hand = opposite(h);

  const double phi0 = (disk_begin - ring).angle();
  const double phi1 = (disk_end - ring).angle();
  const double ccw = normalize_angle(phi1 - phi0);

  auto eval_with = [=](double sweep) {
    return FamilyFn([=](double lambda) -> std::optional<CurvaturePath> {
      if (lambda < 0.0 || lambda > 1.0) return std::nullopt;
      const bool at_end = lambda >= 1.0 - 1e-12;
      const Vec2 o = at_end ? disk_end : ring + unit_vector(phi0 + sweep * lambda) * (2.0 * r);
      std::vector<ChainCircle> circles;
      if (at_start) {
        circles = {{cxh, h},
                   {o, mid_hand, true},
                   {cyh, h, at_end && end_is_root}};
      } else {
        circles = {{cxh, h},
                   {o, mid_hand, at_end && end_is_root},
                   {cyh, h, true}};
      }
      return chain_path(X, Y, circles, k);
    });
  };

  // Score both directions on a coarse grid: every probe must build and the
  // length profile must not jump by a near-full turn.
  const double sweeps[2] = {ccw, ccw - kTwoPi};
  FamilyFn best;
  double best_score = -kInf;
  for (double sweep : sweeps) {
    FamilyFn fam = eval_with(sweep);
    int ok = 0;
    double max_jump = 0.0;
    double prev = kInf;
    constexpr int kProbes = 12;
    for (int i = 0; i <= kProbes; ++i) {
      auto path = fam(static_cast<double>(i) / kProbes);
      if (!path || !validate(*path, X, Y).within(1e-7)) {
        prev = kInf;
        continue;
      }
      ++ok;
      const double len = path_length(*path);
      if (std::isfinite(prev)) max_jump = std::max(max_jump, std::fabs(len - prev));
      prev = len;
    }
    const double score = ok * 1000.0 - max_jump - std::fabs(sweep);
    if (ok == kProbes + 1 && score > best_score) {
      best_score = score;
      best = fam;
    }
  }
  if (!best) return std::nullopt;
  return best;
}

enum class GapSide { kPush, kRollAtStart, kRollAtGoal, kUnsupported };

GapSide side_support(const WordHands& hands, SegmentKind h) {
  const bool first_ok = !hands.first_committed || hands.first == h;
  const bool last_ok = !hands.last_committed || hands.last == h;
  if (first_ok && last_ok) return GapSide::kPush;
  if (first_ok && !last_ok) return GapSide::kRollAtGoal;
  if (last_ok && !first_ok) return GapSide::kRollAtStart;
  return GapSide::kUnsupported;
}

// Disk deformation families toward the short CCC roots: on the side matching
// the shortest word they start at the shortest path; on the other side they
// start at that side's word, whose branch pieces still sweep useful lengths.
// Ordered so that the family starting at the shortest path and reaching the
// longer root (the lower gap bound, when gapped) comes first.
std::vector<FamilyFn> make_root_families(const OrientedPose& X, const OrientedPose& Y,
                                         const CurvatureBound& k,
                                         const ShortestShape& shape) {
  const WordHands hands = word_hands(shape);

  struct SideOption {
    SegmentKind h;
    double root_length;
    CurvaturePath root;
  };
  std::vector<SideOption> sides;
  for (SegmentKind h : {SegmentKind::RightArc, SegmentKind::LeftArc}) {
    auto roots = solve_ccc_roots(X, Y, k, ccc_word(h));
    if (!roots.empty()) sides.push_back({h, path_length(roots.front()), roots.front()});
  }
  std::sort(sides.begin(), sides.end(),
            [](const SideOption& a, const SideOption& b) {
              return a.root_length > b.root_length;
            });

  std::vector<FamilyFn> primary, secondary;
  for (const SideOption& side : sides) {
    const Vec2 target = middle_center_of_root(side.root, k);
    const GapSide support = side_support(hands, side.h);
    if (support == GapSide::kPush || support == GapSide::kUnsupported) {
      if (auto fam = make_push_family(X, Y, k, side.h)) {
        (support == GapSide::kPush ? primary : secondary).push_back(*fam);
      }
    }
    if (support == GapSide::kRollAtGoal || support == GapSide::kUnsupported) {
      const Vec2 begin = center_of(turn_centers(Y, k), opposite(side.h));
      if (auto fam = make_roll_family(X, Y, k, side.h, false, begin, target, true)) {
        (support == GapSide::kRollAtGoal ? primary : secondary).push_back(*fam);
      }
    }
    if (support == GapSide::kRollAtStart || support == GapSide::kUnsupported) {
      const Vec2 begin = center_of(turn_centers(X, k), opposite(side.h));
      if (auto fam = make_roll_family(X, Y, k, side.h, true, begin, target, true)) {
        (support == GapSide::kRollAtStart ? primary : secondary).push_back(*fam);
      }
    }
  }
  primary.insert(primary.end(), secondary.begin(), secondary.end());
  return primary;
}

// Last-resort bridge: search over disk deformations of the candidate words
// for a path of the requested length, with the disk position found
// numerically instead of along a hand-derived track. Covered shapes: a free
// disk between the endpoint turn circles (bumps on the straight), a disk
// biting into the first or last arc, and a disk combined with the unused turn
// circle of either endpoint.
class BridgeSearcher {
 public:
  BridgeSearcher(const OrientedPose& X, const OrientedPose& Y, const CurvatureBound& k)
      : x_(X), y_(Y), k_(k) {
    const TurnCenters cx = turn_centers(X, k);
    const TurnCenters cy = turn_centers(Y, k);
    for (SegmentKind h1 : {SegmentKind::RightArc, SegmentKind::LeftArc}) {
      const Vec2 c1 = center_of(cx, h1);
      const Vec2 c1o = center_of(cx, opposite(h1));
      for (SegmentKind h2 : {SegmentKind::RightArc, SegmentKind::LeftArc}) {
        const Vec2 c2 = center_of(cy, h2);
        const Vec2 c2o = center_of(cy, opposite(h2));
        for (SegmentKind hm : {SegmentKind::RightArc, SegmentKind::LeftArc}) {
          shapes_.push_back({{{c1, h1}, {Vec2{}, hm}, {c2, h2}}, 1});
          // Swap through the other turn circle next to either endpoint.
          shapes_.push_back({{{c1, h1}, {Vec2{}, hm}, {c2o, opposite(h2)}, {c2, h2}}, 1});
          shapes_.push_back({{{c1, h1}, {c1o, opposite(h1)}, {Vec2{}, hm}, {c2, h2}}, 2});
        }
        // Disk biting into the first or the last arc.
        shapes_.push_back({{{c1, h1}, {Vec2{}, opposite(h1)}, {c1, h1}, {c2, h2}}, 1});
        shapes_.push_back({{{c1, h1}, {c2, h2}, {Vec2{}, opposite(h2)}, {c2, h2}}, 2});
      }
    }
  }

  std::optional<CurvaturePath> find(double s, double tol) {
    const double r = k_.radius();
    const TurnCenters cx = turn_centers(x_, k_);
    const TurnCenters cy = turn_centers(y_, k_);
    Vec2 lo{std::min({cx.right.x, cx.left.x, cy.right.x, cy.left.x}),
            std::min({cx.right.y, cx.left.y, cy.right.y, cy.left.y})};
    Vec2 hi{std::max({cx.right.x, cx.left.x, cy.right.x, cy.left.x}),
            std::max({cx.right.y, cx.left.y, cy.right.y, cy.left.y})};
    const double reach = (y_.position() - x_.position()).norm();
    const double pad = 3.0 * r + 0.5 * std::max(0.0, s - reach) + 0.15 * s;
    lo = lo - Vec2{pad, pad};
    hi = hi + Vec2{pad, pad};

    for (Shape& shape : shapes_) {
      if (auto path = scan_box(shape, lo, hi, 40, s, tol, 2)) return path;
    }
    return std::nullopt;
  }

 private:
  struct Shape {
    std::vector<ChainCircle> circles;
    std::size_t free_slot;
  };

  double eval_at(Shape& shape, const Vec2& o) {
    shape.circles[shape.free_slot].center = o;
    auto p = chain_path(x_, y_, shape.circles, k_);
    if (!p || !validate(*p, x_, y_).within(kPoseTol)) return kInf;
    return path_length(*p);
  }

  // Grid pass over a box: bisect along edges straddling the target, then
  // recurse into the most promising cells at a finer scale.
  std::optional<CurvaturePath> scan_box(Shape& shape, Vec2 lo, Vec2 hi, int n,
                                        double s, double tol, int depth) {
    std::vector<double> lengths((n + 1) * (n + 1), kInf);
    auto cell = [&](int i, int j) {
      return Vec2{lo.x + (hi.x - lo.x) * i / n, lo.y + (hi.y - lo.y) * j / n};
    };
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        lengths[i * (n + 1) + j] = eval_at(shape, cell(i, j));
      }
    }
    const int di[4] = {1, 0, 1, 1};
    const int dj[4] = {0, 1, 1, -1};
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double a = lengths[i * (n + 1) + j];
        if (!std::isfinite(a)) continue;
        for (int e = 0; e < 4; ++e) {
          const int ni = i + di[e], nj = j + dj[e];
          if (ni < 0 || nj < 0 || ni > n || nj > n) continue;
          const double b = lengths[ni * (n + 1) + nj];
          if (!std::isfinite(b)) continue;
          if ((a - s) * (b - s) > 0.0) continue;
          const Vec2 pa = cell(i, j), pb = cell(ni, nj);
          FamilyFn fam = [&, pa, pb](double lambda) -> std::optional<CurvaturePath> {
            shape.circles[shape.free_slot].center = pa + (pb - pa) * lambda;
            return chain_path(x_, y_, shape.circles, k_);
          };
          FamilySolution sol = solve_family(fam, x_, y_, s, tol, 8);
          if (sol.path) return sol.path;
        }
      }
    }
    if (depth == 0) return std::nullopt;
    // Refine around the valid cells closest to the target length.
    std::vector<std::pair<double, std::pair<int, int>>> ranked;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double a = lengths[i * (n + 1) + j];
        if (std::isfinite(a)) ranked.push_back({std::fabs(a - s), {i, j}});
      }
    }
    std::sort(ranked.begin(), ranked.end());
    const Vec2 step{(hi.x - lo.x) / n, (hi.y - lo.y) / n};
    const std::size_t tries = std::min<std::size_t>(ranked.size(), 6);
    for (std::size_t t = 0; t < tries; ++t) {
      if (ranked[t].first > 1.0 + 2.0 * (step.x + step.y)) break;
      const Vec2 c = cell(ranked[t].second.first, ranked[t].second.second);
      const Vec2 sub_lo = c - Vec2{2.0 * step.x, 2.0 * step.y};
      const Vec2 sub_hi = c + Vec2{2.0 * step.x, 2.0 * step.y};
      if (auto path = scan_box(shape, sub_lo, sub_hi, 16, s, tol, depth - 1)) {
        return path;
      }
    }
    return std::nullopt;
  }

  OrientedPose x_, y_;
  CurvatureBound k_;
  std::vector<Shape> shapes_;
};

std::optional<CurvaturePath> bridge_search(const OrientedPose& X, const OrientedPose& Y,
                                           const CurvatureBound& k, double s,
                                           double tol) {
  return BridgeSearcher(X, Y, k).find(s, tol);
}

// Wave on a long straight, then parallel insertion on the semicircle once the
// wave saturates. Exact in both regimes.
ElongationResult wave_ladder(const CurvaturePath& base, std::size_t straight_index,
                             double s, double tol, bool composite_base) {
  const CurvatureBound k = base.bound;
  const double base_len = path_length(base);
  const double need = s - base_len;
  if (need <= tol) {
    return {base, composite_base ? StrategyTag::kComposite : StrategyTag::kWaveDeform};
  }
  const double cap = wave_elongation(kPi / 2.0, k);
  if (need <= cap) {
    double lo = 0.0, hi = kPi / 2.0;
    for (int i = 0; i < 120; ++i) {
      const double mid = 0.5 * (lo + hi);
      (wave_elongation(mid, k) < need ? lo : hi) = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    return {wave_deform(base, straight_index, alpha),
            composite_base ? StrategyTag::kComposite : StrategyTag::kWaveDeform};
  }
  const CurvaturePath saturated = wave_deform(base, straight_index, kPi / 2.0);
  const double delta = std::max(0.0, (s - path_length(saturated)) / 2.0);
  return {insert_parallel_extension(saturated, delta), StrategyTag::kComposite};
}

}  // namespace

std::string strategy_name(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::kParallelInsert: return "parallel_insert";
    case StrategyTag::kWaveDeform: return "wave_deform";
    case StrategyTag::kDiskPush: return "disk_push";
    case StrategyTag::kLoopThenParallel: return "loop_then_parallel";
    case StrategyTag::kComposite: return "composite";
  }
  return "?";
}

CurvaturePath insert_parallel_extension(const CurvaturePath& path, double delta) {
  if (delta < 0.0) throw std::invalid_argument("extension must be nonnegative");

  std::size_t index = path.segments.size();
  double best = 0.0;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const PathSegment& seg = path.segments[i];
    if (seg.is_arc() && seg.magnitude >= kPi - kSnapTol && seg.magnitude > best) {
      best = seg.magnitude;
      index = i;
    }
  }
  if (index == path.segments.size()) throw NoParallelTangents();
  if (delta <= kSnapTol) return path;

  const PathSegment& arc = path.segments[index];
  const double head = std::max(0.0, (arc.magnitude - kPi) / 2.0);
  const double tail = std::max(0.0, arc.magnitude - kPi - head);

  CurvaturePath out{path.start, {}, path.bound};
  out.segments.reserve(path.segments.size() + 4);
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    if (i != index) {
      out.segments.push_back(path.segments[i]);
      continue;
    }
    if (head > kSnapTol) out.segments.push_back({arc.kind, head});
    out.segments.push_back(PathSegment::straight(delta));
    out.segments.push_back({arc.kind, kPi});
    out.segments.push_back(PathSegment::straight(delta));
    if (tail > kSnapTol) out.segments.push_back({arc.kind, tail});
  }
  return out;
}

double wave_elongation(double alpha, const CurvatureBound& k) {
  return (4.0 * alpha - 4.0 * std::sin(alpha)) / k.kappa;
}

CurvaturePath wave_deform(const CurvaturePath& path, std::size_t straight_index,
                          double alpha) {
  if (straight_index >= path.segments.size() ||
      path.segments[straight_index].kind != SegmentKind::Straight) {
    throw NotAStraight();
  }
  if (!(alpha > 0.0) || alpha > kPi / 2.0 + kSnapTol) {
    throw std::invalid_argument("wave angle must lie in (0, pi/2]");
  }
  alpha = std::min(alpha, kPi / 2.0);
  const double d = path.segments[straight_index].magnitude;
  const double chord = 4.0 * std::sin(alpha) / path.bound.kappa;
  if (d < chord - kSnapTol) throw SegmentTooShort();
  const double rest = std::max(0.0, (d - chord) / 2.0);

  CurvaturePath out{path.start, {}, path.bound};
  out.segments.reserve(path.segments.size() + 4);
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    if (i != straight_index) {
      out.segments.push_back(path.segments[i]);
      continue;
    }
    if (rest > kSnapTol) out.segments.push_back(PathSegment::straight(rest));
    out.segments.push_back(PathSegment::left_arc(alpha));
    out.segments.push_back(PathSegment::right_arc(2.0 * alpha));
    out.segments.push_back(PathSegment::left_arc(alpha));
    if (rest > kSnapTol) out.segments.push_back(PathSegment::straight(rest));
  }
  return out;
}

CurvaturePath full_loop_insert(const CurvaturePath& path) {
  SegmentKind hand = SegmentKind::LeftArc;
  for (const PathSegment& seg : path.segments) {
    if (seg.is_arc() && seg.magnitude > kSnapTol) {
      hand = seg.kind;
      break;
    }
  }
  CurvaturePath out{path.start, {}, path.bound};
  out.segments.reserve(path.segments.size() + 1);
  out.segments.push_back({hand, kTwoPi});
  out.segments.insert(out.segments.end(), path.segments.begin(), path.segments.end());
  return out;
}

CurvaturePath disk_push_family(const OrientedPose& X, const OrientedPose& Y,
                               const CurvatureBound& k, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("family parameter must lie in [0, 1]");
  }
  const Classification cls = classify(X, Y, k);
  if (!cls.has_length_gap) throw NotInNablaO();
  const ShortestShape shape = shortest_shape(X, Y, k);
  const auto families = make_root_families(X, Y, k, shape);
  if (families.empty()) throw Error("gap deformation family could not be constructed");
  auto path = families.front()(lambda);
  if (!path) throw Error("gap deformation family failed to evaluate");
  return *path;
}

ElongationResult elongate_to(const ElongationRequest& req) {
  if (!(req.target_length > 0.0)) throw std::invalid_argument("target must be positive");
  if (!(req.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const OrientedPose& X = req.start;
  const OrientedPose& Y = req.goal;
  const CurvatureBound k = req.bound;
  const double s = req.target_length;

  const FeasibleLengthSet feas = feasible_set(X, Y, k);
  if (!contains(feas, s)) {
    throw InfeasibleLength(s, feas.min_length, feas.gap.has_value(),
                           feas.gap ? feas.gap->l1 : 0.0, feas.gap ? feas.gap->l2 : 0.0);
  }

  const ShortestShape shape = shortest_shape(X, Y, k);
  const CurvaturePath& gm = shape.result.path;
  const double lm = shape.result.length;
  if (std::fabs(s - lm) <= req.tol) return {gm, StrategyTag::kParallelInsert};

  // An arc of at least pi admits exact twin-straight insertion. This covers
  // CCC shortest paths (major middle arc) and major-arc CSC words.
  if (max_arc_magnitude(gm) >= kPi) {
    return {insert_parallel_extension(gm, (s - lm) / 2.0), StrategyTag::kParallelInsert};
  }

  // A straight of at least 4/kappa admits the wave.
  if (auto idx = long_straight_index(gm)) {
    return wave_ladder(gm, *idx, s, req.tol, false);
  }

  if (feas.gap && s <= feas.gap->l1 + req.tol) {
    // Below the gap: deform the shortest word toward the short CCC roots.
    double best = lm;
    for (const FamilyFn& family : make_root_families(X, Y, k, shape)) {
      FamilySolution sol = solve_family(family, X, Y, s, req.tol);
      if (sol.path) return {*sol.path, StrategyTag::kDiskPush};
      if (std::fabs(sol.best_length - s) < std::fabs(best - s)) best = sol.best_length;
    }
    if (auto path = bridge_search(X, Y, k, s, req.tol)) {
      return {*path, StrategyTag::kComposite};
    }
    throw ToleranceNotMet("gap deformation did not reach the target length", best);
  }

  if (feas.gap) {
    // Beyond the gap: elongate the path realizing the upper bound.
    const GapBounds& gap = *feas.gap;
    if (gap.realizer != GapRealizer::kFullLoop && gap.realizer_path) {
      try {
        const double delta = std::max(0.0, (s - path_length(*gap.realizer_path)) / 2.0);
        return {insert_parallel_extension(*gap.realizer_path, delta),
                StrategyTag::kParallelInsert};
      } catch (const NoParallelTangents&) {
        // Fall through to the loop route.
      }
    }
    const CurvaturePath looped = full_loop_insert(gm);
    const double delta = std::max(0.0, (s - path_length(looped)) / 2.0);
    return {insert_parallel_extension(looped, delta), StrategyTag::kLoopThenParallel};
  }

  // No gap. Prefer an exact construction: the longest candidate (or the full
  // loop) that carries an arc of at least pi and does not exceed the target.
  {
    const CandidateTable table = candidate_table(X, Y, k);
    const CurvaturePath* base = nullptr;
    double base_len = -kInf;
    for (const CandidateEntry& entry : table.entries) {
      if (!entry.exists() || entry.length > s + req.tol) continue;
      if (max_arc_magnitude(*entry.path) < kPi) continue;
      if (entry.length > base_len) {
        base_len = entry.length;
        base = &*entry.path;
      }
    }
    const double loop_len = lm + kTwoPi / k.kappa;
    if (loop_len <= s + req.tol && loop_len > base_len) {
      const CurvaturePath looped = full_loop_insert(gm);
      const double delta = std::max(0.0, (s - path_length(looped)) / 2.0);
      return {insert_parallel_extension(looped, delta), StrategyTag::kLoopThenParallel};
    }
    if (base != nullptr) {
      const double delta = std::max(0.0, (s - base_len) / 2.0);
      return {insert_parallel_extension(*base, delta), StrategyTag::kParallelInsert};
    }
  }

  // Far same-handed centers with the target below any major-arc candidate:
  // wave on the far-centers word when reachable.
  const Classification cls = classify(X, Y, k);
  for (SegmentKind ht : {SegmentKind::RightArc, SegmentKind::LeftArc}) {
    const bool far = ht == SegmentKind::RightArc
                         ? cls.is_member(ElongationClass::kFarRightCenters)
                         : cls.is_member(ElongationClass::kFarLeftCenters);
    if (!far) continue;
    const auto base = solve_csc(X, Y, k, same_handed_word(ht));
    if (!base) continue;
    if (s >= path_length(*base) - req.tol) {
      if (auto idx = long_straight_index(*base)) {
        return wave_ladder(*base, *idx, s, req.tol, true);
      }
    }
    // Roll the mixed word toward the far-centers word.
    const WordHands hands = word_hands(shape);
    const GapSide support = side_support(hands, ht);
    if (support == GapSide::kRollAtGoal || support == GapSide::kRollAtStart) {
      const bool at_start = support == GapSide::kRollAtStart;
      const StraightFrame frame = straight_frame(*base);
      const Vec2 away = (ht == SegmentKind::RightArc)
                            ? left_normal(frame.direction)
                            : left_normal(frame.direction) * -1.0;
      const Vec2 ring = at_start ? center_of(turn_centers(X, k), ht)
                                 : center_of(turn_centers(Y, k), ht);
      const Vec2 begin = at_start ? center_of(turn_centers(X, k), opposite(ht))
                                  : center_of(turn_centers(Y, k), opposite(ht));
      const Vec2 target = ring + away * (2.0 * k.radius());
      if (auto fam = make_roll_family(X, Y, k, ht, at_start, begin, target, false)) {
        FamilySolution sol = solve_family(*fam, X, Y, s, req.tol);
        if (sol.path) return {*sol.path, StrategyTag::kDiskPush};
      }
    }
  }

  // Deform toward whichever short CCC roots exist.
  {
    double best = lm;
    for (const FamilyFn& family : make_root_families(X, Y, k, shape)) {
      FamilySolution sol = solve_family(family, X, Y, s, req.tol);
      if (sol.path) return {*sol.path, StrategyTag::kDiskPush};
      if (std::fabs(sol.best_length - s) < std::fabs(best - s)) best = sol.best_length;
    }
  }

  if (auto path = bridge_search(X, Y, k, s, req.tol)) {
    return {*path, StrategyTag::kComposite};
  }
  throw ToleranceNotMet("no elongation strategy reached the target length", lm);
}

}  // namespace curvebound
