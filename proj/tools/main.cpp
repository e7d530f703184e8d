// Command-line front end: JSON problem ingestion, shortest-path and
// feasibility reports, fixed-length synthesis, fleet planning, and trace
// export.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvebound/dubins.hpp"
#include "curvebound/elongation.hpp"
#include "curvebound/errors.hpp"
#include "curvebound/feasibility.hpp"
#include "curvebound/fleet.hpp"
#include "curvebound/geometry.hpp"
#include "curvebound/oracle.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace curvebound;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitTolerance = 5;

class ParseFailure : public std::runtime_error {
 public:
  explicit ParseFailure(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ParseFailure("unknown field \"" + item.key() + "\" in " + where);
    }
  }
}

double number_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ParseFailure("missing field \"" + key + "\" in " + where);
  if (!obj[key].is_number()) {
    throw ParseFailure("field \"" + key + "\" in " + where + " must be a number");
  }
  return obj[key].get<double>();
}

OrientedPose pose_at(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_object()) {
    throw ParseFailure("missing pose object \"" + key + "\" in " + where);
  }
  const json& p = obj[key];
  require_keys(p, where + "." + key, {"x", "y", "theta"});
  return {number_at(p, where + "." + key, "x"), number_at(p, where + "." + key, "y"),
          number_at(p, where + "." + key, "theta")};
}

struct Problem {
  CurvatureBound bound;
  std::vector<Vehicle> vehicles;
  std::vector<std::optional<double>> targets;
};

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open input file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseFailure(e.what());
  }
  if (!doc.is_object()) throw ParseFailure("problem file must be a JSON object");
  require_keys(doc, "problem", {"kappa", "vehicles"});
  const double kappa = number_at(doc, "problem", "kappa");
  if (!(kappa > 0.0)) throw ParseFailure("kappa must be positive");
  if (!doc.contains("vehicles") || !doc["vehicles"].is_array() ||
      doc["vehicles"].empty()) {
    throw ParseFailure("problem file needs a non-empty \"vehicles\" array");
  }
  Problem problem{CurvatureBound(kappa), {}, {}};
  int index = 0;
  for (const json& v : doc["vehicles"]) {
    const std::string where = "vehicles[" + std::to_string(index) + "]";
    if (!v.is_object()) throw ParseFailure(where + " must be an object");
    require_keys(v, where, {"id", "start", "goal", "target_length"});
    if (!v.contains("id") || !v["id"].is_number_integer()) {
      throw ParseFailure("missing integer \"id\" in " + where);
    }
    Vehicle vehicle;
    vehicle.id = v["id"].get<int>();
    vehicle.start = pose_at(v, where, "start");
    vehicle.goal = pose_at(v, where, "goal");
    problem.vehicles.push_back(vehicle);
    if (v.contains("target_length")) {
      const double t = number_at(v, where, "target_length");
      if (!(t > 0.0)) throw ParseFailure("target_length must be positive in " + where);
      problem.targets.push_back(t);
    } else {
      problem.targets.push_back(std::nullopt);
    }
    ++index;
  }
  return problem;
}

const char* kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::LeftArc: return "left";
    case SegmentKind::RightArc: return "right";
    case SegmentKind::Straight: return "straight";
  }
  return "?";
}

json segments_json(const CurvaturePath& path) {
  json out = json::array();
  for (const PathSegment& seg : path.segments) {
    out.push_back({{"kind", kind_name(seg.kind)}, {"magnitude", seg.magnitude}});
  }
  return out;
}

json classification_json(const Classification& cls) {
  json memberships = json::array();
  for (int i = 0; i < kElongationClasses; ++i) {
    if (cls.memberships[i]) {
      memberships.push_back(elongation_class_name(static_cast<ElongationClass>(i)));
    }
  }
  return {{"word", word_name(cls.shortest_word)},
          {"ccc_shortest", cls.ccc_shortest},
          {"has_length_gap", cls.has_length_gap},
          {"memberships", memberships}};
}

double trace_step(const CurvaturePath& path) {
  const double len = path_length(path);
  return std::max(1e-3 / path.bound.kappa, len / 100000.0);
}

void write_trace_csv(const std::string& file, const CurvaturePath& path) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParseFailure("cannot open trace file for writing: " + file);
  out << "arclength,x,y,theta,segment_index,segment_kind\n";
  for (const SamplePoint& p : sample(path, trace_step(path))) {
    out << fmt(p.arclength) << ',' << fmt(p.pose.x) << ',' << fmt(p.pose.y) << ','
        << fmt(p.pose.theta) << ',' << p.segment_index << ','
        << kind_name(path.segments.empty() ? SegmentKind::Straight
                                           : path.segments[p.segment_index].kind)
        << '\n';
  }
}

void write_svg(const std::string& file, const std::vector<CurvaturePath>& paths) {
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  std::vector<std::vector<SamplePoint>> traces;
  for (const CurvaturePath& path : paths) {
    traces.push_back(sample(path, 0.02 / path.bound.kappa));
    for (const SamplePoint& p : traces.back()) {
      min_x = std::min(min_x, p.pose.x);
      max_x = std::max(max_x, p.pose.x);
      min_y = std::min(min_y, p.pose.y);
      max_y = std::max(max_y, p.pose.y);
    }
  }
  const double margin = 1.0;
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;

  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParseFailure("cannot open svg file for writing: " + file);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.4f %.4f %.4f "
                "%.4f\">\n",
                min_x, -max_y, max_x - min_x, max_y - min_y);
  out << buf;
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  for (std::size_t t = 0; t < traces.size(); ++t) {
    out << "<polyline fill=\"none\" stroke=\"" << palette[t % 8]
        << "\" stroke-width=\"0.05\" points=\"";
    for (const SamplePoint& p : traces[t]) {
      std::snprintf(buf, sizeof buf, "%.4f,%.4f ", p.pose.x, -p.pose.y);
      out << buf;
    }
    out << "\"/>\n";
    const SamplePoint& a = traces[t].front();
    const SamplePoint& b = traces[t].back();
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"0.12\" fill=\"#2ca02c\"/>\n",
                  a.pose.x, -a.pose.y);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"0.12\" fill=\"#d62728\"/>\n",
                  b.pose.x, -b.pose.y);
    out << buf;
  }
  out << "</svg>\n";
}

json infinity_or(double value, bool present) {
  if (!present) return nullptr;
  return value;
}

std::string csv_or_inf(const json& v) {
  if (v.is_null()) return "+inf";
  return fmt(v.get<double>());
}

// Randomized consistency audit, enabled by --oracle with DUBINS_SEED set.
json run_audit(const CurvatureBound& k, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (static_cast<double>(rng() >> 11) * 0x1.0p-53) * (hi - lo);
  };
  int checked = 0, elongated = 0;
  double worst = 0.0;
  while (checked < 20) {
    const OrientedPose X{uniform(-5, 5), uniform(-5, 5), uniform(0, kTwoPi)};
    const OrientedPose Y{uniform(-5, 5), uniform(-5, 5), uniform(0, kTwoPi)};
    if ((X.position() - Y.position()).norm() < 1e-6) continue;
    ++checked;
    const double analytic = shortest(X, Y, k).length;
    worst = std::max(worst, std::fabs(analytic - oracle_shortest(X, Y, k)));
    const FeasibleLengthSet set = feasible_set(X, Y, k);
    const double target =
        set.gap ? set.gap->l2 + uniform(0, 4) : set.min_length + uniform(0, 4);
    const ElongationResult res = elongate_to({X, Y, k, target, 1e-9});
    if (validate(res.path, X, Y).within(1e-8) &&
        std::fabs(path_length(res.path) - target) <= 1e-8) {
      ++elongated;
    }
  }
  return {{"seed", seed},
          {"instances", checked},
          {"max_shortest_deviation", worst},
          {"elongations_ok", elongated}};
}

struct CommonOptions {
  std::string input;
  std::string format = "json";
  bool oracle = false;
};

int cmd_shortest(const CommonOptions& opt) {
  const Problem problem = load_problem(opt.input);
  json report{{"kappa", problem.bound.kappa}, {"vehicles", json::array()}};
  std::ostringstream csv;
  csv << "id,word,length\n";
  for (const Vehicle& v : problem.vehicles) {
    const ShortestResult res = shortest(v.start, v.goal, problem.bound);
    json row{{"id", v.id},
             {"word", word_name(res.word)},
             {"length", res.length},
             {"segments", segments_json(res.path)}};
    if (opt.oracle) {
      row["oracle_length"] = oracle_shortest(v.start, v.goal, problem.bound);
    }
    report["vehicles"].push_back(row);
    csv << v.id << ',' << word_name(res.word) << ',' << fmt(res.length) << '\n';
  }
  if (opt.oracle) {
    if (const char* seed = std::getenv("DUBINS_SEED")) {
      report["audit"] = run_audit(problem.bound, std::strtoull(seed, nullptr, 10));
    }
  }
  if (opt.format == "csv") {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::fputs((report.dump(2) + "\n").c_str(), stdout);
  }
  return kExitOk;
}

int cmd_feasible(const CommonOptions& opt) {
  const Problem problem = load_problem(opt.input);
  json report{{"kappa", problem.bound.kappa}, {"vehicles", json::array()}};
  std::ostringstream csv;
  csv << "id,word,min_length,gap_low,gap_high\n";
  for (const Vehicle& v : problem.vehicles) {
    const FeasibleLengthSet set = feasible_set(v.start, v.goal, problem.bound);
    const Classification cls = classify(v.start, v.goal, problem.bound);
    json row{{"id", v.id},
             {"min_length", set.min_length},
             {"gap_low", infinity_or(set.gap ? set.gap->l1 : 0.0, set.gap.has_value())},
             {"gap_high", infinity_or(set.gap ? set.gap->l2 : 0.0, set.gap.has_value())},
             {"classification", classification_json(cls)}};
    if (opt.oracle && set.gap) {
      const double mid = 0.5 * (set.gap->l1 + set.gap->l2);
      row["oracle_gap_midpoint_reachable"] =
          oracle_exists_length(v.start, v.goal, problem.bound, mid);
    }
    report["vehicles"].push_back(row);
    csv << v.id << ',' << word_name(cls.shortest_word) << ',' << fmt(set.min_length)
        << ',' << csv_or_inf(row["gap_low"]) << ',' << csv_or_inf(row["gap_high"])
        << '\n';
  }
  if (opt.format == "csv") {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::fputs((report.dump(2) + "\n").c_str(), stdout);
  }
  return kExitOk;
}

std::string with_id_suffix(const std::string& file, int id, bool multi) {
  if (!multi) return file;
  const auto dot = file.find_last_of('.');
  if (dot == std::string::npos) return file + "_" + std::to_string(id);
  return file.substr(0, dot) + "_" + std::to_string(id) + file.substr(dot);
}

int cmd_elongate(const CommonOptions& opt, std::optional<double> target, double tol,
                 const std::string& trace_csv, const std::string& svg) {
  const Problem problem = load_problem(opt.input);
  json report{{"kappa", problem.bound.kappa}, {"vehicles", json::array()}};
  const bool multi = problem.vehicles.size() > 1;
  std::vector<CurvaturePath> paths;
  std::ostringstream csv;
  csv << "id,target_length,achieved_length,strategy,endpoint_position_error\n";
  for (std::size_t i = 0; i < problem.vehicles.size(); ++i) {
    const Vehicle& v = problem.vehicles[i];
    const std::optional<double> goal_length =
        problem.targets[i] ? problem.targets[i] : target;
    if (!goal_length) {
      throw ParseFailure("no target length: pass --target or set target_length");
    }
    const ElongationResult res =
        elongate_to({v.start, v.goal, problem.bound, *goal_length, tol});
    const ValidationReport check = validate(res.path, v.start, v.goal);
    report["vehicles"].push_back({{"id", v.id},
                                  {"target_length", *goal_length},
                                  {"achieved_length", check.length},
                                  {"strategy", strategy_name(res.strategy)},
                                  {"segments", segments_json(res.path)},
                                  {"endpoint_position_error",
                                   check.endpoint_position_error},
                                  {"endpoint_heading_error",
                                   check.endpoint_heading_error}});
    csv << v.id << ',' << fmt(*goal_length) << ',' << fmt(check.length) << ','
        << strategy_name(res.strategy) << ',' << fmt(check.endpoint_position_error)
        << '\n';
    if (!trace_csv.empty()) {
      write_trace_csv(with_id_suffix(trace_csv, v.id, multi), res.path);
    }
    paths.push_back(res.path);
  }
  if (!svg.empty()) write_svg(svg, paths);
  if (opt.format == "csv") {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::fputs((report.dump(2) + "\n").c_str(), stdout);
  }
  return kExitOk;
}

int cmd_fleet(const CommonOptions& opt, double tol, const std::string& trace_dir) {
  const Problem problem = load_problem(opt.input);
  const FleetProblem fleet_problem{problem.bound, problem.vehicles};
  const FleetPlan plan = plan_formation(fleet_problem, tol);
  const auto rows = arrival_report(fleet_problem, plan);

  json report{{"kappa", problem.bound.kappa},
              {"t_m", plan.t_m},
              {"vehicles", json::array()}};
  std::ostringstream csv;
  csv << "id,min_length,gap_low,gap_high,length,strategy,max_endpoint_error\n";
  for (std::size_t i = 0; i < plan.vehicles.size(); ++i) {
    const VehiclePlan& vp = plan.vehicles[i];
    const bool has_gap = vp.feasible.gap.has_value();
    report["vehicles"].push_back(
        {{"id", vp.id},
         {"min_length", vp.feasible.min_length},
         {"gap_low", infinity_or(has_gap ? vp.feasible.gap->l1 : 0.0, has_gap)},
         {"gap_high", infinity_or(has_gap ? vp.feasible.gap->l2 : 0.0, has_gap)},
         {"length", vp.length},
         {"strategy", strategy_name(vp.strategy)},
         {"max_endpoint_error", rows[i].max_endpoint_error}});
    csv << vp.id << ',' << fmt(vp.feasible.min_length) << ','
        << (has_gap ? fmt(vp.feasible.gap->l1) : "+inf") << ','
        << (has_gap ? fmt(vp.feasible.gap->l2) : "+inf") << ',' << fmt(vp.length)
        << ',' << strategy_name(vp.strategy) << ',' << fmt(rows[i].max_endpoint_error)
        << '\n';
    if (!trace_dir.empty()) {
      std::filesystem::create_directories(trace_dir);
      write_trace_csv(trace_dir + "/vehicle_" + std::to_string(vp.id) + ".csv",
                      vp.path);
    }
  }
  if (opt.format == "csv") {
    const std::string head = "t_m," + fmt(plan.t_m) + "\n";
    std::fputs((head + csv.str()).c_str(), stdout);
  } else {
    std::fputs((report.dump(2) + "\n").c_str(), stdout);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-bounded shortest paths, achievable length sets, "
               "fixed-length synthesis, and fleet arrival planning"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::optional<double> target;
  double tol = 1e-9;
  std::string trace_csv, svg, trace_dir;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--in", opt.input, "problem file (JSON)")->required();
    cmd->add_option("--format", opt.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--oracle", opt.oracle, "add brute-force audit values");
  };

  CLI::App* c_shortest = app.add_subcommand("shortest", "shortest paths per vehicle");
  add_common(c_shortest);
  CLI::App* c_feasible =
      app.add_subcommand("feasible", "achievable length sets per vehicle");
  add_common(c_feasible);
  CLI::App* c_elongate =
      app.add_subcommand("elongate", "synthesize paths of a requested length");
  add_common(c_elongate);
  c_elongate->add_option("--target", target, "target length for all vehicles");
  c_elongate->add_option("--tol", tol, "length tolerance");
  c_elongate->add_option("--trace-csv", trace_csv, "write sampled trace CSV");
  c_elongate->add_option("--svg", svg, "write SVG plot");
  CLI::App* c_fleet =
      app.add_subcommand("fleet", "minimum-time simultaneous arrival plan");
  add_common(c_fleet);
  c_fleet->add_option("--tol", tol, "length tolerance");
  c_fleet->add_option("--trace-dir", trace_dir, "write one trace CSV per vehicle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitParse;
  }

  try {
    if (app.got_subcommand(c_shortest)) return cmd_shortest(opt);
    if (app.got_subcommand(c_feasible)) return cmd_feasible(opt);
    if (app.got_subcommand(c_elongate)) {
      return cmd_elongate(opt, target, tol, trace_csv, svg);
    }
    if (app.got_subcommand(c_fleet)) return cmd_fleet(opt, tol, trace_dir);
  } catch (const ParseFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const DegenerateInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const InfeasibleLength& e) {
    std::fprintf(stderr, "error: %s (target %s)\n", e.what(), fmt(e.target).c_str());
    if (e.has_gap) {
      std::fprintf(stderr, "feasible lengths: [%s, %s] u [%s, +inf)\n",
                   fmt(e.min_length).c_str(), fmt(e.gap_low).c_str(),
                   fmt(e.gap_high).c_str());
    } else {
      std::fprintf(stderr, "feasible lengths: [%s, +inf)\n", fmt(e.min_length).c_str());
    }
    return kExitInfeasible;
  } catch (const ToleranceNotMet& e) {
    std::fprintf(stderr, "error: %s (achieved %s)\n", e.what(),
                 fmt(e.achieved).c_str());
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
  return kExitOk;
}
