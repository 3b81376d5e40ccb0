// ddt: command-line front end for the dynamic discrete tomography library.
//
// Exit codes: 0 success, 1 infeasible, 2 input error, 3 budget exhausted.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddt/errors.hpp"
#include "ddt/evaluate.hpp"
#include "ddt/fitting.hpp"
#include "ddt/io.hpp"
#include "ddt/oracle.hpp"
#include "ddt/plot.hpp"
#include "ddt/scenario.hpp"
#include "ddt/static_tomography.hpp"
#include "ddt/tracking.hpp"
#include "ddt/windows.hpp"
#include "json.hpp"

namespace {

using namespace ddt;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

int exit_code(Status s) {
  switch (s) {
    case Status::kOk:
      return kExitOk;
    case Status::kInfeasible:
      return kExitInfeasible;
    case Status::kBudgetExhausted:
      return kExitBudget;
  }
  return kExitInternal;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

ordered_json point_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coords()) a.push_back(c.to_string());
  return a;
}

ordered_json points_json(const PointSet& s) {
  ordered_json a = ordered_json::array();
  for (const auto& p : s) a.push_back(point_json(p));
  return a;
}

// "1,3" -> {0, 2}
std::vector<std::size_t> parse_frame_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 1) throw InputError("--known-frames: '" + item + "' is not a frame number >= 1");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception&) {
      throw InputError(flag + ": '" + item + "' is not a rational");
    }
  }
  return out;
}

struct Common {
  std::string norm = "euclid2";
  std::size_t k = 2;
  std::string variant = "maxmin";
  std::optional<std::int64_t> budget;
  std::string out;
  std::string plot;
  bool timings = false;

  IlpOptions ilp() const {
    IlpOptions o;
    if (budget) {
      o.node_budget = *budget;
    } else if (const char* env = std::getenv("DDT_BUDGET")) {
      try {
        o.node_budget = std::stoll(env);
      } catch (const std::exception&) {
        throw InputError(std::string("DDT_BUDGET: '") + env + "' is not an integer");
      }
    }
    if (o.node_budget < 1) throw InputError("node budget must be positive");
    return o;
  }

  FitOptions fit() const {
    FitOptions f;
    f.k = k;
    f.norm = NormSpec::parse(norm);
    f.variant = parse_weight_variant(variant);
    return f;
  }
};

void add_common(CLI::App* cmd, Common& c, bool algorithm_flags) {
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  if (!algorithm_flags) return;
  cmd->add_option("--norm", c.norm, "Norm: euclid2, max or p:<int>");
  cmd->add_option("--k", c.k, "Sample size for curve fitting (k - 1 = degree)");
  cmd->add_option("--weight-variant", c.variant, "Sample fit weight: maxmin or sumsq");
  cmd->add_option("--budget", c.budget, "Branch-and-bound node budget (overrides DDT_BUDGET)");
  cmd->add_option("--plot", c.plot, "Also write an SVG plot here");
  cmd->add_flag("--timings", c.timings, "Report wall-clock time on stderr");
}

// ---- subcommands ----------------------------------------------------------

struct SimulateArgs {
  std::size_t n = 3, t = 3;
  std::string motion = "straight";
  std::int64_t box = 100, max_speed = 5, min_sep = 1;
  unsigned degree = 2;
  std::size_t crossing_pairs = 0;
  std::string field;
  std::string known;
  std::uint64_t seed = 1;
  std::string truth;
};

int run_simulate(const SimulateArgs& a, const Common& c) {
  Scenario s;
  s.n = a.n;
  s.t = a.t;
  s.motion = parse_motion_kind(a.motion);
  s.box = a.box;
  s.max_speed = a.max_speed;
  s.min_separation = a.min_sep;
  s.degree = a.degree;
  s.crossing_pairs = a.crossing_pairs;
  s.seed = a.seed;
  s.known_frames = parse_frame_list(a.known);
  if (!a.field.empty()) {
    auto v = parse_rationals(a.field, "--field");
    if (v.size() != 4 && v.size() != 6) throw InputError("--field expects a,b,c,d[,tx,ty]");
    AffineMap m;
    m.matrix = {{v[0], v[1]}, {v[2], v[3]}};
    m.translation = v.size() == 6 ? Point{v[4], v[5]} : Point{Rational(0), Rational(0)};
    s.field = m;
  }
  GeneratedScenario g = generate(s);
  emit(c.out, write_instance(g.instance));
  if (!a.truth.empty()) {
    TrackResult r;
    r.tracks = g.truth;
    write_file(a.truth, write_tracks(r));
  }
  if (!c.plot.empty()) write_file(c.plot, plot_svg(g.instance.grids(), g.truth));
  return kExitOk;
}

int run_xray(const std::string& in, bool known, const Common& c) {
  PointFrames pf = read_point_frames(slurp(in), in);
  if (pf.frames.empty()) throw InputError(in + ": no frames");
  TomographyInstance inst = TomographyInstance::from_frames(pf.frames, pf.directions, known);
  inst.validate();
  emit(c.out, write_instance(inst));
  return kExitOk;
}

int run_reconstruct(const std::string& in, std::size_t enum_bound, std::int64_t count_cap, const Common& c) {
  TomographyInstance inst = read_instance(slurp(in), in);
  ordered_json frames = ordered_json::array();
  int code = kExitOk;
  for (std::size_t tau = 0; tau < inst.t(); ++tau) {
    const auto& f = inst.frames[tau];
    ReconstructionResult r = reconstruct_two(f.first, f.second, inst.directions);
    ordered_json j;
    j["frame"] = tau + 1;
    j["feasible"] = r.feasible;
    if (r.feasible) {
      j["points"] = points_json(*r.solution);
      j["unique"] = check_uniqueness(f.first, f.second, inst.directions);
      Grid g = inst.grid(tau);
      if (g.size() <= enum_bound) {
        j["count"] = count_solutions(f.first, f.second, inst.directions, count_cap, enum_bound);
      }
    } else {
      code = kExitInfeasible;
    }
    frames.push_back(j);
  }
  ordered_json doc;
  doc["frames"] = frames;
  emit(c.out, doc.dump(2) + "\n");
  return code;
}

TrackResult dispatch(const std::string& algo, const TomographyInstance& inst, const Common& c) {
  const IlpOptions ilp = c.ilp();
  if (algo == "markov") return trac_markov(inst);
  if (algo == "ilp") return tomtrac_ilp(inst, ilp);
  if (algo == "rolling") {
    RollingOptions o;
    o.point_norm = NormSpec::parse(c.norm);
    o.ilp = ilp;
    return rolling_horizon(inst, o);
  }
  if (algo == "pathfit") return path_fitting(inst, c.fit());
  if (algo == "tomofit") return tomographic_fitting(inst, c.fit(), ilp);
  if (algo == "tomopathfit") return tomographic_path_fitting(inst, c.fit(), ilp);
  if (algo == "displace") return tomdisplacetrac(inst, ilp);
  if (algo == "twoway") {
    TwoWayOptions o;
    o.norm = NormSpec::parse(c.norm);
    o.ilp = ilp;
    TwoWayResult r = two_way_fitting(inst, o);
    if (r.converged) r.result.message = "converged after " + std::to_string(r.rounds) + " rounds";
    return r.result;
  }
  throw InputError("unknown algorithm '" + algo + "'");
}

int run_track(const std::string& in, const std::string& algo, const Common& c) {
  TomographyInstance inst = read_instance(slurp(in), in);
  const auto start = std::chrono::steady_clock::now();
  TrackResult r = inst.windows.empty()
                      ? dispatch(algo, inst, c)
                      : windowed_tracking(
                            inst, [&](const TomographyInstance& i) { return dispatch(algo, i, c); }, c.ilp());
  if (c.timings) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "track " << algo << ": " << ms << " ms\n";
  }
  emit(c.out, write_tracks(r));
  if (!r.message.empty() && r.status != Status::kOk) std::cerr << "ddt: " << r.message << "\n";
  if (!c.plot.empty() && r.status == Status::kOk) write_file(c.plot, plot_svg(inst.grids(), r.tracks));
  return exit_code(r.status);
}

int run_windows(const std::string& in, const Common& c) {
  TomographyInstance inst = read_instance(slurp(in), in);
  const IlpOptions ilp = c.ilp();
  ordered_json frames = ordered_json::array();
  int code = kExitOk;
  for (std::size_t tau = 0; tau < inst.t(); ++tau) {
    static const std::vector<WindowConstraint> kNone;
    const auto& ws = tau < inst.windows.size() ? inst.windows[tau] : kNone;
    Grid g = inst.grid(tau);
    WindowedFrame w = solve_windowed_frame(g, ws, {}, ilp);
    ordered_json j;
    j["frame"] = tau + 1;
    j["class"] = to_string(w.window_class);
    j["status"] = w.status == Status::kOk ? "ok" : w.status == Status::kInfeasible ? "infeasible" : "budget-exhausted";
    if (w.support) j["points"] = points_json(*w.support);
    if (w.status != Status::kOk && code == kExitOk) code = exit_code(w.status);
    frames.push_back(j);
  }
  ordered_json doc;
  doc["frames"] = frames;
  emit(c.out, doc.dump(2) + "\n");
  return code;
}

struct EvalArgs {
  std::string result, truth, optimum, instance;
  bool oracle = false;
  OracleBounds bounds;
};

int run_eval(const EvalArgs& a, const Common& c) {
  TrackResult result = read_tracks(slurp(a.result), a.result);
  TrackResult truth = read_tracks(read_file(a.truth), a.truth);
  if (result.status != Status::kOk) throw InputError(a.result + ": result has no tracks");
  if (truth.status != Status::kOk) throw InputError(a.truth + ": truth has no tracks");
  std::optional<Rational> optimum;
  if (!a.optimum.empty()) {
    TrackResult opt = read_tracks(read_file(a.optimum), a.optimum);
    if (opt.status != Status::kOk) throw InputError(a.optimum + ": optimum has no tracks");
    optimum = opt.tracks.objective;
  } else if (a.oracle) {
    if (a.instance.empty()) throw InputError("--oracle needs --instance");
    TomographyInstance inst = read_instance(read_file(a.instance), a.instance);
    TrackResult opt = brute_force_tomtrac(inst, a.bounds);
    if (opt.status != Status::kOk) throw InputError(a.instance + ": oracle found no optimum");
    optimum = opt.tracks.objective;
  }
  emit(c.out, write_report(evaluate(result.tracks, truth.tracks, optimum)));
  return kExitOk;
}

int run_plot(const std::string& in, const std::string& tracks, const Common& c) {
  TomographyInstance inst = read_instance(slurp(in), in);
  TrackSet ts;
  if (!tracks.empty()) {
    TrackResult r = read_tracks(read_file(tracks), tracks);
    if (r.status == Status::kOk) ts = r.tracks;
  }
  emit(c.out, plot_svg(inst.grids(), ts));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic discrete tomography: reconstruction and particle tracking from two X-rays per frame"};
  app.require_subcommand(1);
  Common common;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic instance and its ground truth");
  add_common(simulate, common, false);
  simulate->add_option("--n", sim.n, "Number of particles");
  simulate->add_option("--t", sim.t, "Number of frames");
  simulate->add_option("--motion", sim.motion, "static, straight, polynomial or affine");
  simulate->add_option("--box", sim.box, "Half-width of the bounding box");
  simulate->add_option("--max-speed", sim.max_speed, "Bound on velocity components");
  simulate->add_option("--degree", sim.degree, "Polynomial degree");
  simulate->add_option("--crossing-pairs", sim.crossing_pairs, "Pairs of crossing straight tracks");
  simulate->add_option("--min-separation", sim.min_sep, "Minimum max-norm distance between particles");
  simulate->add_option("--field", sim.field, "Affine field a,b,c,d[,tx,ty]");
  simulate->add_option("--known-frames", sim.known, "Frames (1-based, comma separated) to reveal");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--truth", sim.truth, "Write the ground-truth tracks here");
  simulate->add_option("--plot", common.plot, "Also write an SVG plot here");

  std::string in;
  bool known = false;
  auto* xray_cmd = app.add_subcommand("xray", "Turn point frames into an instance");
  add_common(xray_cmd, common, false);
  xray_cmd->add_option("input", in, "Point frames file")->required();
  xray_cmd->add_flag("--known", known, "Mark every frame as known");

  std::size_t enum_bound = kDefaultEnumerationBound;
  std::int64_t count_cap = 1'000'000;
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct every frame on its own");
  add_common(reconstruct, common, false);
  reconstruct->add_option("input", in, "Instance file")->required();
  reconstruct->add_option("--enum-bound", enum_bound, "Largest grid whose solutions are counted");
  reconstruct->add_option("--count-cap", count_cap, "Stop counting solutions here");

  std::string algo;
  auto* track = app.add_subcommand("track", "Reconstruct and couple all frames");
  add_common(track, common, true);
  track->add_option("input", in, "Instance file")->required();
  track->add_option("--algo", algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"markov", "ilp", "rolling", "pathfit", "tomofit", "tomopathfit", "twoway", "displace"}));

  auto* windows = app.add_subcommand("windows", "Classify and solve the window systems per frame");
  add_common(windows, common, false);
  windows->add_option("input", in, "Instance file")->required();
  windows->add_option("--budget", common.budget, "Branch-and-bound node budget (overrides DDT_BUDGET)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Compare tracks with the ground truth");
  add_common(eval, common, false);
  eval->add_option("--result", ev.result, "Track file to score")->required();
  eval->add_option("--truth", ev.truth, "Ground-truth track file")->required();
  auto* opt = eval->add_option("--optimum", ev.optimum, "Track file holding the optimal objective");
  eval->add_flag("--oracle", ev.oracle, "Compute the optimum by brute force")->excludes(opt);
  eval->add_option("--instance", ev.instance, "Instance for --oracle");
  eval->add_option("--enum-bound", ev.bounds.max_grid, "Largest grid per frame the oracle enumerates");

  std::string tracks;
  auto* plot = app.add_subcommand("plot", "Write an SVG of an instance and optional tracks");
  add_common(plot, common, false);
  plot->add_option("input", in, "Instance file")->required();
  plot->add_option("--tracks", tracks, "Track file to draw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*simulate) return run_simulate(sim, common);
    if (*xray_cmd) return run_xray(in, known, common);
    if (*reconstruct) return run_reconstruct(in, enum_bound, count_cap, common);
    if (*track) return run_track(in, algo, common);
    if (*windows) return run_windows(in, common);
    if (*eval) return run_eval(ev, common);
    if (*plot) return run_plot(in, tracks, common);
  } catch (const InputError& e) {
    std::cerr << "ddt: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExhausted& e) {
    std::cerr << "ddt: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "ddt: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
