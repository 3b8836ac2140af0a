#include "rtc_cli/cli.hpp"

#include "rtc/errors.hpp"
#include "rtc/forward.hpp"
#include "rtc/io.hpp"
#include "rtc/map_dsl.hpp"
#include "rtc/reverse.hpp"
#include "rtc/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace rtc::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_vector(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out + ")";
}

namespace {

SmoothMap load_map_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '(') return parse_map(arg);
  return load_map_file(arg);
}

std::vector<double> parse_vector(const std::string& text, const std::string& what) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }), s.end());
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
      throw ParseError(what + ": '" + piece + "' is not a number");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void require_length(const std::vector<double>& v, std::size_t n, const std::string& what) {
  if (v.size() != n) {
    throw DimensionMismatch(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  }
}

std::string format_box(const Box& box) {
  std::string out;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    out += (i ? " x " : "") + std::string("(") + format_number(box.bounds[i].first) + ", " +
           format_number(box.bounds[i].second) + ")";
  }
  return out;
}

std::string format_point(const ManifoldPoint& p) { return p.chart + ":" + format_vector(p.coords); }

ManifoldPoint parse_start(const std::string& text, const Atlas& atlas) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("--start expects <chart>:<x0,x1,...>");
  ManifoldPoint p{text.substr(0, colon), parse_vector(text.substr(colon + 1), "--start")};
  if (!atlas.has_chart(p.chart)) throw ParseError("--start names unknown chart '" + p.chart + "'");
  require_length(p.coords, atlas.dim(), "--start");
  if (!atlas.contains(p)) throw DomainError("--start lies outside chart '" + p.chart + "'");
  return p;
}

ManifoldPoint default_start(const Atlas& atlas) {
  const Chart& c = atlas.charts().front();
  std::vector<double> x;
  for (const auto& [lo, hi] : c.box.bounds) {
    if (std::isfinite(lo) && std::isfinite(hi)) {
      x.push_back((lo + hi) / 2);
    } else if (std::isfinite(lo)) {
      x.push_back(lo + 1);
    } else if (std::isfinite(hi)) {
      x.push_back(hi - 1);
    } else {
      x.push_back(0.0);
    }
  }
  return ManifoldPoint{c.id, x};
}

struct Options {
  std::string map;
  std::string point;
  std::string vector;
  std::string suite;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string json;
  std::string manifold_map;
  std::string field;
  std::size_t samples = 64;
  double det_floor = 1e-8;
  std::string objective;
  std::string atlas;
  std::string metric;
  double step = 0.1;
  std::size_t iters = 500;
  std::string start;
  std::optional<double> stop_below;
};

int write_report(const CheckReport& report, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << report.to_json();
  if (!file) throw IoError("cannot write '" + path + "'");
  return 0;
}

int run_check(const Options& o, std::ostream& out, bool text) {
  SuiteOptions so;
  so.seed = o.seed;
  so.tol = o.tol;
  CheckReport report = run_suite(o.suite, so);
  if (!o.json.empty()) write_report(report, o.json);
  if (text) {
    out << report.to_text();
  } else {
    out << o.suite << ": " << report.laws.size() << " laws, " << report.failures() << " failed, report written to "
        << o.json << "\n";
  }
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "eval" || command == "jvp" || command == "vjp") {
    SmoothMap f = load_map_arg(o.map);
    std::vector<double> x = parse_vector(o.point, "point");
    require_length(x, f.dom_dim(), "point");
    if (command == "eval") {
      out << format_vector(f.eval(x)) << "\n";
      return kExitOk;
    }
    std::vector<double> v = parse_vector(o.vector, command == "jvp" ? "vector" : "covector");
    if (command == "jvp") {
      require_length(v, f.dom_dim(), "vector");
      x.insert(x.end(), v.begin(), v.end());
      out << format_vector(d_combinator(f).eval(x)) << "\n";
    } else {
      require_length(v, f.cod_dim(), "covector");
      x.insert(x.end(), v.begin(), v.end());
      out << format_vector(r_combinator(f).eval(x)) << "\n";
    }
    return kExitOk;
  }
  if (command == "check") return run_check(o, out, true);
  if (command == "report") return run_check(o, out, false);
  if (command == "etale") {
    ManifoldMap f = load_manifold_map(o.manifold_map);
    EtaleReport r = is_etale(f, o.samples, o.seed, o.det_floor);
    out << "etale: " << (r.etale ? "true" : "false") << ", min |det| = " << format_number(r.min_abs_det) << "\n";
    if (!r.etale && r.worst) out << "worst point: " << format_point(*r.worst) << "\n";
    return r.etale ? kExitOk : kExitCheckFailed;
  }
  if (command == "pullback-form") {
    ManifoldMap f = load_manifold_map(o.manifold_map);
    CovectorField omega = load_covector_field(o.field);
    CovectorField pulled = covector_pullback(omega, f);
    out << "pullback along " << f.name() << ": " << pulled.patches().size() << " patches\n";
    for (const auto& p : pulled.patches()) {
      out << "  " << p.chart << " on " << format_box(p.box.intersect(pulled.atlas().chart(p.chart).box));
      if (!p.guards.empty()) out << " (" << p.guards.size() << (p.guards.size() == 1 ? " guard)" : " guards)");
      out << ": " << print_map(normalize(p.omega)) << "\n";
    }
    out << "section law: " << (section_law_holds(pulled) ? "holds" : "fails") << "\n";
    FieldCheck fc = check_overlap_compatibility(pulled, o.samples, o.seed, o.tol.value_or(1e-9));
    out << "overlap compatibility: " << (fc.passed ? "holds" : "fails") << " (" << fc.points
        << " points, max error " << format_number(fc.max_error) << ")\n";
    return fc.passed ? kExitOk : kExitCheckFailed;
  }
  if (command == "optimize") {
    ManifoldMap h = load_manifold_map(o.objective);
    AtlasPtr atlas = load_atlas(o.atlas);
    MetricField g = load_metric(o.metric);
    if (h.source().name() != atlas->name() || g.atlas().name() != atlas->name()) {
      throw InvariantViolation("same-atlas", "objective, atlas and metric must share the atlas '" + atlas->name() + "'");
    }
    if (h.target().dim() != 1) throw DimensionMismatch("the objective must be real-valued");
    ManifoldPoint start = o.start.empty() ? default_start(*atlas) : parse_start(o.start, *atlas);
    StepOptions so;
    so.step = o.step;
    std::function<bool(const ManifoldPoint&)> stop;
    if (o.stop_below) {
      double bound = *o.stop_below;
      stop = [&h, bound](const ManifoldPoint& p) { return objective_value(h, p) < bound; };
    }
    DescentResult r = riemannian_descent(h, g, start, o.iters, so, stop);
    out << "start: " << format_point(start) << "\n";
    out << "iterations: " << r.iterations << "\n";
    out << "final: " << format_point(r.final_point) << "\n";
    out << "value: " << format_number(r.values.back()) << "\n";
    out << "monotone: " << (r.monotone ? "true" : "false") << "\n";
    return r.monotone ? kExitOk : kExitCheckFailed;
  }
  throw ParseError("unknown subcommand '" + command + "'");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forward and reverse tangent structure checks", "rtc"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate a map at a point");
  auto* jvp = app.add_subcommand("jvp", "Forward derivative D[F](x, v)");
  auto* vjp = app.add_subcommand("vjp", "Reverse derivative R[F](x, w)");
  for (auto* sub : {eval, jvp, vjp}) {
    sub->add_option("map", o.map, "Map DSL text or a file containing it")->required();
    sub->add_option("point", o.point, "Comma-separated coordinates")->required();
  }
  jvp->add_option("vector", o.vector, "Tangent vector")->required();
  vjp->add_option("covector", o.vector, "Covector")->required();

  auto* check = app.add_subcommand("check", "Run a law suite");
  check->add_option("suite", o.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--json", o.json, "Also write the JSON report here");

  auto* report = app.add_subcommand("report", "Run a law suite and write the JSON report");
  report->add_option("--json", o.json, "Output path")->required();
  o.suite = "all";
  report->add_option("--suite", o.suite, "Suite name")->capture_default_str()->check(CLI::IsMember(suite_names()));

  for (auto* sub : {check, report}) {
    sub->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--tol", o.tol, "Override every sampled tolerance");
  }

  auto* etale = app.add_subcommand("etale", "Sampled etale test of a manifold map");
  etale->add_option("manifold-map", o.manifold_map, "Manifold map JSON")->required();
  etale->add_option("--det-floor", o.det_floor, "Smallest accepted |det J|")->capture_default_str();

  auto* pullback = app.add_subcommand("pullback-form", "Pull a covector field back along a manifold map");
  pullback->add_option("manifold-map", o.manifold_map, "Manifold map JSON")->required();
  pullback->add_option("covector-field", o.field, "Covector field JSON")->required();
  pullback->add_option("--tol", o.tol, "Overlap tolerance (default 1e-9)");

  for (auto* sub : {etale, pullback}) {
    sub->add_option("--samples", o.samples, "Sample count")->capture_default_str();
    sub->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  }

  auto* optimize = app.add_subcommand("optimize", "Riemannian gradient descent");
  optimize->add_option("objective", o.objective, "Real-valued manifold map JSON")->required();
  optimize->add_option("atlas", o.atlas, "Atlas JSON")->required();
  optimize->add_option("metric", o.metric, "Metric JSON")->required();
  optimize->add_option("--step", o.step, "Initial step")->capture_default_str()->check(CLI::PositiveNumber);
  optimize->add_option("--iters", o.iters, "Maximum number of steps")->capture_default_str();
  optimize->add_option("--start", o.start, "Start point <chart>:<x0,x1,...> (default: first chart centre)");
  optimize->add_option("--stop-below", o.stop_below, "Stop once the objective drops below this value");

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      !app.get_subcommand_no_throw(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "'\n";
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantViolation& e) {
    err << "error: invariant '" << e.invariant() << "' violated: " << e.detail() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: dimension mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace rtc::cli
