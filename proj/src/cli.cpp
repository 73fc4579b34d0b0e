#include "cartan/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/decision.hpp"
#include "cartan/escape_grid.hpp"
#include "cartan/identity_suite.hpp"
#include "cartan/parse.hpp"
#include "cartan/report.hpp"

namespace cartan {

namespace {

struct Settings {
  std::string map_source;
  std::string seed_text;
  std::string format;
  std::string out_path;
  std::string space = "julia";
  int max_iterations = -1;
  double tol = 0;
  std::string viewport = "-2,-2,2,2";
  std::string resolution = "256x256";
  int depth = 4;
  int forward = 2;
  std::string dump_path;
};

class UsageError : public Error {
public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "UsageError"; }
};

class IoError : public Error {
public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "IoError"; }
};

std::uint64_t resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (const char* env = std::getenv("CARTAN_SEED"); env != nullptr && *env != '\0') text = env;
  if (text.empty()) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw UsageError("seed is not an unsigned integer: " + text);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("seed is not an unsigned integer: " + text);
  }
}

std::vector<double> parse_numbers(const std::string& text, char sep, std::size_t count,
                                  const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    double v = 0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
      throw UsageError("malformed " + what + ": " + text);
    out.push_back(v);
    start = end + 1;
  }
  if (out.size() != count) throw UsageError("malformed " + what + ": " + text);
  return out;
}

Viewport parse_viewport(const std::string& text) {
  const auto v = parse_numbers(text, ',', 4, "viewport");
  Viewport vp{v[0], v[1], v[2], v[3]};
  if (!(vp.x0 < vp.x1) || !(vp.y0 < vp.y1))
    throw UsageError("viewport needs x0 < x1 and y0 < y1: " + text);
  return vp;
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto v = parse_numbers(text, 'x', 2, "resolution");
  for (double d : v)
    if (d < 0 || d > 8192 || d != std::floor(d)) throw UsageError("malformed resolution: " + text);
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

Space parse_space(const std::string& s) {
  if (s == "julia") return Space::Julia;
  if (s == "fatou") return Space::Fatou;
  if (s == "sphere") return Space::Sphere;
  throw UsageError("space must be julia, fatou or sphere");
}

Budget make_budget(const Settings& s) {
  Budget b;
  if (s.max_iterations >= 0) b.max_iterations = s.max_iterations;
  if (s.tol != 0) {
    if (!(s.tol > 0)) throw UsageError("tolerance must be positive");
    b.convergence_tol = s.tol;
  }
  return b;
}

// Writes to --out when given, otherwise to the command's output stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string point_text(const SpherePoint& p) {
  std::ostringstream os;
  os << std::setprecision(12) << p;
  return os.str();
}

int exit_for(CartanVerdict v) { return v == CartanVerdict::Undetermined ? 2 : 0; }

int cmd_analyze(const Settings& s, std::ostream& out) {
  const RationalMap map = parse_map(s.map_source);
  const std::uint64_t seed = resolve_seed(s.seed_text);
  const Space space = parse_space(s.space);
  const Budget budget = make_budget(s);
  const CartanReport report = decide_cartan(map, space, budget);
  Sink sink(s.out_path, out);
  if (s.format == "text") {
    std::ostream& os = sink.get();
    os << "map: " << format_map(map) << "\nspace: " << to_string(space)
       << "\nverdict: " << to_string(report.verdict) << "\nspace nonempty: "
       << to_string(report.space_nonempty) << "\nnotes: " << report.notes << "\nwitnesses:\n";
    for (const CriticalDatum& c : report.witnesses) {
      os << "  " << point_text(c.point) << "  e=" << c.branch_index << "  "
         << to_string(c.membership.verdict) << "  " << to_string(c.membership.certificate.kind);
      if (const auto& cyc = c.membership.certificate.cycle)
        os << "  cycle " << point_text(cyc->representative()) << " period " << cyc->period
           << " multiplier " << std::abs(cyc->multiplier);
      os << '\n';
    }
  } else {
    sink.get() << report_json(report, budget, seed).dump(2) << '\n';
  }
  sink.finish();
  return exit_for(report.verdict);
}

int cmd_critical(const Settings& s, std::ostream& out) {
  const RationalMap map = parse_map(s.map_source);
  const Budget budget = make_budget(s);
  const std::vector<CriticalDatum> crit = classify_critical_points(map, budget);
  Sink sink(s.out_path, out);
  if (s.format == "text") {
    for (const CriticalDatum& c : crit)
      sink.get() << point_text(c.point) << "  e=" << c.branch_index << "  "
                 << to_string(c.membership.verdict) << '\n';
  } else {
    Json arr = Json::array();
    for (const CriticalDatum& c : crit) arr.push_back(to_json(c));
    sink.get() << arr.dump(2) << '\n';
  }
  sink.finish();
  return 0;
}

int cmd_render(const Settings& s, std::ostream& out) {
  const RationalMap map = parse_map(s.map_source);
  const Viewport vp = parse_viewport(s.viewport);
  const auto [w, h] = parse_resolution(s.resolution);
  GridOptions options;
  options.seed = resolve_seed(s.seed_text);
  if (s.max_iterations >= 0) options.max_iterations = s.max_iterations;
  const EscapeGrid grid = escape_grid(map, vp, w, h, options);
  Sink sink(s.out_path, out);
  sink.get() << encode_ppm(grid, options.max_iterations);
  sink.finish();
  return 0;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const RationalMap map = parse_map(s.map_source);
  const std::uint64_t seed = resolve_seed(s.seed_text);
  if (s.depth < 1) throw UsageError("depth must be at least 1");
  if (s.forward < 0) throw UsageError("forward depth must be non-negative");
  const OrbitTree tree =
      build_orbit_tree(map, SpherePoint::finite({0.61, 0.27}), s.forward, s.depth, 4, seed);
  SuiteOptions options;
  options.seed = seed;
  const SuiteReport report = run_identity_suite(tree, options);

  if (!s.dump_path.empty()) {
    std::ofstream dump(s.dump_path, std::ios::binary);
    if (!dump) throw IoError("cannot open " + s.dump_path + " for writing");
    dump << to_json(tree).dump(2) << '\n';
    if (!dump) throw IoError("write failed: " + s.dump_path);
  }

  Sink sink(s.out_path, out);
  if (s.format == "json") {
    Json j{{"map", format_map(map)},
           {"tree", Json{{"nodes", tree.size()},
                         {"base", to_json(tree.node(tree.base()).point)},
                         {"backward_depth", tree.backward_depth()},
                         {"forward_depth", tree.forward_depth()}}},
           {"suite", to_json(report)},
           {"version", kVersion},
           {"seed", seed}};
    sink.get() << j.dump(2) << '\n';
  } else {
    std::ostream& os = sink.get();
    os << "map " << format_map(map) << ", tree of " << tree.size() << " nodes (backward "
       << tree.backward_depth() << ", forward " << tree.forward_depth() << ")\n";
    for (const SuiteCheck& c : report.checks)
      os << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(36) << c.name << std::right
         << std::setw(6) << c.cases << " cases  " << c.detail << '\n';
    os << (report.all_passed() ? "all checks passed" : "some checks failed") << '\n';
  }
  sink.finish();
  return report.all_passed() ? 0 : 1;
}

void report_error(const Error& e, const std::string& source, bool json, std::ostream& out,
                  std::ostream& err) {
  err << "error: " << e.kind() << ": " << e.what() << '\n';
  const auto* src = dynamic_cast<const SourceError*>(&e);
  if (src != nullptr) {
    const Span sp = src->span();
    err << "  " << source << "\n  " << std::string(std::min(sp.begin, source.size()), ' ')
        << std::string(std::max<std::size_t>(sp.end - sp.begin, 1), '^') << '\n';
    if (const auto* pe = dynamic_cast<const ParseError*>(&e))
      err << "  expected " << pe->expected() << '\n';
  }
  if (json) {
    Json j{{"error", Json{{"kind", std::string(e.kind())}, {"message", e.what()}}}};
    if (src != nullptr) j["error"]["span"] = Json::array({src->span().begin, src->span().end});
    if (const auto* nc = dynamic_cast<const NoConvergence*>(&e))
      j["error"]["iterations"] = nc->iterations();
    if (const auto* rh = dynamic_cast<const RiemannHurwitzMismatch*>(&e)) {
      j["error"]["found"] = rh->found();
      j["error"]["expected"] = rh->expected();
    }
    if (const auto* sc = dynamic_cast<const SizeCapExceeded*>(&e)) {
      j["error"]["requested"] = sc->requested();
      j["error"]["cap"] = sc->cap();
    }
    out << j.dump(2) << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Decide whether C_0(X) is a Cartan subalgebra for a rational map"};
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("map", s.map_source, "rational map in z, e.g. \"z^2-2\"")->required();
    cmd->add_option("--seed", s.seed_text, "random seed (default 0xC0FFEE; CARTAN_SEED overrides)");
    cmd->add_option("--format", s.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", s.out_path, "output path (default stdout)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "decide the Cartan property on a space");
  add_common(analyze);
  analyze->add_option("--space", s.space, "julia, fatou or sphere")
      ->check(CLI::IsMember({"julia", "fatou", "sphere"}));
  analyze->add_option("--max-iter", s.max_iterations, "forward iteration budget")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--tol", s.tol, "convergence tolerance for attracting cycles")
      ->check(CLI::PositiveNumber);

  CLI::App* render = app.add_subcommand("render", "write a PPM image of the escape grid");
  add_common(render);
  render->add_option("--viewport", s.viewport, "x0,y0,x1,y1");
  render->add_option("--res", s.resolution, "WxH");
  render->add_option("--max-iter", s.max_iterations, "iteration budget per pixel")
      ->check(CLI::NonNegativeNumber);

  CLI::App* verify = app.add_subcommand("verify", "run the operator identity suite on an orbit tree");
  add_common(verify);
  verify->add_option("--depth", s.depth, "backward depth of the orbit tree");
  verify->add_option("--forward", s.forward, "forward depth of the orbit tree");
  verify->add_option("--dump", s.dump_path, "write the tree as JSON");

  CLI::App* critical = app.add_subcommand("critical", "list critical points and their verdicts");
  add_common(critical);
  critical->add_option("--max-iter", s.max_iterations, "forward iteration budget")
      ->check(CLI::NonNegativeNumber);
  critical->add_option("--tol", s.tol, "convergence tolerance for attracting cycles")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> storage{"cartan"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const bool json = s.format != "text" && !render->parsed();
  if (s.format.empty()) s.format = verify->parsed() ? "text" : "json";
  try {
    if (analyze->parsed()) return cmd_analyze(s, out);
    if (render->parsed()) return cmd_render(s, out);
    if (verify->parsed()) return cmd_verify(s, out);
    return cmd_critical(s, out);
  } catch (const Error& e) {
    report_error(e, s.map_source, json && !(verify->parsed() && s.format == "text"), out, err);
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cartan
