// Acceptance run: one PASS/FAIL line per criterion, each under a wall-clock
// limit. Exits nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cli.hpp"
#include "cartan/decision.hpp"
#include "cartan/dynamics.hpp"
#include "cartan/error.hpp"
#include "cartan/escape_grid.hpp"
#include "cartan/identity_suite.hpp"
#include "cartan/parse.hpp"
#include "cartan/report.hpp"
#include "corpus.hpp"
#include "support.hpp"

using namespace cartan;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs > limit_seconds) o.fail("over time limit");
  if (!o.ok) ++failures;
  std::ostringstream line;
  line.precision(3);
  line << (o.ok ? "PASS" : "FAIL") << "  " << name << "  (" << std::fixed << secs << " s, limit "
       << limit_seconds << " s)";
  if (!o.detail.empty()) line << "  " << o.detail;
  std::cout << line.str() << std::endl;
}

Json cli_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run_cli(args, out, err);
  return Json::parse(out.str());
}

Outcome headline() {
  Outcome o;
  for (int rep = 0; rep < 2; ++rep) {
    int code = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const Json sq = cli_json({"analyze", "z^2", "--space", "julia"}, code);
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > 1)
      o.fail("z^2 took over 1 s");
    if (sq["verdict"] != "Cartan" || code != 0) o.fail("z^2 is not Cartan");

    const auto t1 = std::chrono::steady_clock::now();
    const Json cheb = cli_json({"analyze", "z^2-2", "--space", "julia"}, code);
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() > 1)
      o.fail("z^2-2 took over 1 s");
    if (cheb["verdict"] != "NotCartan" || code != 0) {
      o.fail("z^2-2 is not NotCartan");
      continue;
    }
    bool found = false;
    for (const Json& w : cheb["witnesses"]) {
      const Json& cert = w["certificate"];
      if (w["point"] != Json::array({0.0, 0.0}) || cert["kind"] != "PreperiodicToRepelling" ||
          cert["steps"] != 2 || cert["cycle"].is_null())
        continue;
      const Json& mult = cert["cycle"]["multiplier"];
      found |= std::abs(mult[0].get<double>() - 4) < 1e-9 && std::abs(mult[1].get<double>()) < 1e-9;
    }
    if (!found) o.fail("witness 0 lacks the PreperiodicToRepelling(2, 4) certificate");
    static std::string first;
    if (rep == 0) first = cheb.dump();
    else if (first != cheb.dump()) o.fail("report differs between runs");
  }
  return o;
}

Outcome julia_geometry() {
  Outcome o;
  for (const SpherePoint& p : julia_sample(parse_map("z^2"), 1000, 20, kDefaultSeed)) {
    if (p.is_infinity() || std::abs(std::abs(p.to_complex()) - 1) > 1e-6) {
      o.fail("z^2 sample off the unit circle");
      break;
    }
  }
  for (const SpherePoint& p : julia_sample(parse_map("z^2-2"), 1000, 20, kDefaultSeed)) {
    const Complex z = p.to_complex();
    if (p.is_infinity() || std::abs(z.imag()) > 1e-6 || z.real() < -2 - 1e-6 || z.real() > 2 + 1e-6) {
      o.fail("z^2-2 sample off [-2, 2]");
      break;
    }
  }
  return o;
}

Outcome riemann_hurwitz() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const RationalMap m = testing::random_integer_map(rng, 2 + i % 3);
    int total = 0;
    try {
      for (const CriticalDatum& c : critical_points(m)) total += c.branch_index - 1;
    } catch (const RiemannHurwitzMismatch& e) {
      o.fail(format_map(m) + ": " + e.what());
      continue;
    }
    if (total != 2 * m.degree() - 2) o.fail(format_map(m) + ": wrong critical count");
  }
  return o;
}

Outcome sphere_case() {
  Outcome o;
  int maps = 0;
  for (const std::string& src : testing::read_lines("data/parser_corpus.txt")) {
    const RationalMap m = parse_map(src);
    if (m.degree() < 2) continue;
    ++maps;
    if (decide_cartan(m, Space::Sphere).verdict != CartanVerdict::NotCartan)
      o.fail(src + " is not NotCartan on the sphere");
  }
  if (maps == 0) o.fail("no maps of degree >= 2 in the corpus");
  o.detail = o.ok ? std::to_string(maps) + " maps" : o.detail;
  return o;
}

Outcome identity_suite() {
  Outcome o;
  for (const char* src : {"z^2", "z^2-2"}) {
    const OrbitTree tree =
        build_orbit_tree(parse_map(src), SpherePoint::finite({0.61, 0.27}), 2, 4, 4, kDefaultSeed);
    SuiteOptions opt;
    opt.samples = 200;
    opt.seed = kDefaultSeed;
    for (const SuiteCheck& c : run_identity_suite(tree, opt).checks)
      if (!c.passed) o.fail(std::string(src) + " " + c.name + ": " + c.detail);
  }
  return o;
}

Outcome norms() {
  Outcome o;
  SuiteOptions opt;
  opt.samples = 100;
  opt.seed = kDefaultSeed;
  const SuiteCheck qm = check_quasi_monomial_norms(16, opt);
  if (!qm.passed || qm.cases < 100) o.fail(qm.name + ": " + qm.detail);
  for (const char* src : {"z^2", "z^2-2"}) {
    const OrbitTree tree =
        build_orbit_tree(parse_map(src), SpherePoint::finite({0.61, 0.27}), 2, 4, 4, kDefaultSeed);
    const SuiteCheck fb = check_fiber_block_norms(tree, opt);
    if (!fb.passed) o.fail(fb.name + ": " + fb.detail);
  }
  return o;
}

Outcome parser_corpus() {
  Outcome o;
  const auto corpus = testing::read_lines("data/parser_corpus.txt");
  if (corpus.size() != 50) o.fail("corpus does not hold 50 expressions");
  for (const std::string& src : corpus) {
    const RationalMap m = parse_map(src);
    if (!parse_map(format_map(m)).projectively_equal(m)) o.fail("round trip changed " + src);
  }
  const auto bad = testing::read_lines("data/malformed.txt");
  if (bad.size() != 10) o.fail("malformed list does not hold 10 inputs");
  for (const std::string& src : bad) {
    try {
      parse_map(src);
      o.fail("accepted " + src);
    } catch (const SourceError& e) {
      if (e.span().begin > e.span().end || e.span().end > src.size()) o.fail("bad span for " + src);
    }
  }
  return o;
}

Outcome render_golden() {
  Outcome o;
  std::ifstream in(std::string(CARTAN_TEST_DATA) + "/golden/z2_64.ppm", std::ios::binary);
  if (!in) {
    o.fail("golden file missing");
    return o;
  }
  const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli({"render", "z^2", "--viewport", "-2,-2,2,2", "--res", "64x64"}, out, err);
  if (code != 0) o.fail("render failed: " + err.str());
  else if (out.str() != golden) o.fail("bytes differ from the golden image");
  return o;
}

}  // namespace

int main() {
  criterion("headline verdicts for z^2 and z^2-2", 2, headline);
  criterion("julia geometry of z^2 and z^2-2", 5, julia_geometry);
  criterion("riemann-hurwitz count on 50 random maps", 10, riemann_hurwitz);
  criterion("sphere is never cartan on the corpus", 1, sphere_case);
  criterion("operator identity suite on z^2 and z^2-2 trees", 30, identity_suite);
  criterion("quasi-monomial and fiber-block norms", 10, norms);
  criterion("parser corpus round trip and malformed inputs", 1, parser_corpus);
  criterion("render golden 64x64 z^2", 2, render_golden);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
