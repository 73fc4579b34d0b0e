#include "cartan/report.hpp"

#include "cartan/parse.hpp"

namespace cartan {

Json to_json(Complex c) {
  // + 0.0 turns a negative zero into a positive one
  return Json::array({c.real() + 0.0, c.imag() + 0.0});
}

Json to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return to_json(p.to_complex());
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const Complex& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const CycleDatum& c) {
  Json points = Json::array();
  for (const SpherePoint& p : c.points) points.push_back(to_json(p));
  return Json{{"period", c.period},
              {"points", points},
              {"multiplier", to_json(c.multiplier)},
              {"character", to_string(c.character)}};
}

Json to_json(const MembershipVerdict& m) {
  Json cert{{"kind", to_string(m.certificate.kind)}, {"steps", m.certificate.steps}};
  cert["cycle"] = m.certificate.cycle ? to_json(*m.certificate.cycle) : Json(nullptr);
  return Json{{"verdict", to_string(m.verdict)}, {"certificate", cert}, {"note", m.note}};
}

Json to_json(const CriticalDatum& c) {
  Json orbit = Json::array();
  for (const SpherePoint& p : c.orbit) orbit.push_back(to_json(p));
  Json out{{"point", to_json(c.point)}, {"e", c.branch_index}};
  const Json m = to_json(c.membership);
  out["verdict"] = m["verdict"];
  out["certificate"] = m["certificate"];
  out["note"] = m["note"];
  out["orbit"] = orbit;
  return out;
}

Json to_json(const BranchObstruction& b) {
  Json pre = Json::array();
  for (const SpherePoint& p : b.local_preimages) pre.push_back(to_json(p));
  Json out{{"critical_point", to_json(b.critical)},
           {"e", b.branch_index},
           {"target", to_json(b.target)},
           {"local_preimages", pre},
           {"quasi_monomial", b.quasi_monomial}};
  if (const auto* w = std::get_if<NormalizerWitness>(&b.normalizer)) {
    out["normalizer"] = Json{
        {"result", "Witness"},
        {"side", w->side == NormalizerWitness::Side::AdjointFirst ? "adjoint-first" : "adjoint-last"},
        {"indicator_of", w->u},
        {"off_diagonal_entry", Json::array({w->v, w->w})},
        {"value", to_json(w->conjugate.at(w->v, w->w))}};
  } else {
    out["normalizer"] = Json{{"result", "ConjugationStaysDiagonal"}};
  }
  return out;
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const SuiteCheck& c : r.checks)
    checks.push_back(
        Json{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"detail", c.detail}});
  return Json{{"all_passed", r.all_passed()}, {"checks", checks}};
}

Json to_json(const OrbitTree& tree) {
  Json nodes = Json::array();
  Json edges = Json::array();
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    nodes.push_back(Json{{"id", id}, {"point", to_json(n.point)}, {"height", n.height}});
    if (n.image != kNoNode) edges.push_back(Json::array({id, n.image}));
  }
  return Json{{"map", format_map(tree.map())},
              {"base", tree.base()},
              {"forward_depth", tree.forward_depth()},
              {"backward_depth", tree.backward_depth()},
              {"nodes", nodes},
              {"edges", edges}};
}

Json report_json(const CartanReport& report, const Budget& budget, std::uint64_t seed) {
  Json witnesses = Json::array();
  for (const CriticalDatum& c : report.witnesses) witnesses.push_back(to_json(c));

  Json diagnostics;
  diagnostics["degree"] = report.map.degree();
  diagnostics["numerator"] = to_json(report.map.numerator());
  diagnostics["denominator"] = to_json(report.map.denominator());
  diagnostics["space_nonempty"] = to_string(report.space_nonempty);
  diagnostics["notes"] = report.notes;
  Json critical = Json::array();
  for (const CriticalDatum& c : report.critical) critical.push_back(to_json(c));
  diagnostics["critical_points"] = critical;
  Json cycles = Json::array();
  for (const CycleDatum& c : report.catalog.cycles) cycles.push_back(to_json(c));
  diagnostics["cycles"] = cycles;
  diagnostics["max_period"] = report.catalog.max_period;
  if (report.map.is_polynomial()) diagnostics["escape_radius"] = escape_radius(report.map);
  diagnostics["budget"] = Json{{"max_iterations", budget.max_iterations},
                               {"convergence_tol", budget.convergence_tol},
                               {"snap_tol", budget.snap_tol}};
  if (report.verdict == CartanVerdict::NotCartan && !report.witnesses.empty())
    diagnostics["branch_obstruction"] = to_json(branch_obstruction(report.map, report.witnesses.front()));

  return Json{{"map", format_map(report.map)},
              {"space", to_string(report.space)},
              {"verdict", to_string(report.verdict)},
              {"witnesses", witnesses},
              {"diagnostics", diagnostics},
              {"version", kVersion},
              {"seed", seed}};
}

}  // namespace cartan
