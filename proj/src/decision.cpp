#include "cartan/decision.hpp"

#include "cartan/error.hpp"

namespace cartan {

const char* to_string(Space s) {
  switch (s) {
    case Space::Julia: return "julia";
    case Space::Fatou: return "fatou";
    case Space::Sphere: return "sphere";
  }
  return "?";
}

const char* to_string(CartanVerdict v) {
  switch (v) {
    case CartanVerdict::Cartan: return "Cartan";
    case CartanVerdict::NotCartan: return "NotCartan";
    case CartanVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

const char* to_string(Nonempty n) {
  switch (n) {
    case Nonempty::Yes: return "Yes";
    case Nonempty::Unverified: return "Unverified";
  }
  return "?";
}

CartanReport decide_cartan(const RationalMap& map, Space space, const Budget& budget) {
  if (map.degree() < 2) throw DegreeTooLow("the decision needs degree at least 2");
  CartanReport report{map, space, CartanVerdict::Undetermined, {}, Nonempty::Unverified, {}, {}, {}};

  if (space == Space::Sphere) {
    report.witnesses = critical_points(map);
    report.verdict = CartanVerdict::NotCartan;
    report.space_nonempty = Nonempty::Yes;
    report.notes = "the sphere contains every critical point";
    return report;
  }

  report.catalog = cycle_catalog(map, budget);
  report.critical = critical_points(map);
  for (CriticalDatum& c : report.critical)
    c.membership = classify_point(map, report.catalog, c.point, budget, &c.orbit);

  const Verdict inside = space == Space::Julia ? Verdict::InJulia : Verdict::InFatou;
  int undetermined = 0;
  for (const CriticalDatum& c : report.critical) {
    if (c.membership.verdict == inside) report.witnesses.push_back(c);
    if (c.membership.verdict == Verdict::Undetermined) ++undetermined;
  }

  if (!report.witnesses.empty()) {
    report.verdict = CartanVerdict::NotCartan;
    report.notes = "a critical point lies in the space";
  } else if (undetermined == 0) {
    report.verdict = CartanVerdict::Cartan;
    report.witnesses = report.critical;
    report.notes = "every critical point lies outside the space";
  } else {
    report.verdict = CartanVerdict::Undetermined;
    report.witnesses = report.critical;
    report.notes = std::to_string(undetermined) + " critical point(s) could not be classified";
  }

  if (space == Space::Julia) {
    report.space_nonempty = Nonempty::Yes;
  } else {
    for (const CycleDatum& c : report.catalog.cycles)
      if (c.character == CycleCharacter::Attracting ||
          c.character == CycleCharacter::Superattracting)
        report.space_nonempty = Nonempty::Yes;
    if (report.verdict == CartanVerdict::NotCartan) report.space_nonempty = Nonempty::Yes;
  }
  return report;
}

}  // namespace cartan
