#pragma once

#include <string>
#include <vector>

#include "cartan/dynamics.hpp"

namespace cartan {

enum class Space { Julia, Fatou, Sphere };
enum class CartanVerdict { Cartan, NotCartan, Undetermined };
enum class Nonempty { Yes, Unverified };

const char* to_string(Space s);
const char* to_string(CartanVerdict v);
const char* to_string(Nonempty n);

/// Outcome of deciding whether C_0(X) is a Cartan subalgebra of the
/// Cuntz-Pimsner algebra of R on X, which holds exactly when X contains no
/// critical point of R.
struct CartanReport {
  RationalMap map;
  Space space = Space::Julia;
  CartanVerdict verdict = CartanVerdict::Undetermined;
  /// NotCartan: the critical points shown to lie in X. Otherwise: every
  /// critical point with its membership verdict.
  std::vector<CriticalDatum> witnesses;
  Nonempty space_nonempty = Nonempty::Unverified;
  /// Every critical point, classified (empty for the sphere).
  std::vector<CriticalDatum> critical;
  /// Cycles found while classifying.
  CycleCatalog catalog;
  std::string notes;
};

/// Throws DegreeTooLow for degree < 2. The sphere is decided from the
/// critical points alone; Julia and Fatou sets classify every critical
/// point within the budget and report Undetermined rather than guess.
CartanReport decide_cartan(const RationalMap& map, Space space, const Budget& budget = {});

}  // namespace cartan
