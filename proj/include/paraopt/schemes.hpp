#ifndef PARAOPT_SCHEMES_HPP
#define PARAOPT_SCHEMES_HPP

#include <optional>
#include <string>

#include "paraopt/rational.hpp"
#include "paraopt/tableau.hpp"

namespace paraopt {

/// A named single-step integrator: consistency order and stability function
/// in the exp(-lambda) convention. Tableau present for the RK schemes.
struct IntegratorSpec {
  std::string name;
  int order = 0;
  RationalFn stability;
  std::optional<ButcherTableau> tableau;
  double theta = 0.0;  // set for the theta scheme only
};

/// Recognized names: be, sdirk22, lobatto2, lobatto3, lobatto4, radau3,
/// theta:<value>. Throws std::invalid_argument for anything else.
IntegratorSpec classical_stability(const std::string& name);

IntegratorSpec theta_scheme(double theta);

}  // namespace paraopt

#endif
