#include "paraopt/schemes.hpp"

#include <stdexcept>

namespace paraopt {

namespace {

IntegratorSpec from_tableau(ButcherTableau tab) {
  IntegratorSpec s;
  s.name = tab.name;
  s.order = tab.order;
  s.stability = stability_from_tableau(tab);
  s.tableau = std::move(tab);
  return s;
}

}  // namespace

IntegratorSpec theta_scheme(double theta) {
  if (!(theta > 0.5 && theta <= 1.0))
    throw std::invalid_argument("theta scheme requires theta in (1/2, 1]");
  IntegratorSpec s;
  s.name = "theta:" + std::to_string(theta);
  s.order = 1;
  s.stability = RationalFn({1.0, theta - 1.0}, {1.0, theta});
  s.theta = theta;
  return s;
}

IntegratorSpec classical_stability(const std::string& name) {
  if (name == "be") {
    IntegratorSpec s = from_tableau(tableau_backward_euler());
    s.stability = RationalFn({1.0}, {1.0, 1.0});
    return s;
  }
  if (name == "sdirk22") return from_tableau(tableau_sdirk22());
  if (name == "lobatto2") return from_tableau(tableau_lobatto_iiic(2));
  if (name == "lobatto3") return from_tableau(tableau_lobatto_iiic(3));
  if (name == "lobatto4") return from_tableau(tableau_lobatto_iiic(4));
  if (name == "radau3") return from_tableau(tableau_radau_iia3());
  if (name.rfind("theta:", 0) == 0) {
    double th = std::stod(name.substr(6));
    return theta_scheme(th);
  }
  throw std::invalid_argument("unknown scheme name: " + name);
}

}  // namespace paraopt
