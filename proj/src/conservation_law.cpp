#include "fipm/conservation_law.hpp"

#include <algorithm>

#include "fipm/euler.hpp"

namespace fipm {

State FluxModel::numerical_flux(const State& left, const State& right) const {
  const double a = std::max(max_wavespeed(left), max_wavespeed(right));
  return 0.5 * (flux(left) + flux(right)) - 0.5 * a * (right - left);
}

bool EulerFlux::admissible(const State& u) const { return is_admissible(ConservedState::from_state(u), gamma_); }

State EulerFlux::flux(const State& u) const {
  return physical_flux(ConservedState::from_state(u), gamma_).to_state();
}

double EulerFlux::max_wavespeed(const State& u) const {
  return fipm::max_wavespeed(ConservedState::from_state(u), gamma_);
}

State EulerFlux::numerical_flux(const State& left, const State& right) const {
  return fipm::numerical_flux(ConservedState::from_state(left), ConservedState::from_state(right), gamma_)
      .to_state();
}

}  // namespace fipm
