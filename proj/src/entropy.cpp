#include "fipm/entropy.hpp"

#include <cmath>

namespace fipm {

namespace {

// exp() of anything above this overflows or leaves too little headroom for the moment sums.
constexpr double kMaxExponent = 700.0;

}  // namespace

State EntropyModel::ansatz(const State& v) const {
  DualPointEvaluation eval;
  if (!evaluate_dual(v, eval, false)) throw DomainError("ansatz: entropy variables outside the dual domain");
  return eval.state;
}

double EntropyModel::dual_potential(const State& v) const {
  DualPointEvaluation eval;
  if (!evaluate_dual(v, eval, false)) throw DomainError("dual_potential: entropy variables outside the dual domain");
  return eval.potential;
}

StateJacobian EntropyModel::ansatz_jacobian(const State& v) const {
  DualPointEvaluation eval;
  if (!evaluate_dual(v, eval, true)) throw DomainError("ansatz_jacobian: entropy variables outside the dual domain");
  return eval.jacobian;
}

// ---------------------------------------------------------------------------

bool LogEntropy::admissible(const State& u) const { return u.size() == 1 && u[0] > 0.0 && std::isfinite(u[0]); }

double LogEntropy::entropy(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("LogEntropy: u must be positive");
  return u[0] * std::log(u[0]);
}

State LogEntropy::entropy_variables(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("LogEntropy: u must be positive");
  State v(1);
  v[0] = std::log(u[0]) + 1.0;
  return v;
}

bool LogEntropy::evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const {
  const double arg = v[0] - 1.0;
  if (!(arg < kMaxExponent)) return false;
  const double e = std::exp(arg);
  out.potential = e;
  out.state.resize(1);
  out.state[0] = e;
  if (with_jacobian) {
    out.jacobian.resize(1, 1);
    out.jacobian(0, 0) = e;
  }
  return e > 0.0;
}

State LogEntropy::fallback_state() const { return State::Ones(1); }

// ---------------------------------------------------------------------------

BoundedEntropy::BoundedEntropy(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!(upper > lower)) throw DomainError("BoundedEntropy: need lower < upper");
}

bool BoundedEntropy::admissible(const State& u) const {
  return u.size() == 1 && u[0] > lower_ && u[0] < upper_;
}

double BoundedEntropy::entropy(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("BoundedEntropy: u outside (lower, upper)");
  const double a = u[0] - lower_;
  const double b = upper_ - u[0];
  return a * std::log(a) + b * std::log(b);
}

State BoundedEntropy::entropy_variables(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("BoundedEntropy: u outside (lower, upper)");
  State v(1);
  v[0] = std::log(u[0] - lower_) - std::log(upper_ - u[0]);
  return v;
}

bool BoundedEntropy::evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const {
  const double x = v[0];
  if (!std::isfinite(x)) return false;
  const double width = upper_ - lower_;
  // Logistic function and softplus, both evaluated without overflow.
  const double ex = std::exp(-std::abs(x));
  const double sigma = x >= 0.0 ? 1.0 / (1.0 + ex) : ex / (1.0 + ex);
  const double softplus = std::max(x, 0.0) + std::log1p(ex);
  const double curvature = ex / ((1.0 + ex) * (1.0 + ex));
  const double u = lower_ + width * sigma;
  if (!(u > lower_ && u < upper_) || curvature <= 0.0) return false;
  out.potential = width * softplus + lower_ * x;
  out.state.resize(1);
  out.state[0] = u;
  if (with_jacobian) {
    out.jacobian.resize(1, 1);
    out.jacobian(0, 0) = width * curvature;
  }
  return true;
}

State BoundedEntropy::fallback_state() const { return State::Constant(1, 0.5 * (lower_ + upper_)); }

// ---------------------------------------------------------------------------

EulerEntropy::EulerEntropy(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) throw DomainError("EulerEntropy: gamma must exceed 1");
}

bool EulerEntropy::admissible(const State& u) const {
  if (u.size() != 3 || !u.allFinite()) return false;
  const double rho = u[0];
  if (!(rho > 0.0)) return false;
  return u[2] - 0.5 * u[1] * u[1] / rho > 0.0;
}

double EulerEntropy::entropy(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("EulerEntropy: state outside rho > 0, p > 0");
  const double rho = u[0];
  const double internal = u[2] - 0.5 * u[1] * u[1] / rho;
  return -rho * (std::log(internal) - gamma_ * std::log(rho));
}

State EulerEntropy::entropy_variables(const State& u) const {
  if (!admissible(u)) throw InadmissibleStateError("EulerEntropy: state outside rho > 0, p > 0");
  const double rho = u[0];
  const double m = u[1];
  const double internal = u[2] - 0.5 * m * m / rho;
  State v(3);
  v[0] = gamma_ + gamma_ * std::log(rho) - std::log(internal) - 0.5 * m * m / (rho * internal);
  v[1] = m / internal;
  v[2] = -rho / internal;
  return v;
}

bool EulerEntropy::evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const {
  const double v0 = v[0];
  const double v1 = v[1];
  const double v2 = v[2];
  if (!(v2 < 0.0) || !std::isfinite(v0) || !std::isfinite(v1)) return false;
  const double gm1 = gamma_ - 1.0;
  const double exponent = (v0 - gamma_ - 0.5 * v1 * v1 / v2 - std::log(-v2)) / gm1;
  if (!(std::abs(exponent) < kMaxExponent)) return false;
  const double rho = std::exp(exponent);
  const double velocity = -v1 / v2;
  const double h = -1.0 / v2 + 0.5 * v1 * v1 / (v2 * v2);  // E / rho
  out.potential = gm1 * rho;
  out.state.resize(3);
  out.state[0] = rho;
  out.state[1] = rho * velocity;
  out.state[2] = rho * h;
  if (!out.state.allFinite()) return false;
  if (with_jacobian) {
    const double inv_v2 = 1.0 / v2;
    // d exponent / dv
    const double dq0 = 1.0 / gm1;
    const double dq1 = -v1 * inv_v2 / gm1;
    const double dq2 = (0.5 * v1 * v1 * inv_v2 * inv_v2 - inv_v2) / gm1;
    const double drho[3] = {rho * dq0, rho * dq1, rho * dq2};
    const double dvel[3] = {0.0, -inv_v2, v1 * inv_v2 * inv_v2};
    const double dh[3] = {0.0, v1 * inv_v2 * inv_v2, inv_v2 * inv_v2 - v1 * v1 * inv_v2 * inv_v2 * inv_v2};
    out.jacobian.resize(3, 3);
    for (int c = 0; c < 3; ++c) {
      out.jacobian(0, c) = drho[c];
      out.jacobian(1, c) = velocity * drho[c] + rho * dvel[c];
      out.jacobian(2, c) = h * drho[c] + rho * dh[c];
    }
    // Symmetric in exact arithmetic; remove rounding asymmetry.
    out.jacobian = 0.5 * (out.jacobian + out.jacobian.transpose()).eval();
  }
  return true;
}

State EulerEntropy::fallback_state() const {
  State u(3);
  u << 1.0, 0.0, 1.0 / (gamma_ - 1.0);
  return u;
}

}  // namespace fipm
