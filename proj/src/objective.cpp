#include "saddlescape/objective.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "saddlescape/errors.hpp"

namespace saddlescape {

std::string_view to_string(CriticalPointClass c) {
  switch (c) {
    case CriticalPointClass::LocalMinCandidate:
      return "LocalMinCandidate";
    case CriticalPointClass::StrictSaddle:
      return "StrictSaddle";
    case CriticalPointClass::Degenerate:
      return "Degenerate";
    case CriticalPointClass::NotCritical:
      return "NotCritical";
  }
  return "NotCritical";
}

bool Box::contains(const Vector& x) const {
  if (x.size() != lo.size()) return false;
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

Objective::Objective(Definition def) : def_(std::move(def)) {
  if (def_.dim <= 0) throw std::invalid_argument("objective dimension must be positive");
  if (!(def_.lipschitz_bound > 0.0)) throw std::invalid_argument("lipschitz bound must be positive");
  if (def_.region.lo.size() != def_.dim || def_.region.hi.size() != def_.dim)
    throw std::invalid_argument("region dimension does not match objective");
  if (!def_.value || !def_.gradient || !def_.hessian)
    throw std::invalid_argument("objective evaluators must all be set");
}

void Objective::check_dim(const Vector& x, const char* what) const {
  if (x.size() != def_.dim) {
    std::ostringstream msg;
    msg << def_.name << ": " << what << " expects dimension " << def_.dim << ", got " << x.size();
    throw std::invalid_argument(msg.str());
  }
}

double Objective::value(const Vector& x) const {
  check_dim(x, "value");
  const double v = def_.value(x);
  if (!std::isfinite(v)) throw NumericalFailure(def_.name + ": non-finite value");
  return v;
}

Vector Objective::gradient(const Vector& x) const {
  check_dim(x, "gradient");
  Vector g = def_.gradient(x);
  if (!g.allFinite()) throw NumericalFailure(def_.name + ": non-finite gradient");
  return g;
}

Matrix Objective::hessian(const Vector& x) const {
  check_dim(x, "hessian");
  Matrix h = def_.hessian(x);
  if (!h.allFinite()) throw NumericalFailure(def_.name + ": non-finite hessian");
  return h;
}

Vector Objective::closed_form_prox(double gamma, const Vector& z) const {
  check_dim(z, "prox");
  if (!def_.closed_form_prox) throw std::logic_error(def_.name + " has no closed-form prox");
  return def_.closed_form_prox(gamma, z);
}

Objective Objective::with_gradient(GradientFn gradient) const {
  Definition def = def_;
  def.gradient = std::move(gradient);
  def.closed_form_prox = nullptr;
  return Objective(std::move(def));
}

}  // namespace saddlescape
