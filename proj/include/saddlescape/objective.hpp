#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace saddlescape {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class CriticalPointClass { LocalMinCandidate, StrictSaddle, Degenerate, NotCritical };

std::string_view to_string(CriticalPointClass c);

/// Axis-aligned box [lo, hi] in R^N.
struct Box {
  Vector lo;
  Vector hi;

  bool contains(const Vector& x) const;
  Index dim() const { return lo.size(); }
};

struct KnownCritical {
  Vector point;
  CriticalPointClass expected;
};

/// A strict saddle whose stable subspace is known in closed form.
/// `on_slice_start` lies in the stable subspace, `unstable_direction` is a
/// unit vector spanning (part of) the unstable one.
struct StableSlice {
  Vector saddle;
  Vector on_slice_start;
  Vector unstable_direction;
};

/// A C^2 test function together with the data needed to certify it: the
/// box on which its Hessian norm is bounded by `lipschitz_bound`, and its
/// analytically known critical points.
///
/// Evaluators are pure and the object is immutable after construction, so a
/// single instance can be shared by concurrent trials.
class Objective {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;
  /// Exact Prox_{gamma f}(z); only provided where a closed form exists.
  using ProxFn = std::function<Vector(double gamma, const Vector& z)>;

  struct Definition {
    std::string name;
    Index dim = 0;
    ValueFn value;
    GradientFn gradient;
    HessianFn hessian;
    double lipschitz_bound = 0.0;
    Box region;
    std::vector<KnownCritical> known_criticals;
    bool coercive = false;
    ProxFn closed_form_prox;
    std::optional<StableSlice> stable_slice;
  };

  explicit Objective(Definition def);

  const std::string& name() const { return def_.name; }
  Index dim() const { return def_.dim; }
  double lipschitz_bound() const { return def_.lipschitz_bound; }
  const Box& region() const { return def_.region; }
  const std::vector<KnownCritical>& known_criticals() const { return def_.known_criticals; }
  bool coercive() const { return def_.coercive; }
  const std::optional<StableSlice>& stable_slice() const { return def_.stable_slice; }
  bool has_closed_form_prox() const { return static_cast<bool>(def_.closed_form_prox); }

  // Each evaluator throws std::invalid_argument on a dimension mismatch and
  // NumericalFailure on a non-finite result.
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
  Vector closed_form_prox(double gamma, const Vector& z) const;

  /// Copy with the gradient replaced; used to build corrupted fixtures.
  Objective with_gradient(GradientFn gradient) const;

 private:
  void check_dim(const Vector& x, const char* what) const;

  Definition def_;
};

}  // namespace saddlescape
