#include "saddlescape/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "saddlescape/errors.hpp"
#include "saddlescape/random.hpp"
#include "saddlescape/spectral.hpp"

namespace saddlescape {

namespace {

Box symmetric_box(Index dim, double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ConfigRejected("region half-width must be positive and finite");
  return Box{Vector::Constant(dim, -half_width), Vector::Constant(dim, half_width)};
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v))
    throw ConfigRejected("malformed number '" + std::string(token) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_spectrum(const std::vector<double>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, a[i]);
    s.append(buf, res.ptr);
  }
  return s;
}

}  // namespace

Objective quadratic_saddle(std::vector<double> spectrum, double half_width) {
  if (spectrum.empty()) throw ConfigRejected("quadratic_saddle needs a non-empty spectrum");
  for (double a : spectrum)
    if (!std::isfinite(a)) throw ConfigRejected("quadratic_saddle spectrum must be finite");

  const Index n = static_cast<Index>(spectrum.size());
  const Vector a = Eigen::Map<const Vector>(spectrum.data(), n);
  double lip = a.cwiseAbs().maxCoeff();

  Objective::Definition def;
  def.name = "quadratic_saddle:" + format_spectrum(spectrum);
  def.dim = n;
  def.value = [a](const Vector& x) { return 0.5 * x.dot(a.cwiseProduct(x)); };
  def.gradient = [a](const Vector& x) -> Vector { return a.cwiseProduct(x); };
  def.hessian = [a](const Vector&) -> Matrix { return a.asDiagonal(); };
  // The zero spectrum has no curvature to bound; any positive L is valid.
  def.lipschitz_bound = lip > 0.0 ? lip : 1.0;
  def.region = symmetric_box(n, half_width);
  def.closed_form_prox = [a](double gamma, const Vector& z) -> Vector {
    const Vector denom = Vector::Ones(a.size()) + gamma * a;
    if (denom.minCoeff() <= 0.0)
      throw ProxNonConvergence("prox sub-objective is not strongly convex at this stepsize");
    return z.cwiseQuotient(denom);
  };

  const double amin = a.minCoeff();
  CriticalPointClass cls = CriticalPointClass::Degenerate;
  if (amin < 0.0) {
    cls = CriticalPointClass::StrictSaddle;
  } else if (amin > 0.0) {
    cls = CriticalPointClass::LocalMinCandidate;
  }
  def.known_criticals.push_back({Vector::Zero(n), cls});
  def.coercive = amin > 0.0;

  if (amin < 0.0) {
    StableSlice slice;
    slice.saddle = Vector::Zero(n);
    slice.on_slice_start = Vector::Zero(n);
    slice.unstable_direction = Vector::Zero(n);
    for (Index i = 0; i < n; ++i)
      if (a[i] > 0.0) slice.on_slice_start[i] = 0.7 * half_width;
    Index most_negative = 0;
    a.minCoeff(&most_negative);
    slice.unstable_direction[most_negative] = 1.0;
    def.stable_slice = slice;
  }
  return Objective(std::move(def));
}

Objective double_well(double half_width) {
  Objective::Definition def;
  def.name = half_width == kDoubleWellHalfWidth ? "double_well" : "double_well:" + format_spectrum({half_width});
  def.dim = 2;
  def.value = [](const Vector& x) {
    const double y2 = x[1] * x[1];
    return 0.5 * x[0] * x[0] - 0.5 * y2 + 0.25 * y2 * y2;
  };
  def.gradient = [](const Vector& x) -> Vector {
    Vector g(2);
    g << x[0], x[1] * x[1] * x[1] - x[1];
    return g;
  };
  def.hessian = [](const Vector& x) -> Matrix {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 3.0 * x[1] * x[1] - 1.0;
    return h;
  };
  // |3y^2 - 1| over |y| <= h peaks at the box edge (or at y = 0 for small h).
  def.lipschitz_bound = std::max(1.0, 3.0 * half_width * half_width - 1.0);
  def.region = symmetric_box(2, half_width);
  def.known_criticals = {
      {Vector::Zero(2), CriticalPointClass::StrictSaddle},
      {(Vector(2) << 0.0, 1.0).finished(), CriticalPointClass::LocalMinCandidate},
      {(Vector(2) << 0.0, -1.0).finished(), CriticalPointClass::LocalMinCandidate},
  };
  def.coercive = true;
  // y = 0 is invariant (df/dy vanishes there) and the x-dynamics contract.
  def.stable_slice = StableSlice{Vector::Zero(2), (Vector(2) << 0.7, 0.0).finished(),
                                 (Vector(2) << 0.0, 1.0).finished()};
  return Objective(std::move(def));
}

Objective monkey_saddle(double half_width) {
  Objective::Definition def;
  def.name = half_width == 1.0 ? "monkey_saddle" : "monkey_saddle:" + format_spectrum({half_width});
  def.dim = 2;
  def.value = [](const Vector& x) { return x[0] * x[0] * x[0] - 3.0 * x[0] * x[1] * x[1]; };
  def.gradient = [](const Vector& x) -> Vector {
    Vector g(2);
    g << 3.0 * x[0] * x[0] - 3.0 * x[1] * x[1], -6.0 * x[0] * x[1];
    return g;
  };
  def.hessian = [](const Vector& x) -> Matrix {
    Matrix h(2, 2);
    h << 6.0 * x[0], -6.0 * x[1], -6.0 * x[1], -6.0 * x[0];
    return h;
  };
  // Eigenvalues are +-6|x|; the box corner maximizes |x|.
  def.lipschitz_bound = 6.0 * std::sqrt(2.0) * half_width;
  def.region = symmetric_box(2, half_width);
  def.known_criticals = {{Vector::Zero(2), CriticalPointClass::Degenerate}};
  def.coercive = false;
  return Objective(std::move(def));
}

Objective make_objective(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (name == "quadratic_saddle") {
    if (args.empty()) throw ConfigRejected("quadratic_saddle needs a spectrum, e.g. quadratic_saddle:1,-1");
    return quadratic_saddle(parse_list(args));
  }
  if (name == "double_well") {
    return args.empty() ? double_well() : double_well(parse_double(args));
  }
  if (name == "monkey_saddle") {
    return args.empty() ? monkey_saddle() : monkey_saddle(parse_double(args));
  }
  throw ConfigRejected("unknown objective '" + std::string(spec) + "'");
}

std::vector<std::string> default_corpus() {
  return {"quadratic_saddle:1,-1", "quadratic_saddle:3,-2", "quadratic_saddle:2,1,-0.5", "double_well",
          "double_well:2", "monkey_saddle"};
}

double check_gradient_fd(const Objective& obj, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("check_gradient_fd: step must be positive");
  const Vector g = obj.gradient(x);
  double worst = 0.0;
  Vector xp = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const double fp = obj.value(xp);
    xp[i] = x[i] - h;
    const double fm = obj.value(xp);
    xp[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(g[i] - fd) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

double check_hessian_fd(const Objective& obj, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("check_hessian_fd: step must be positive");
  const Matrix hess = obj.hessian(x);
  double worst = 0.0;
  Vector xp = x;
  for (Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    const Vector gp = obj.gradient(xp);
    xp[j] = x[j] - h;
    const Vector gm = obj.gradient(xp);
    xp[j] = x[j];
    const Vector col = (gp - gm) / (2.0 * h);
    for (Index i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(hess(i, j) - col[i]) / (1.0 + std::abs(hess(i, j))));
  }
  return worst;
}

double hessian_asymmetry(const Objective& obj, const Vector& x) {
  const Matrix h = obj.hessian(x);
  return (h - h.transpose()).cwiseAbs().maxCoeff();
}

double estimate_lipschitz(const Objective& obj, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_lipschitz: samples must be >= 1");
  const Box& box = obj.region();
  const Index n = obj.dim();

  double worst = symmetric_spectral_norm(obj.hessian(0.5 * (box.lo + box.hi)));
  if (n <= 10) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Vector corner(n);
      for (Index i = 0; i < n; ++i) corner[i] = (mask >> i) & 1U ? box.hi[i] : box.lo[i];
      worst = std::max(worst, symmetric_spectral_norm(obj.hessian(corner)));
    }
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) worst = std::max(worst, symmetric_spectral_norm(obj.hessian(rng.uniform_in(box))));

  if (worst > obj.lipschitz_bound() * (1.0 + 1e-9)) {
    throw CorpusInconsistency(obj.name() + ": sampled Hessian norm " + std::to_string(worst) +
                              " exceeds declared bound " + std::to_string(obj.lipschitz_bound()));
  }
  return worst;
}

CorpusCheck validate_objective(const Objective& obj, int points, std::uint64_t seed) {
  CorpusCheck check;
  check.name = obj.name();
  check.lipschitz_bound = obj.lipschitz_bound();
  Rng rng(seed);
  for (int p = 0; p < points; ++p) {
    const Vector x = rng.uniform_in(obj.region());
    check.max_gradient_error = std::max(check.max_gradient_error, check_gradient_fd(obj, x));
    check.max_hessian_error = std::max(check.max_hessian_error, check_hessian_fd(obj, x));
    check.max_asymmetry = std::max(check.max_asymmetry, hessian_asymmetry(obj, x));
  }
  for (const auto& c : obj.known_criticals())
    check.max_critical_grad_norm = std::max(check.max_critical_grad_norm, obj.gradient(c.point).norm());

  bool lipschitz_ok = true;
  try {
    check.lipschitz_estimate = estimate_lipschitz(obj, points, splitmix64(seed));
  } catch (const CorpusInconsistency&) {
    lipschitz_ok = false;
  }
  check.passed = lipschitz_ok && check.max_gradient_error <= 1e-5 && check.max_hessian_error <= 1e-4 &&
                 check.max_asymmetry <= 1e-12 && check.max_critical_grad_norm <= 1e-10;
  return check;
}

}  // namespace saddlescape
