#include "boundscan/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <set>

#include "boundscan/expression.hpp"
#include "boundscan/low_discrepancy.hpp"

namespace boundscan {

namespace {

constexpr double kPi = std::numbers::pi;

using Point2 = std::array<double, 2>;

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * s;
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b, double tol) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy) <= tol;
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) {
  const double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return on_segment(p1, q1, q2, 0.0) || on_segment(p2, q1, q2, 0.0) ||
         on_segment(q1, p1, p2, 0.0) || on_segment(q2, p1, p2, 0.0);
}

// Closed polygon membership; edges count as inside.
bool point_in_polygon(const std::vector<Point2>& v, const Point2& p) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (on_segment(p, v[j], v[i], 1e-12)) return true;
    if ((v[i][1] > p[1]) != (v[j][1] > p[1])) {
      const double x = v[j][0] + (p[1] - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
      if (p[0] < x) inside = !inside;
    }
  }
  return inside;
}

void require_simple(const std::vector<Point2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw std::invalid_argument("polygon: edges " + std::to_string(i) + " and " +
                                    std::to_string(j) + " intersect");
    }
  }
}

// Ear clipping on a counter-clockwise simple polygon.
std::vector<std::array<Point2, 3>> triangulate(std::vector<Point2> v) {
  std::vector<std::array<Point2, 3>> out;
  while (v.size() > 3) {
    const std::size_t n = v.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = v[(i + n - 1) % n];
      const Point2& b = v[i];
      const Point2& c = v[(i + 1) % n];
      if (cross(a, b, c) <= 0) continue;
      bool contains = false;
      for (std::size_t j = 0; j < n && !contains; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const Point2& p = v[j];
        contains = cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
      }
      if (contains) continue;
      out.push_back({a, b, c});
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) {
      // Only collinear vertices remain: drop a degenerate one.
      for (std::size_t i = 0; i < n; ++i) {
        if (cross(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0.0) {
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
          clipped = true;
          break;
        }
      }
      if (!clipped) throw std::invalid_argument("polygon: triangulation failed");
    }
  }
  if (cross(v[0], v[1], v[2]) > 0) out.push_back({v[0], v[1], v[2]});
  return out;
}

std::vector<Vec> circle_points(double radius, std::size_t n) {
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    out.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return out;
}

ComponentBounds box_bounds(Vec lower, Vec upper) {
  ComponentBounds b;
  b.lower = std::move(lower);
  b.upper = std::move(upper);
  b.source = ComponentBounds::Source::kAnalytic;
  return b;
}

bool any_point(std::span<const double>) { return true; }

}  // namespace

Problem::Problem(Spec spec) : spec_(std::move(spec)) {
  if (spec_.dim_control == 0 || spec_.dim_image == 0)
    throw std::invalid_argument("problem '" + spec_.name + "': dimensions must be positive");
  if (!spec_.objective || !spec_.feasible || !spec_.unit_map)
    throw std::invalid_argument("problem '" + spec_.name + "': missing callable");
  if (spec_.control_scale.empty()) spec_.control_scale.assign(spec_.dim_control, 1.0);
  if (spec_.control_scale.size() != spec_.dim_control)
    throw DimensionError("problem '" + spec_.name + "': control_scale has wrong length");
  if (!(spec_.recommended_eta > 0.0 && spec_.recommended_eta <= 1.0) || !(spec_.recommended_r > 0.0))
    throw std::invalid_argument("problem '" + spec_.name + "': bad recommended cone");
  if (spec_.analytic_bounds) {
    spec_.analytic_bounds->validate();
    if (spec_.analytic_bounds->dim() != spec_.dim_image)
      throw DimensionError("problem '" + spec_.name + "': bounds have wrong dimension");
  }
}

Vec Problem::evaluate(std::span<const double> x) const {
  if (x.size() != spec_.dim_control)
    throw DimensionError("problem '" + spec_.name + "': control has dimension " +
                         std::to_string(x.size()) + ", expected " +
                         std::to_string(spec_.dim_control));
  Vec f(spec_.dim_image);
  spec_.objective(x, f);
  return f;
}

std::vector<Vec> Problem::sample(std::size_t count, std::uint64_t seed) const {
  HaltonSequence seq(spec_.dim_control, seed);
  std::vector<Vec> out(count, Vec(spec_.dim_control));
  Vec u(spec_.dim_control);
  for (std::size_t i = 0; i < count; ++i) {
    seq.point(i, u);
    spec_.unit_map(u, out[i]);
  }
  return out;
}

std::vector<Vec> Problem::analytic_boundary(std::size_t n) const {
  if (!spec_.boundary)
    throw std::logic_error("problem '" + spec_.name + "' has no analytic boundary");
  return spec_.boundary(n);
}

Problem paper_2d() {
  Problem::Spec s;
  s.name = "paper_2d";
  s.description = "f1 = sqrt(x1^2+2x2^2), f2 = cos(2x1+x2^2) - exp(-x2^2) + sin(3x1x2)/3 on the unit simplex";
  s.dim_control = 2;
  s.dim_image = 2;
  s.objective = [](std::span<const double> x, std::span<double> f) {
    const double x1 = x[0], x2 = x[1];
    const double x2sq = x2 * x2;
    f[0] = std::sqrt(x1 * x1 + 2.0 * x2sq);
    f[1] = std::cos(2.0 * x1 + x2sq) - std::exp(-x2sq) + std::sin(3.0 * x1 * x2) / 3.0;
  };
  s.feasible = [](std::span<const double> x) {
    return x[0] >= 0.0 && x[1] >= 0.0 && x[0] + x[1] <= 1.0;
  };
  // Fold the unit square onto the lower-left triangle.
  s.unit_map = [](std::span<const double> u, std::span<double> x) {
    double a = u[0], b = u[1];
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    x[0] = a;
    x[1] = b;
  };
  s.control_scale = {1.0, 1.0};
  s.recommended_eta = 1.0 - std::cos(kPi / 8.0);
  s.recommended_r = kInf;
  s.analytic_bounds = box_bounds({0.0, -7.0 / 3.0}, {std::sqrt(2.0), 4.0 / 3.0});
  return Problem(std::move(s));
}

Problem disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("disk: radius must be positive and finite");
  Problem::Spec s;
  s.name = "disk";
  s.description = "closed disk of radius " + std::to_string(radius) + " centred at the origin";
  s.dim_control = 2;
  s.dim_image = 2;
  s.objective = [radius](std::span<const double> x, std::span<double> f) {
    const double rho = radius * 0.5 * (1.0 - std::cos(x[0]));
    f[0] = rho * std::cos(x[1]);
    f[1] = rho * std::sin(x[1]);
  };
  s.feasible = any_point;
  s.unit_map = [](std::span<const double> u, std::span<double> x) {
    x[0] = kPi * u[0];
    x[1] = 2.0 * kPi * u[1];
  };
  s.control_scale = {kPi, 2.0 * kPi};
  s.recommended_eta = 1.0;
  s.recommended_r = kInf;
  s.analytic_bounds = box_bounds({-radius, -radius}, {radius, radius});
  s.boundary = [radius](std::size_t n) { return circle_points(radius, n); };
  return Problem(std::move(s));
}

Problem annulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out))
    throw std::invalid_argument("annulus: need 0 < r_in < r_out < inf");
  const double centre = 0.5 * (r_in + r_out);
  const double half = 0.5 * (r_out - r_in);
  Problem::Spec s;
  s.name = "annulus";
  s.description = "annulus " + std::to_string(r_in) + " <= |f| <= " + std::to_string(r_out);
  s.dim_control = 2;
  s.dim_image = 2;
  s.objective = [centre, half](std::span<const double> x, std::span<double> f) {
    const double rho = centre - half * std::cos(x[0]);
    f[0] = rho * std::cos(x[1]);
    f[1] = rho * std::sin(x[1]);
  };
  s.feasible = any_point;
  s.unit_map = [](std::span<const double> u, std::span<double> x) {
    x[0] = kPi * u[0];
    x[1] = 2.0 * kPi * u[1];
  };
  s.control_scale = {kPi, 2.0 * kPi};
  s.recommended_eta = 0.3;
  s.recommended_r = 0.6;
  s.analytic_bounds = box_bounds({-r_out, -r_out}, {r_out, r_out});
  s.boundary = [r_in, r_out](std::size_t n) {
    // Split points in proportion to circumference.
    const std::size_t n_in = std::max<std::size_t>(1, n * r_in / (r_in + r_out));
    std::vector<Vec> out = circle_points(r_in, n_in);
    std::vector<Vec> outer = circle_points(r_out, std::max<std::size_t>(1, n - n_in));
    out.insert(out.end(), outer.begin(), outer.end());
    return out;
  };
  return Problem(std::move(s));
}

double bean_radius(double t) { return 1.0 + 0.2 * std::cos(2.0 * t) + 0.15 * std::sin(t); }

Problem bean() {
  Problem::Spec s;
  s.name = "bean";
  s.description = "star-shaped bean R(t) = 1 + 0.2 cos 2t + 0.15 sin t, inlet at t = -pi/2";
  s.dim_control = 2;
  s.dim_image = 2;
  s.objective = [](std::span<const double> x, std::span<double> f) {
    const double rho = bean_radius(x[1]) * 0.5 * (1.0 - std::cos(x[0]));
    f[0] = rho * std::cos(x[1]);
    f[1] = rho * std::sin(x[1]);
  };
  s.feasible = any_point;
  s.unit_map = [](std::span<const double> u, std::span<double> x) {
    x[0] = kPi * u[0];
    x[1] = 2.0 * kPi * u[1];
  };
  s.control_scale = {kPi, 2.0 * kPi};
  s.recommended_eta = 0.5;
  s.recommended_r = kInf;
  s.boundary = [](std::size_t n) {
    std::vector<Vec> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
      const double r = bean_radius(t);
      out.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return out;
  };
  return Problem(std::move(s));
}

Problem polygon(std::vector<std::array<double, 2>> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
  for (const auto& p : vertices)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw std::invalid_argument("polygon: non-finite vertex");
  const double area = signed_area(vertices);
  if (std::abs(area) <= 0.0) throw std::invalid_argument("polygon: zero area");
  if (area < 0) std::reverse(vertices.begin(), vertices.end());
  require_simple(vertices);

  auto tris = triangulate(vertices);
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& t : tris) {
    total += 0.5 * cross(t[0], t[1], t[2]);
    cumulative.push_back(total);
  }
  for (double& c : cumulative) c /= total;
  cumulative.back() = 1.0;

  double lo_x = kInf, lo_y = kInf, hi_x = -kInf, hi_y = -kInf;
  for (const auto& p : vertices) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }

  auto shape = std::make_shared<const std::vector<Point2>>(vertices);
  auto triangles = std::make_shared<const std::vector<std::array<Point2, 3>>>(std::move(tris));
  auto weights = std::make_shared<const std::vector<double>>(std::move(cumulative));

  Problem::Spec s;
  s.name = "polygon";
  s.description = "identity map on a simple polygon with " + std::to_string(vertices.size()) + " vertices";
  s.dim_control = 2;
  s.dim_image = 2;
  s.objective = [](std::span<const double> x, std::span<double> f) {
    f[0] = x[0];
    f[1] = x[1];
  };
  s.feasible = [shape](std::span<const double> x) {
    return point_in_polygon(*shape, {x[0], x[1]});
  };
  // u[0] picks a triangle by area and, rescaled, doubles as the first
  // barycentric coordinate.
  s.unit_map = [triangles, weights](std::span<const double> u, std::span<double> x) {
    const auto& w = *weights;
    const std::size_t k = static_cast<std::size_t>(
        std::upper_bound(w.begin(), w.end() - 1, u[0]) - w.begin());
    const double start = k == 0 ? 0.0 : w[k - 1];
    double a = std::clamp((u[0] - start) / (w[k] - start), 0.0, 1.0);
    double b = u[1];
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const auto& t = (*triangles)[k];
    for (int j = 0; j < 2; ++j) x[j] = t[0][j] + a * (t[1][j] - t[0][j]) + b * (t[2][j] - t[0][j]);
  };
  s.control_scale = {hi_x - lo_x, hi_y - lo_y};
  s.recommended_eta = 0.5;
  s.recommended_r = 0.3 * std::hypot(hi_x - lo_x, hi_y - lo_y);
  s.analytic_bounds = box_bounds({lo_x, lo_y}, {hi_x, hi_y});
  s.boundary = [shape](std::size_t n) {
    const auto& v = *shape;
    double perimeter = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % v.size()];
      perimeter += std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    std::vector<Vec> out;
    out.reserve(n);
    std::size_t edge = 0;
    double edge_start = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s_arc = perimeter * static_cast<double>(i) / static_cast<double>(n);
      for (;;) {
        const auto& p = v[edge];
        const auto& q = v[(edge + 1) % v.size()];
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        if (s_arc <= edge_start + len || edge + 1 == v.size()) {
          const double t = len > 0 ? std::clamp((s_arc - edge_start) / len, 0.0, 1.0) : 0.0;
          out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
          break;
        }
        edge_start += len;
        ++edge;
      }
    }
    return out;
  };
  return Problem(std::move(s));
}

Problem expression_problem(std::string name, const std::vector<std::string>& objectives, Vec lower,
                           Vec upper) {
  if (objectives.empty()) throw ConfigError("expression problem: no objectives");
  if (lower.empty() || lower.size() != upper.size())
    throw ConfigError("expression problem: lower/upper must be nonempty and of equal length");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i])
      throw ConfigError("expression problem: invalid box in coordinate " + std::to_string(i + 1));

  const std::size_t d = lower.size();
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < d; ++i) vars.push_back("x" + std::to_string(i + 1));
  auto exprs = std::make_shared<std::vector<Expression>>();
  for (std::size_t j = 0; j < objectives.size(); ++j) {
    try {
      exprs->push_back(Expression::parse(objectives[j], vars));
    } catch (const ExpressionError& e) {
      throw ConfigError("objective " + std::to_string(j + 1) + ": " + e.what() +
                        " at position " + std::to_string(e.position()));
    }
  }

  Problem::Spec s;
  s.name = name.empty() ? "expression" : std::move(name);
  s.description = "box-constrained expression problem";
  s.dim_control = d;
  s.dim_image = objectives.size();
  s.objective = [exprs](std::span<const double> x, std::span<double> f) {
    for (std::size_t j = 0; j < exprs->size(); ++j) f[j] = (*exprs)[j].evaluate(x);
  };
  s.feasible = [lower, upper](std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    return true;
  };
  s.unit_map = [lower, upper](std::span<const double> u, std::span<double> x) {
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = lower[i] + u[i] * (upper[i] - lower[i]);
  };
  s.control_scale.resize(d);
  for (std::size_t i = 0; i < d; ++i)
    s.control_scale[i] = upper[i] > lower[i] ? upper[i] - lower[i] : 1.0;
  s.recommended_eta = 0.5;
  s.recommended_r = kInf;
  return Problem(std::move(s));
}

namespace {

double json_number(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return evaluate_constant(v.get<std::string>());
    } catch (const ExpressionError& e) {
      throw ConfigError("problem." + key + ": " + e.what());
    }
  }
  throw ConfigError("problem." + key + ": expected a number");
}

Vec json_vector(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("problem." + key + ": expected an array");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_number(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const nlohmann::json& spec, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : spec.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("problem: unknown key '" + key + "'");
  }
}

template <typename Fn>
Problem wrap_invalid(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

}  // namespace

Problem load_problem(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ConfigError("problem: expected an object");
  if (spec.contains("builtin") == spec.contains("expression"))
    throw ConfigError("problem: specify exactly one of 'builtin' or 'expression'");

  if (spec.contains("expression")) {
    reject_unknown(spec, {"expression"});
    const auto& e = spec.at("expression");
    if (!e.is_object()) throw ConfigError("problem.expression: expected an object");
    for (const auto& [key, _] : e.items())
      if (key != "objectives" && key != "lower" && key != "upper" && key != "name")
        throw ConfigError("problem.expression: unknown key '" + key + "'");
    for (const char* key : {"objectives", "lower", "upper"})
      if (!e.contains(key)) throw ConfigError(std::string("problem.expression: missing '") + key + "'");
    if (!e.at("objectives").is_array()) throw ConfigError("problem.expression.objectives: expected an array");
    std::vector<std::string> objectives;
    for (const auto& o : e.at("objectives")) {
      if (!o.is_string()) throw ConfigError("problem.expression.objectives: expected strings");
      objectives.push_back(o.get<std::string>());
    }
    std::string name = e.value("name", std::string("expression"));
    return expression_problem(std::move(name), objectives, json_vector(e.at("lower"), "expression.lower"),
                              json_vector(e.at("upper"), "expression.upper"));
  }

  if (!spec.at("builtin").is_string()) throw ConfigError("problem.builtin: expected a string");
  const std::string name = spec.at("builtin").get<std::string>();
  if (name == "paper_2d") {
    reject_unknown(spec, {"builtin"});
    return paper_2d();
  }
  if (name == "disk") {
    reject_unknown(spec, {"builtin", "radius"});
    const double radius = spec.contains("radius") ? json_number(spec.at("radius"), "radius") : 1.0;
    return wrap_invalid([&] { return disk(radius); });
  }
  if (name == "annulus") {
    reject_unknown(spec, {"builtin", "r_in", "r_out"});
    const double r_in = spec.contains("r_in") ? json_number(spec.at("r_in"), "r_in") : 1.0;
    const double r_out = spec.contains("r_out") ? json_number(spec.at("r_out"), "r_out") : 2.0;
    return wrap_invalid([&] { return annulus(r_in, r_out); });
  }
  if (name == "bean") {
    reject_unknown(spec, {"builtin"});
    return bean();
  }
  if (name == "polygon") {
    reject_unknown(spec, {"builtin", "vertices"});
    if (!spec.contains("vertices") || !spec.at("vertices").is_array())
      throw ConfigError("problem.vertices: expected an array of [x, y] pairs");
    std::vector<std::array<double, 2>> vertices;
    for (const auto& v : spec.at("vertices")) {
      Vec p = json_vector(v, "vertices");
      if (p.size() != 2) throw ConfigError("problem.vertices: each vertex needs two coordinates");
      vertices.push_back({p[0], p[1]});
    }
    return wrap_invalid([&] { return polygon(std::move(vertices)); });
  }
  throw ConfigError("problem.builtin: unknown problem '" + name + "'");
}

std::vector<BuiltinInfo> builtin_problems() {
  return {
      {"paper_2d", "", "nonconvex 2D test map on the unit simplex"},
      {"disk", "radius=1", "closed disk, polar parameterization"},
      {"annulus", "r_in=1, r_out=2", "closed annulus, (radius, angle) parameterization"},
      {"bean", "", "star-shaped bean with one concave inlet"},
      {"polygon", "vertices=[[x,y],...]", "identity map on a simple polygon"},
  };
}

}  // namespace boundscan
