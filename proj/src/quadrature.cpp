#include "ivgreen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "ivgreen/errors.hpp"

namespace ivgreen {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Piece {
  double a, b;
  T value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <typename T, typename F>
Piece<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<T, 15> fv;
  fv[14] = f(c);
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[static_cast<std::size_t>(j)];
    fv[static_cast<std::size_t>(2 * j)] = f(c - dx);
    fv[static_cast<std::size_t>(2 * j + 1)] = f(c + dx);
  }
  T kron = fv[14] * kWgk[7];
  T gauss = fv[14] * kWg[3];
  for (int j = 0; j < 7; ++j) {
    T pair = fv[static_cast<std::size_t>(2 * j)] + fv[static_cast<std::size_t>(2 * j + 1)];
    kron += pair * kWgk[static_cast<std::size_t>(j)];
    if (j % 2 == 1) gauss += pair * kWg[static_cast<std::size_t>(j / 2)];
  }
  // QUADPACK error estimate: scaled by the deviation from the mean.
  const T mean = kron * 0.5;
  double resasc = kWgk[7] * std::abs(fv[14] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[static_cast<std::size_t>(j)] *
              (std::abs(fv[static_cast<std::size_t>(2 * j)] - mean) + std::abs(fv[static_cast<std::size_t>(2 * j + 1)] - mean));
  resasc *= std::abs(h);
  double err = std::abs((kron - gauss) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, kron * h, err};
}

template <typename T>
bool finite_value(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

// Globally adaptive bisection on [a, b]; returns value, error, evaluations.
template <typename T, typename F>
std::tuple<T, double, int> adapt(const F& f, double a, double b, double tol, int max_subdivisions) {
  std::priority_queue<Piece<T>> heap;
  auto first = gk15<T>(f, a, b);
  T total = first.value;
  double err = first.error;
  heap.push(first);
  int evals = 15;
  int pieces = 1;
  while (err > tol) {
    if (pieces >= max_subdivisions) {
      throw NumericalError("adaptive quadrature: tolerance " + format_double(tol) + " not reached within " +
                               std::to_string(max_subdivisions) + " subintervals (error bound " + format_double(err) + ")",
                           std::abs(total), err);
    }
    Piece<T> worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("adaptive quadrature: interval collapsed near t = " + format_double(mid), std::abs(total), err);
    }
    auto left = gk15<T>(f, worst.a, mid);
    auto right = gk15<T>(f, mid, worst.b);
    evals += 30;
    ++pieces;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  if (!finite_value(total)) throw NumericalError("adaptive quadrature: non-finite result");
  // Re-sum to drop the drift of the running updates.
  T resum{};
  double rerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    rerr += heap.top().error;
    heap.pop();
  }
  return {resum, rerr, evals};
}

double relative_scale(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

bool converged(std::span<const double> prev, std::span<const double> cur, double rel_tol, double scale) {
  for (std::size_t i = 0; i < cur.size(); ++i)
    if (std::abs(cur[i] - prev[i]) > rel_tol * scale) return false;
  return true;
}

void check_finite(std::span<const double> sums, int n, double alpha, double beta) {
  for (double s : sums)
    if (!std::isfinite(s))
      throw NumericalError("singular quadrature: non-finite integrand sum with " + std::to_string(n) +
                           " nodes on (" + format_double(alpha) + ", " + format_double(beta) + ")");
}

}  // namespace

std::vector<double> chebyshev_nodes(double alpha, double beta, int n) {
  const double mid = 0.5 * (alpha + beta), half = 0.5 * (beta - alpha);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = mid + half * std::cos((2 * k + 1) * kPi / (2.0 * n));
  return x;
}

double singular_integral_fixed(const std::function<double(double)>& f, double alpha, double beta, int n) {
  double sum = 0.0;
  for (double x : chebyshev_nodes(alpha, beta, n)) {
    double v = f(x);
    if (!std::isfinite(v)) throw NumericalError("singular quadrature: non-finite integrand at x = " + format_double(x));
    sum += v;
  }
  return sum * kPi / n;
}

SingularBatchResult singular_integral_batch(const NodeSums& sums, int count, double alpha, double beta,
                                            const QuadratureRule& rule) {
  if (!(alpha < beta)) throw ValidationError("singular quadrature: need alpha < beta");
  const auto ucount = static_cast<std::size_t>(count);
  std::vector<double> prev(ucount), cur(ucount);
  int n = rule.order;
  sums(chebyshev_nodes(alpha, beta, n), prev);
  check_finite(prev, n, alpha, beta);
  for (auto& v : prev) v *= kPi / n;
  while (true) {
    int next = 2 * n;
    if (next > rule.max_order) {
      throw NumericalError("singular quadrature: no agreement to " + format_double(rule.rel_tol) + " at " +
                               std::to_string(n) + " nodes on (" + format_double(alpha) + ", " + format_double(beta) + ")",
                           prev.empty() ? 0.0 : prev[0]);
    }
    sums(chebyshev_nodes(alpha, beta, next), cur);
    check_finite(cur, next, alpha, beta);
    for (auto& v : cur) v *= kPi / next;
    double scale = std::max(relative_scale(cur), 1e-300);
    n = next;
    if (converged(prev, cur, rule.rel_tol, scale)) return {cur, n};
    std::swap(prev, cur);
  }
}

double singular_integral(const std::function<double(double)>& f, double alpha, double beta,
                         const QuadratureRule& rule) {
  // Integrate f and |f| together; agreement is judged against the latter.
  auto sums = [&](std::span<const double> x, std::span<double> out) {
    double s = 0.0, a = 0.0;
    for (double xi : x) {
      double v = f(xi);
      if (!std::isfinite(v)) throw NumericalError("singular quadrature: non-finite integrand at x = " + format_double(xi));
      s += v;
      a += std::abs(v);
    }
    out[0] = s;
    out[1] = a;
  };
  QuadratureRule r = rule;
  if (!(alpha < beta)) throw ValidationError("singular quadrature: need alpha < beta");
  std::array<double, 2> prev{}, cur{};
  int n = r.order;
  sums(chebyshev_nodes(alpha, beta, n), prev);
  for (auto& v : prev) v *= kPi / n;
  while (true) {
    int next = 2 * n;
    if (next > r.max_order)
      throw NumericalError("singular quadrature: no agreement at " + std::to_string(n) + " nodes", prev[0]);
    sums(chebyshev_nodes(alpha, beta, next), cur);
    for (auto& v : cur) v *= kPi / next;
    n = next;
    if (std::abs(cur[0] - prev[0]) <= r.rel_tol * std::max(cur[1], 1e-300)) return cur[0];
    prev = cur;
  }
}

namespace {

// Smallest N' >= n whose Chebyshev angles keep a margin from theta0.
int avoid_node(double theta0, int n) {
  while (true) {
    double spacing = kPi / n;
    // Nearest node angle (2k+1) pi / 2n.
    double kf = std::round((theta0 / spacing) - 0.5);
    double nearest = (kf + 0.5) * spacing;
    if (std::abs(nearest - theta0) >= 1e-3 * spacing) return n;
    ++n;
  }
}

// Returns the largest integral of |term| over the batch, the agreement scale.
double pv_sums(const NodeValues& values, int count, double alpha, double beta, double x0, bool inside, int n,
               std::span<const double> f0, std::span<double> out) {
  auto x = chebyshev_nodes(alpha, beta, n);
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> vals(static_cast<std::size_t>(count) * un);
  values(x, vals);
  double abs_scale = 0.0;
  for (int i = 0; i < count; ++i) {
    double s = 0.0, a = 0.0;
    for (std::size_t k = 0; k < un; ++k) {
      double v = vals[static_cast<std::size_t>(i) * un + k];
      double term = inside ? (v - f0[static_cast<std::size_t>(i)]) / (x[k] - x0) : v / (x[k] - x0);
      s += term;
      a += std::abs(term);
    }
    out[static_cast<std::size_t>(i)] = s * kPi / n;
    abs_scale = std::max(abs_scale, a * kPi / n);
  }
  check_finite(out, n, alpha, beta);
  return abs_scale;
}

}  // namespace

SingularBatchResult pv_singular_integral_batch(const NodeValues& values, int count, double alpha, double beta,
                                               double x0, const QuadratureRule& rule) {
  if (!(alpha < beta)) throw ValidationError("principal value: need alpha < beta");
  if (x0 == alpha || x0 == beta)
    throw ValidationError("principal value: pole x0 = " + format_double(x0) + " coincides with an endpoint");
  const bool inside = alpha < x0 && x0 < beta;
  const auto ucount = static_cast<std::size_t>(count);
  std::vector<double> f0(ucount, 0.0);
  double theta0 = 0.0;
  if (inside) {
    std::array<double, 1> p{x0};
    values(p, f0);
    double half = 0.5 * (beta - alpha), mid = 0.5 * (alpha + beta);
    theta0 = std::acos(std::clamp((x0 - mid) / half, -1.0, 1.0));
  }
  auto pick = [&](int n) { return inside ? avoid_node(theta0, n) : n; };
  std::vector<double> prev(ucount), cur(ucount);
  int n = pick(rule.order);
  pv_sums(values, count, alpha, beta, x0, inside, n, f0, prev);
  while (true) {
    int next = pick(2 * n);
    if (next > rule.max_order + rule.max_order / 8) {
      throw NumericalError("principal value: no agreement at " + std::to_string(n) + " nodes on (" +
                               format_double(alpha) + ", " + format_double(beta) + ")",
                           prev.empty() ? 0.0 : prev[0]);
    }
    double abs_scale = pv_sums(values, count, alpha, beta, x0, inside, next, f0, cur);
    double scale = std::max({relative_scale(cur), abs_scale, 1e-300});
    n = next;
    if (converged(prev, cur, rule.rel_tol, scale)) return {cur, n};
    std::swap(prev, cur);
  }
}

double pv_singular_integral(const std::function<double(double)>& f, double alpha, double beta, double x0,
                            const QuadratureRule& rule) {
  auto values = [&](std::span<const double> x, std::span<double> out) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      out[k] = f(x[k]);
      if (!std::isfinite(out[k]))
        throw NumericalError("principal value: non-finite integrand at x = " + format_double(x[k]));
    }
  };
  return pv_singular_integral_batch(values, 1, alpha, beta, x0, rule).values[0];
}

PathResult path_integral(const std::function<cplx(cplx)>& f, std::span<const cplx> path, double tol,
                         int max_subdivisions) {
  if (path.size() < 2) throw ValidationError("path integral: need at least two points");
  double total_len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total_len += std::abs(path[i] - path[i - 1]);
  PathResult out{0.0, 0.0, 0};
  if (total_len == 0.0) return out;
  const cplx origin = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) {
    const cplx p0 = path[i - 1];
    const cplx base = p0 - origin;
    const cplx d = path[i] - p0;
    const double seg_tol = tol * std::abs(d) / total_len;
    if (std::abs(d) == 0.0) continue;
    std::tuple<cplx, double, int> r;
    try {
      if (i == 1) {
        r = adapt<cplx>([&](double t) { return f(d * (t * t)) * (2.0 * t) * d; }, 0.0, 1.0, seg_tol,
                        max_subdivisions);
      } else {
        r = adapt<cplx>([&](double t) { return f(base + d * t) * d; }, 0.0, 1.0, seg_tol, max_subdivisions);
      }
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("path integral: segment ") + std::to_string(i) + ": " + e.what(),
                           std::abs(out.value) + e.estimate(), out.error + e.error_bound());
    }
    out.value += std::get<0>(r);
    out.error += std::get<1>(r);
    out.evaluations += std::get<2>(r);
  }
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, int max_subdivisions) {
  if (a == b) return 0.0;
  const double d = b - a;
  return std::get<0>(adapt<double>([&](double t) { return f(a + d * t) * d; }, 0.0, 1.0, tol, max_subdivisions));
}

double integrate_offset(const std::function<double(double)>& f, double len, double tol, int max_subdivisions) {
  if (len == 0.0) return 0.0;
  return std::get<0>(
      adapt<double>([&](double t) { return f(len * t * t) * 2.0 * t * len; }, 0.0, 1.0, tol, max_subdivisions));
}

double tail_integral(const std::function<double(double)>& f, double x0, int direction, double scale, double tol) {
  const double dir = direction >= 0 ? 1.0 : -1.0;
  auto g = [&](double t) {
    double x = x0 + dir * scale * (1.0 / t - 1.0);
    return f(x) * scale / (t * t);
  };
  double v = std::get<0>(adapt<double>(g, 0.0, 1.0, tol, 4000));
  return dir * v;
}

}  // namespace ivgreen
