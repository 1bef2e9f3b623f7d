#include "fracwave/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

// Kronrod abscissae on [0,1]; odd entries (1,3,5) are the Gauss points.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kronrod = fc * wgk[7];
  cplx gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const cplx s = f(c - dx) + f(c + dx);
    kronrod += wgk[j] * s;
    if (j % 2 == 1) gauss += wg[j / 2] * s;
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts) {
  if (!(b > a)) return {};
  std::size_t initial = 1;
  if (opts.max_panel_width > 0.0)
    initial = static_cast<std::size_t>(std::ceil((b - a) / opts.max_panel_width));
  if (initial > opts.max_panels) {
    std::ostringstream msg;
    msg << "initial partition needs " << initial << " panels";
    throw QuadratureError(msg.str(), std::numeric_limits<double>::infinity());
  }

  std::priority_queue<Panel> heap;
  const double w = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + w * static_cast<double>(i);
    const double hi = i + 1 == initial ? b : lo + w;
    heap.push(gk15(f, lo, hi));
  }

  // Totals are recomputed from scratch now and then to keep the running sums honest.
  auto totals = [&heap]() {
    auto copy = heap;
    cplx v{};
    double e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  std::size_t since_resum = 0;

  while (error > opts.tol) {
    if (heap.size() >= opts.max_panels) {
      std::tie(value, error) = totals();
      if (error <= opts.tol) break;
      std::ostringstream msg;
      msg << "adaptive quadrature did not reach tol " << opts.tol << " (estimate " << error
          << ")";
      throw QuadratureError(msg.str(), error);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // cannot split further; keep it and give up on this panel
      std::tie(value, error) = totals();
      error += worst.error;
      value += worst.value;
      std::ostringstream msg;
      msg << "panel [" << worst.a << ", " << worst.b << "] underflowed";
      throw QuadratureError(msg.str(), error);
    }
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (++since_resum == 256) {
      since_resum = 0;
      std::tie(value, error) = totals();
    }
  }
  std::tie(value, error) = totals();
  return {value, error, heap.size()};
}

const GaussLegendre& gauss_legendre(std::size_t points) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it != cache.end()) return it->second;

  GaussLegendre rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const std::size_t half = (points + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton from the Tricomi initial guess
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(points) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= points; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(points) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  return cache.emplace(points, std::move(rule)).first->second;
}

double simpson(const std::vector<double>& values, double h) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (values[0] + values[1]);
  const std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
  double sum = values[0] + values[last];
  for (std::size_t i = 1; i < last; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  double out = sum * h / 3.0;
  if (last != n - 1) out += 0.5 * h * (values[n - 2] + values[n - 1]);
  return out;
}

}  // namespace fracwave
