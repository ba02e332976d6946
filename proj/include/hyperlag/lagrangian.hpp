#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypergraph.hpp"
#include "rational.hpp"

namespace hyperlag {

/// Weights below this count as zero when reporting supports.
inline constexpr double kSupportThreshold = 1e-9;

/// A point of the standard simplex: nonnegative weights summing to 1.
class Weighting {
public:
  /// Accepts any nonnegative vector whose sum is within 1e-9 of 1 and rescales it to sum 1.
  explicit Weighting(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty())
      throw std::invalid_argument("weighting needs at least one coordinate");
    double sum = 0.0;
    for (double v : x_) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("weights must be finite and nonnegative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("weights must sum to 1");
    for (double &v : x_)
      v /= sum;
  }

  static Weighting uniform(int n) {
    return Weighting(std::vector<double>(n, 1.0 / n));
  }

  std::size_t size() const noexcept { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  const std::vector<double> &values() const noexcept { return x_; }
  operator std::span<const double>() const noexcept { return x_; }

  /// 1-based labels of coordinates above `threshold`.
  std::vector<Vertex> support(double threshold = kSupportThreshold) const {
    std::vector<Vertex> s;
    for (std::size_t i = 0; i < x_.size(); ++i)
      if (x_[i] > threshold)
        s.push_back(static_cast<Vertex>(i + 1));
    return s;
  }

private:
  std::vector<double> x_;
};

namespace detail {
inline void check_dimension(const Hypergraph &h, std::span<const double> x) {
  if (static_cast<int>(x.size()) != h.order())
    throw std::invalid_argument("weighting has " + std::to_string(x.size()) +
                                " coordinates, hypergraph has " + std::to_string(h.order()) +
                                " vertices");
}
} // namespace detail

/// lambda'(H, x) = sum over edge sizes j of j! * (sum over size-j edges of the monomial).
inline double evaluate(const Hypergraph &h, std::span<const double> x) {
  detail::check_dimension(h, x);
  double total = 0.0;
  for (const auto &e : h.edges()) {
    double term = static_cast<double>(factorial(static_cast<int>(e.size())));
    for (Vertex v : e)
      term *= x[v - 1];
    total += term;
  }
  return total;
}

/// lambda(G, x) for a uniform level: the plain monomial sum.
inline double evaluate_uniform(const LevelGraph &g, std::span<const double> x) {
  detail::check_dimension(g.graph, x);
  double total = 0.0;
  for (const auto &e : g.graph.edges()) {
    if (static_cast<int>(e.size()) != g.k)
      throw std::invalid_argument("level graph contains an edge of the wrong size");
    double term = 1.0;
    for (Vertex v : e)
      term *= x[v - 1];
    total += term;
  }
  return total;
}

/// Partial derivatives of lambda'(H, .) at x. Uses leave-one-out products so
/// zero coordinates are handled exactly.
inline std::vector<double> gradient(const Hypergraph &h, std::span<const double> x) {
  detail::check_dimension(h, x);
  std::vector<double> g(x.size(), 0.0);
  std::vector<double> prefix;
  for (const auto &e : h.edges()) {
    const std::size_t k = e.size();
    const double weight = static_cast<double>(factorial(static_cast<int>(k)));
    prefix.assign(k + 1, 1.0);
    for (std::size_t j = 0; j < k; ++j)
      prefix[j + 1] = prefix[j] * x[e[j] - 1];
    double suffix = 1.0;
    for (std::size_t j = k; j-- > 0;) {
      g[e[j] - 1] += weight * prefix[j] * suffix;
      suffix *= x[e[j] - 1];
    }
  }
  return g;
}

/// Euclidean projection onto the standard simplex (sort and threshold).
inline Weighting project_to_simplex(std::span<const double> v) {
  if (v.empty())
    throw std::invalid_argument("cannot project an empty vector");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0)
      theta = t;
  }
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    x[i] = std::max(v[i] - theta, 0.0);
  return Weighting(std::move(x));
}

/// max over support pairs of |d_i lambda' - d_j lambda'|; vanishes at an optimal weighting.
inline double kkt_residual(const Hypergraph &h, std::span<const double> x,
                           double threshold = kSupportThreshold) {
  const auto g = gradient(h, x);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= threshold)
      continue;
    if (!any) {
      lo = hi = g[i];
      any = true;
    } else {
      lo = std::min(lo, g[i]);
      hi = std::max(hi, g[i]);
    }
  }
  return hi - lo;
}

/// Merges support vertices that share no edge: the weight of the one with the
/// smaller partial derivative moves onto the other. lambda' cannot decrease,
/// since it is linear along such a transfer. Repeats until every support pair
/// lies in a common edge.
inline Weighting refine_support(const Hypergraph &h, const Weighting &x,
                                double threshold = kSupportThreshold) {
  detail::check_dimension(h, x);
  const std::size_t n = x.size();
  std::vector<std::vector<char>> covered(n, std::vector<char>(n, 0));
  for (const auto &e : h.edges())
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b)
        covered[e[a] - 1][e[b] - 1] = covered[e[b] - 1][e[a] - 1] = 1;

  std::vector<double> y = x.values();
  for (;;) {
    bool fired = false;
    for (std::size_t i = 0; i < n && !fired; ++i) {
      if (y[i] <= threshold)
        continue;
      for (std::size_t j = i + 1; j < n && !fired; ++j) {
        if (y[j] <= threshold || covered[i][j])
          continue;
        const auto g = gradient(h, y);
        const auto [to, from] = g[i] >= g[j] ? std::pair{i, j} : std::pair{j, i};
        y[to] += y[from];
        y[from] = 0.0;
        fired = true;
      }
    }
    if (!fired)
      break;
  }
  return Weighting(std::move(y));
}

struct MaximizeOptions {
  int restarts = 16;
  double tol = 1e-10;
  int max_iterations = 10'000;
  std::uint64_t seed = 0;
};

struct LagrangianResult {
  double value = 0.0;
  Weighting weighting;
  std::vector<Vertex> support;
  int iterations = 0;
  bool converged = false;
  double kkt_residual = 0.0;
};

namespace detail {

struct AscentRun {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

// Projected gradient ascent; each step backtracks from unit length, halving
// until an Armijo-type sufficient increase holds.
inline AscentRun ascend(const Hypergraph &h, std::vector<double> x, const MaximizeOptions &opt) {
  constexpr double kArmijo = 1e-4;
  double f = evaluate(h, x);
  std::vector<double> trial(x.size());
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const auto g = gradient(h, x);
    bool accepted = false;
    double step = 1.0;
    std::vector<double> y;
    double fy = f;
    for (int halvings = 0; halvings < 64; ++halvings, step *= 0.5) {
      for (std::size_t i = 0; i < x.size(); ++i)
        trial[i] = x[i] + step * g[i];
      y = project_to_simplex(trial).values();
      double predicted = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        predicted += g[i] * (y[i] - x[i]);
      if (predicted <= 0.0)
        break;
      fy = evaluate(h, y);
      if (fy >= f + kArmijo * predicted) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      return {std::move(x), f, it, true};
    double moved = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      moved = std::max(moved, std::abs(y[i] - x[i]));
    x = std::move(y);
    f = fy;
    if (moved < opt.tol)
      return {std::move(x), f, it, true};
  }
  return {std::move(x), f, opt.max_iterations, false};
}

} // namespace detail

/// Best value over `restarts` ascents: the first from the uniform weighting,
/// the rest from seeded random simplex points (normalized exponentials).
/// The value is a lower bound on lambda'(H); it is exact only where theory
/// certifies it (see closed_form.hpp).
inline LagrangianResult maximize(const Hypergraph &h, const MaximizeOptions &opt = {}) {
  if (opt.restarts < 1)
    throw std::invalid_argument("restarts must be >= 1");
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("tol must be positive");
  const int n = h.order();
  if (h.empty()) {
    auto w = Weighting::uniform(n);
    return {0.0, w, w.support(), 0, true, 0.0};
  }

  detail::AscentRun best{{}, -1.0, 0, false};
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> start(n, 1.0 / n);
    if (r > 0) {
      std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                        static_cast<std::uint32_t>(opt.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      std::exponential_distribution<double> exp1(1.0);
      double sum = 0.0;
      for (auto &v : start)
        sum += (v = exp1(rng));
      for (auto &v : start)
        v /= sum;
    }
    auto run = detail::ascend(h, std::move(start), opt);
    if (run.value > best.value)
      best = std::move(run);
  }

  Weighting w(std::move(best.x));
  const double value = evaluate(h, w);
  const double residual = kkt_residual(h, w);
  return {value, w, w.support(), best.iterations, best.converged, residual};
}

} // namespace hyperlag
