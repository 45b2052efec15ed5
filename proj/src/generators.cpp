#include "acl/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace acl::generators {

namespace {

std::vector<std::string> numbered(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

FiniteStructure from_positions(const std::vector<Rational>& xs) {
  const std::size_t n = xs.size();
  std::vector<Rational> metric(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) metric[i * n + j] = abs_value(xs[i] - xs[j]);
  return FiniteStructure(Signature{}, numbered(n), std::move(metric));
}

FiniteStructure rounded(std::size_t n, const std::function<double(std::size_t, std::size_t)>& dist) {
  std::vector<long> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long v = static_cast<long>(std::ceil(dist(i, j) * chordal_grid - 1e-9));
      v = std::clamp(v, 1L, chordal_grid);
      d[i * n + j] = d[j * n + i] = v;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  std::vector<Rational> metric(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    metric[i] = Rational(d[i], chordal_grid);
    metric[i].canonicalize();
  }
  return FiniteStructure(Signature{}, numbered(n), std::move(metric));
}

std::vector<std::array<double, 3>> fibonacci_sphere(std::size_t n) {
  std::vector<std::array<double, 3>> pts;
  const double golden = std::numbers::pi * (1.0 + std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double phi = std::acos(1.0 - 2.0 * t);
    const double theta = golden * (static_cast<double>(i) + 0.5);
    pts.push_back({std::cos(theta) * std::sin(phi), std::sin(theta) * std::sin(phi), std::cos(phi)});
  }
  return pts;
}

}  // namespace

FiniteStructure two_point() {
  return FiniteStructure(Signature{}, {"a", "b"}, {Rational(0), Rational(1), Rational(1), Rational(0)});
}

FiniteStructure interval(std::size_t n) {
  if (n < 2) throw InputError("interval discretization needs at least 2 points");
  std::vector<Rational> xs;
  for (std::size_t i = 0; i < n; ++i) {
    Rational x(static_cast<long>(i), static_cast<long>(n - 1));
    x.canonicalize();
    xs.push_back(x);
  }
  return from_positions(xs);
}

FiniteStructure circle_geodesic(std::size_t n) {
  if (n < 2 || n % 2) throw InputError("geodesic circle needs an even number of points");
  std::vector<Rational> metric(n * n);
  const long half = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long k = std::labs(static_cast<long>(i) - static_cast<long>(j));
      k = std::min(k, static_cast<long>(n) - k);
      metric[i * n + j] = Rational(k, half);
      metric[i * n + j].canonicalize();
    }
  return FiniteStructure(Signature{}, numbered(n), std::move(metric));
}

FiniteStructure cantor(unsigned level) {
  std::vector<Rational> xs{Rational(0)};
  Rational step(1);
  for (unsigned l = 0; l < level; ++l) {
    step /= 3;
    std::vector<Rational> next;
    for (const auto& x : xs) {
      next.push_back(x);
      next.push_back(x + 2 * step);
    }
    xs = std::move(next);
  }
  if (level > 0) xs.push_back(Rational(1));
  return from_positions(xs);
}

FiniteStructure circle_chordal(std::size_t n) {
  if (n < 2) throw InputError("circle needs at least 2 points");
  return rounded(n, [n](std::size_t i, std::size_t j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j > i ? j - i : i - j) / static_cast<double>(n);
    return std::sin(angle / 2.0);  // chord of a circle of radius 1/2
  });
}

FiniteStructure sphere_chordal(std::size_t n) {
  const auto pts = fibonacci_sphere(n);
  return rounded(n, [&pts](std::size_t i, std::size_t j) {
    double s = 0;
    for (int k = 0; k < 3; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
    return 0.5 * std::sqrt(s);
  });
}

FiniteStructure sphere_geodesic(std::size_t n) {
  const auto pts = fibonacci_sphere(n);
  return rounded(n, [&pts](std::size_t i, std::size_t j) {
    double dot = 0;
    for (int k = 0; k < 3; ++k) dot += pts[i][k] * pts[j][k];
    return std::acos(std::clamp(dot, -1.0, 1.0)) / std::numbers::pi;
  });
}

}  // namespace acl::generators
