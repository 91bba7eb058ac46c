#include "hrv/convex_volumes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hrv/rng.hpp"

namespace hrv {

namespace {

void check_body(const ConvexBody& body) {
  if (body.n < 1 || body.n > kMaxAmbientDimension)
    throw std::invalid_argument("convex body dimension out of range");
  if (body.kind == BodyKind::box) {
    if (static_cast<int>(body.widths.size()) != body.n)
      throw std::invalid_argument("box needs one width per axis");
    for (double w : body.widths) {
      if (!(w >= 0.0)) throw std::invalid_argument("box widths must be nonnegative");
    }
  } else {
    for (const std::vector<double>& g : body.generators) {
      if (static_cast<int>(g.size()) != body.n)
        throw std::invalid_argument("zonotope generator has wrong dimension");
      for (double x : g) {
        if (!std::isfinite(x)) throw std::invalid_argument("zonotope generator must be finite");
      }
    }
  }
}

// |det| of the n columns selected from gens, by in-place elimination.
double abs_det(const std::vector<std::vector<double>>& gens, const std::vector<int>& pick, int n) {
  double a[kMaxAmbientDimension][kMaxAmbientDimension];
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) a[r][c] = gens[pick[c]][r];
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k)
      for (int c = k; c < n; ++c) std::swap(a[piv][c], a[k][c]);
    det *= a[k][k];
    for (int r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (int c = k + 1; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return std::abs(det);
}

double zonotope_volume(const std::vector<std::vector<double>>& gens, int n) {
  const int m = static_cast<int>(gens.size());
  if (m < n) return 0.0;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  double vol = 0.0;
  while (true) {
    vol += abs_det(gens, pick, n);
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vol;
}

// Profile iteration helper: all vectors 0 <= m <= I, excluding zero.
bool next_profile(std::vector<int>& m, const std::vector<int>& bound) {
  for (size_t d = 0; d < m.size(); ++d) {
    if (m[d] < bound[d]) {
      ++m[d];
      for (size_t e = 0; e < d; ++e) m[e] = 0;
      return true;
    }
  }
  return false;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_mixed_volume_args(const std::vector<ConvexBody>& bodies, const std::vector<int>& I) {
  if (bodies.empty() || bodies.size() != I.size())
    throw std::invalid_argument("mixed_volume: one multiplicity per body");
  const int n = bodies.front().n;
  int total = 0;
  for (const ConvexBody& body : bodies) {
    check_body(body);
    if (body.n != n) throw std::invalid_argument("mixed_volume: mismatched dimensions");
  }
  for (int i : I) {
    if (i < 0) throw std::invalid_argument("mixed_volume: negative multiplicity");
    total += i;
  }
  if (total != n) throw std::invalid_argument("mixed_volume: multiplicities must sum to n");
}

double mixed_volume_polarization(const std::vector<ConvexBody>& bodies, const std::vector<int>& I) {
  const int n = bodies.front().n;
  const int r = static_cast<int>(bodies.size());
  std::vector<int> profile(r, 0);
  double acc = 0.0;
  while (next_profile(profile, I)) {
    int size = 0;
    double ways = 1.0;
    std::vector<std::pair<double, ConvexBody>> combo;
    for (int d = 0; d < r; ++d) {
      if (profile[d] == 0) continue;
      size += profile[d];
      ways *= binomial(I[d], profile[d]);
      combo.emplace_back(static_cast<double>(profile[d]), bodies[d]);
    }
    const double sign = ((n - size) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * ways * volume(combo);
  }
  return acc / factorial(n);
}

// Homogeneous degree-n exponent vectors over r variables, lexicographic.
std::vector<std::vector<int>> homogeneous_exponents(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  const std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

double mixed_volume_interpolation(const std::vector<ConvexBody>& bodies, const std::vector<int>& I) {
  const int n = bodies.front().n;
  const int r = static_cast<int>(bodies.size());
  const std::vector<std::vector<int>> exponents = homogeneous_exponents(n, r);
  int target = -1;
  for (size_t j = 0; j < exponents.size(); ++j)
    if (exponents[j] == I) target = static_cast<int>(j);
  if (target < 0) throw std::logic_error("mixed_volume: multiplicity vector not enumerated");

  int rows = 1;
  for (int d = 0; d < r; ++d) rows *= n + 1;
  ComplexMatrix a(rows, static_cast<int>(exponents.size()));
  std::vector<cdouble> rhs(rows);
  std::vector<int> grid(r, 1);
  for (int row = 0; row < rows; ++row) {
    std::vector<std::pair<double, ConvexBody>> combo;
    for (int d = 0; d < r; ++d) combo.emplace_back(static_cast<double>(grid[d]), bodies[d]);
    rhs[row] = volume(combo);
    for (size_t j = 0; j < exponents.size(); ++j) {
      double mono = 1.0;
      for (int d = 0; d < r; ++d) mono *= std::pow(static_cast<double>(grid[d]), exponents[j][d]);
      a(row, static_cast<int>(j)) = mono;
    }
    for (int d = 0; d < r; ++d) {
      if (grid[d] < n + 1) {
        ++grid[d];
        for (int e = 0; e < d; ++e) grid[e] = 1;
        break;
      }
    }
  }

  const std::vector<cdouble> coeffs = least_squares(a, rhs);
  double norm = 1.0;
  for (int i : I) norm *= factorial(i);
  return coeffs[target].real() * norm / factorial(n);
}

}  // namespace

ConvexBody ConvexBody::box(std::vector<double> widths) {
  ConvexBody body;
  body.kind = BodyKind::box;
  body.n = static_cast<int>(widths.size());
  body.widths = std::move(widths);
  check_body(body);
  return body;
}

ConvexBody ConvexBody::zonotope(int n, std::vector<std::vector<double>> generators) {
  ConvexBody body;
  body.kind = BodyKind::zonotope;
  body.n = n;
  body.generators = std::move(generators);
  check_body(body);
  return body;
}

double volume(const std::vector<std::pair<double, ConvexBody>>& combination) {
  if (combination.empty()) throw std::invalid_argument("volume: empty combination");
  const int n = combination.front().second.n;
  bool all_boxes = true;
  for (const auto& [weight, body] : combination) {
    check_body(body);
    if (body.n != n) throw std::invalid_argument("volume: mismatched dimensions");
    if (!(weight >= 0.0)) throw std::invalid_argument("volume: weights must be nonnegative");
    if (body.kind != BodyKind::box) all_boxes = false;
  }

  if (all_boxes) {
    double vol = 1.0;
    for (int axis = 0; axis < n; ++axis) {
      double side = 0.0;
      for (const auto& [weight, body] : combination) side += weight * body.widths[axis];
      vol *= side;
    }
    return vol;
  }

  std::vector<std::vector<double>> pooled;
  for (const auto& [weight, body] : combination) {
    if (weight == 0.0) continue;
    if (body.kind == BodyKind::box) {
      for (int axis = 0; axis < n; ++axis) {
        if (body.widths[axis] == 0.0) continue;
        std::vector<double> g(n, 0.0);
        g[axis] = weight * body.widths[axis];
        pooled.push_back(std::move(g));
      }
    } else {
      for (const std::vector<double>& g : body.generators) {
        std::vector<double> scaled(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          scaled[i] = weight * g[i];
          nonzero = nonzero || scaled[i] != 0.0;
        }
        if (nonzero) pooled.push_back(std::move(scaled));
      }
    }
  }
  return zonotope_volume(pooled, n);
}

const char* to_string(MixedVolumeMethod method) {
  return method == MixedVolumeMethod::polarization ? "polarization" : "interpolation";
}

MixedVolumeResult mixed_volume(const std::vector<ConvexBody>& bodies, const std::vector<int>& I,
                               MixedVolumeMethod method) {
  check_mixed_volume_args(bodies, I);
  MixedVolumeResult result;
  result.multiplicities = I;
  result.method = method;
  result.value = method == MixedVolumeMethod::polarization
                     ? mixed_volume_polarization(bodies, I)
                     : mixed_volume_interpolation(bodies, I);
  return result;
}

InequalityReport af_check(const ConvexBody& k1, const ConvexBody& k2,
                          const std::vector<ConvexBody>& fill) {
  const int n = k1.n;
  if (static_cast<int>(fill.size()) != n - 2)
    throw std::invalid_argument("af_check: need n-2 fill bodies");
  std::vector<ConvexBody> bodies = {k1, k2};
  bodies.insert(bodies.end(), fill.begin(), fill.end());
  std::vector<int> mixed_i(bodies.size(), 1);
  std::vector<int> first_i = mixed_i, second_i = mixed_i;
  first_i[0] = 2;
  first_i[1] = 0;
  second_i[0] = 0;
  second_i[1] = 2;

  const double mixed = mixed_volume(bodies, mixed_i).value;
  const double first = mixed_volume(bodies, first_i).value;
  const double second = mixed_volume(bodies, second_i).value;

  InequalityReport report;
  report.lhs = mixed * mixed;
  report.rhs = first * second;
  report.margin = report.lhs - report.rhs;
  report.scale = report.lhs;
  report.pass = report.margin >= -1e-9 * report.scale;
  return report;
}

InequalityReport brunn_minkowski_check(const ConvexBody& a, const ConvexBody& b) {
  if (a.n != b.n) throw std::invalid_argument("brunn_minkowski_check: mismatched dimensions");
  const double inv_n = 1.0 / a.n;
  InequalityReport report;
  report.lhs = std::pow(volume({{1.0, a}, {1.0, b}}), inv_n);
  report.rhs = std::pow(volume({{1.0, a}}), inv_n) + std::pow(volume({{1.0, b}}), inv_n);
  report.margin = report.lhs - report.rhs;
  report.scale = report.lhs;
  report.pass = report.margin >= -1e-9 * report.scale;
  return report;
}

double intersection_number(const std::vector<Form>& classes) {
  if (classes.empty()) throw std::invalid_argument("intersection_number: empty class list");
  const int n = classes.front().n;
  if (static_cast<int>(classes.size()) != n)
    throw std::invalid_argument("intersection_number: need n classes on C^n");
  for (const Form& c : classes)
    if (c.n != n || c.p != 1 || c.q != 1)
      throw std::invalid_argument("intersection_number: classes must be (1,1)-forms");
  const cdouble top = top_coefficient(wedge_all(classes));
  if (std::abs(top.imag()) > 1e-9 * std::max(1.0, std::abs(top.real())))
    throw std::runtime_error("intersection_number: non-real top coefficient");
  return top.real();
}

InequalityReport kt_inequality(const std::vector<Form>& classes) {
  if (classes.size() < 2) throw std::invalid_argument("kt_inequality: need at least two classes");
  for (const Form& c : classes)
    if (!is_strictly_positive(c).strict)
      throw std::invalid_argument("kt_inequality: classes must be strictly positive");

  std::vector<Form> mixed = classes;
  std::vector<Form> first = classes;
  std::vector<Form> second = classes;
  first[1] = first[0];
  second[0] = second[1];

  InequalityReport report;
  const double m = intersection_number(mixed);
  report.lhs = m * m;
  report.rhs = intersection_number(first) * intersection_number(second);
  report.margin = report.lhs - report.rhs;
  report.scale = report.lhs;
  report.pass = report.margin >= -1e-9 * report.scale;
  return report;
}

ConvexBody random_box(int n, Rng& rng) {
  std::vector<double> widths(n);
  for (double& w : widths) w = 0.2 + rng.uniform01();
  return ConvexBody::box(std::move(widths));
}

ConvexBody random_zonotope(int n, Rng& rng) {
  const int count = n + static_cast<int>(rng.next() % 3);
  std::vector<std::vector<double>> gens(count, std::vector<double>(n));
  for (std::vector<double>& g : gens)
    for (double& x : g) x = rng.uniform_symmetric();
  return ConvexBody::zonotope(n, std::move(gens));
}

}  // namespace hrv
