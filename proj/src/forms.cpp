#include "hrv/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hrv {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

namespace {

void check_ambient(int n) {
  if (n < 1 || n > kMaxAmbientDimension) throw std::invalid_argument("ambient dimension out of range");
}

void check_bidegree(int n, int p, int q) {
  check_ambient(n);
  if (p < 0 || p > n || q < 0 || q > n) throw std::invalid_argument("bidegree out of range");
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Lexicographic rank of a strictly increasing subset of {1..n}.
int subset_rank(int n, const std::vector<int>& s) {
  const int k = static_cast<int>(s.size());
  int rank = 0;
  int prev = 0;
  for (int t = 0; t < k; ++t) {
    for (int v = prev + 1; v < s[t]; ++v) rank += static_cast<int>(binomial(n - v, k - 1 - t));
    prev = s[t];
  }
  return rank;
}

struct BasisTable {
  int n, p, q;
  int anti_count;
  std::vector<MultiIndexPair> monomials;

  int index_of(const std::vector<int>& holo, const std::vector<int>& anti) const {
    return subset_rank(n, holo) * anti_count + subset_rank(n, anti);
  }
};

const BasisTable& basis_table(int n, int p, int q) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<BasisTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, p, q}];
  if (!slot) {
    auto table = std::make_unique<BasisTable>();
    table->n = n;
    table->p = p;
    table->q = q;
    table->anti_count = static_cast<int>(binomial(n, q));
    const auto holos = subsets_lex(n, p);
    const auto antis = subsets_lex(n, q);
    table->monomials.reserve(holos.size() * antis.size());
    for (const auto& h : holos)
      for (const auto& a : antis) table->monomials.push_back({h, a});
    slot = std::move(table);
  }
  return *slot;
}

// Merge two strictly increasing index sets, counting the transpositions
// needed to sort the concatenation.  Returns false on a repeated index.
bool merge_indices(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out,
                   int& sign) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t ia = 0, ib = 0;
  int inversions = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) return false;
    if (a[ia] < b[ib]) {
      out.push_back(a[ia++]);
    } else {
      inversions += static_cast<int>(a.size() - ia);
      out.push_back(b[ib++]);
    }
  }
  while (ia < a.size()) out.push_back(a[ia++]);
  while (ib < b.size()) out.push_back(b[ib++]);
  sign = (inversions % 2 == 0) ? 1 : -1;
  return true;
}

std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<int> out;
  out.reserve(n - s.size());
  size_t i = 0;
  for (int v = 1; v <= n; ++v) {
    if (i < s.size() && s[i] == v) {
      ++i;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

// Conversion factor from the canonical top monomial dz_{1..n} ^ dzbar_{1..n}
// to the Euclidean volume: (-1)^{n(n-1)/2} (-2i)^n.
cdouble volume_factor(int n) {
  cdouble f = 1.0;
  for (int i = 0; i < n; ++i) f *= cdouble(0.0, -2.0);
  if ((n * (n - 1) / 2) % 2 != 0) f = -f;
  return f;
}

struct TopPairingTable {
  std::vector<int> partner;   // index in the complementary basis
  std::vector<double> sign;   // merge signs, cross factor included
  cdouble factor;             // volume conversion
};

const TopPairingTable& top_pairing_table(int n, int p, int q) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<TopPairingTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, p, q}];
  if (!slot) {
    auto table = std::make_unique<TopPairingTable>();
    const BasisTable& left = basis_table(n, p, q);
    const BasisTable& right = basis_table(n, n - p, n - q);
    table->factor = volume_factor(n);
    table->partner.resize(left.monomials.size());
    table->sign.resize(left.monomials.size());
    const int cross = (q * (n - p)) % 2 == 0 ? 1 : -1;
    std::vector<int> merged;
    for (size_t i = 0; i < left.monomials.size(); ++i) {
      const auto& m = left.monomials[i];
      const std::vector<int> ch = complement(n, m.holo);
      const std::vector<int> ca = complement(n, m.anti);
      int sh = 1, sa = 1;
      merge_indices(m.holo, ch, merged, sh);
      merge_indices(m.anti, ca, merged, sa);
      table->partner[i] = right.index_of(ch, ca);
      table->sign[i] = static_cast<double>(cross * sh * sa);
    }
    slot = std::move(table);
  }
  return *slot;
}

}  // namespace

std::vector<MultiIndexPair> enumerate_basis(int n, int p, int q) {
  check_bidegree(n, p, q);
  return basis_table(n, p, q).monomials;
}

Form Form::zero(int n, int p, int q) {
  check_bidegree(n, p, q);
  Form f;
  f.n = n;
  f.p = p;
  f.q = q;
  f.coeffs.assign(static_cast<size_t>(binomial(n, p) * binomial(n, q)), 0.0);
  return f;
}

Form Form::constant(int n, cdouble value) {
  Form f = zero(n, 0, 0);
  f.coeffs[0] = value;
  return f;
}

Form Form::monomial(int n, const std::vector<int>& holo, const std::vector<int>& anti,
                    cdouble coefficient) {
  check_bidegree(n, static_cast<int>(holo.size()), static_cast<int>(anti.size()));
  auto validate = [n](const std::vector<int>& s) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 1 || s[i] > n) throw std::invalid_argument("monomial index out of range");
      if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument("monomial indices must increase");
    }
  };
  validate(holo);
  validate(anti);
  Form f = zero(n, static_cast<int>(holo.size()), static_cast<int>(anti.size()));
  f.coeffs[basis_table(f.n, f.p, f.q).index_of(holo, anti)] = coefficient;
  return f;
}

bool Form::is_zero(double tol) const {
  for (const cdouble& c : coeffs)
    if (std::abs(c) > tol) return false;
  return true;
}

namespace {

void check_same_shape(const Form& a, const Form& b) {
  if (a.n != b.n || a.p != b.p || a.q != b.q)
    throw std::invalid_argument("form shape mismatch");
}

}  // namespace

Form& Form::operator+=(const Form& other) {
  check_same_shape(*this, other);
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  return *this;
}

Form& Form::operator-=(const Form& other) {
  check_same_shape(*this, other);
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  return *this;
}

Form& Form::operator*=(cdouble scalar) {
  for (cdouble& c : coeffs) c *= scalar;
  return *this;
}

Form operator+(Form a, const Form& b) { return a += b; }
Form operator-(Form a, const Form& b) { return a -= b; }
Form operator*(cdouble scalar, Form a) { return a *= scalar; }

Form wedge(const Form& a, const Form& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: ambient dimension mismatch");
  const int n = a.n;
  const int p = a.p + b.p;
  const int q = a.q + b.q;
  if (p > n || q > n) return Form::zero(n, std::min(p, n), std::min(q, n));

  const BasisTable& ta = basis_table(n, a.p, a.q);
  const BasisTable& tb = basis_table(n, b.p, b.q);
  const BasisTable& tout = basis_table(n, p, q);
  Form out = Form::zero(n, p, q);

  // Sign: move the holomorphic block of b across the antiholomorphic block
  // of a, then sort each block.
  const int cross = (a.q * b.p) % 2 == 0 ? 1 : -1;
  std::vector<int> holo, anti;
  for (size_t ia = 0; ia < a.coeffs.size(); ++ia) {
    const cdouble ca = a.coeffs[ia];
    if (ca == cdouble(0.0)) continue;
    const MultiIndexPair& ma = ta.monomials[ia];
    for (size_t ib = 0; ib < b.coeffs.size(); ++ib) {
      const cdouble cb = b.coeffs[ib];
      if (cb == cdouble(0.0)) continue;
      const MultiIndexPair& mb = tb.monomials[ib];
      int sh = 1, sa = 1;
      if (!merge_indices(ma.holo, mb.holo, holo, sh)) continue;
      if (!merge_indices(ma.anti, mb.anti, anti, sa)) continue;
      const double sign = static_cast<double>(cross * sh * sa);
      out.coeffs[tout.index_of(holo, anti)] += sign * ca * cb;
    }
  }
  return out;
}

Form wedge_power(const Form& a, int k) {
  if (k < 0) throw std::invalid_argument("wedge_power: negative exponent");
  Form out = Form::constant(a.n, 1.0);
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

Form wedge_all(const std::vector<Form>& factors) {
  if (factors.empty()) throw std::invalid_argument("wedge_all: empty factor list");
  Form out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = wedge(out, factors[i]);
  return out;
}

Form conjugate(const Form& a) {
  const BasisTable& ta = basis_table(a.n, a.p, a.q);
  const BasisTable& tout = basis_table(a.n, a.q, a.p);
  Form out = Form::zero(a.n, a.q, a.p);
  // conj(dz_I ^ dzbar_J) = dzbar_I ^ dz_J; restoring canonical order costs
  // (-1)^{pq}.
  const double sign = ((a.p * a.q) % 2 == 0) ? 1.0 : -1.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    const cdouble c = a.coeffs[i];
    if (c == cdouble(0.0)) continue;
    const MultiIndexPair& m = ta.monomials[i];
    out.coeffs[tout.index_of(m.anti, m.holo)] = sign * std::conj(c);
  }
  return out;
}

cdouble top_coefficient(const Form& a) {
  if (a.p != a.n || a.q != a.n) throw std::invalid_argument("top_coefficient needs an (n,n)-form");
  return a.coeffs[0] * volume_factor(a.n);
}

double euclidean_norm(const Form& a) {
  double s = 0.0;
  for (const cdouble& c : a.coeffs) s += std::norm(c);
  return std::sqrt(s) * std::pow(2.0, 0.5 * a.degree());
}

cdouble euclidean_inner(const Form& a, const Form& b) {
  check_same_shape(a, b);
  cdouble s = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) s += a.coeffs[i] * std::conj(b.coeffs[i]);
  return s * std::pow(2.0, static_cast<double>(a.degree()));
}

cdouble top_pair(const Form& x, const Form& y) {
  if (x.n != y.n) throw std::invalid_argument("top_pair: ambient dimension mismatch");
  if (x.p + y.p != x.n || x.q + y.q != x.n)
    throw std::invalid_argument("top_pair needs complementary bidegrees");
  const TopPairingTable& table = top_pairing_table(x.n, x.p, x.q);
  cdouble s = 0.0;
  for (size_t i = 0; i < x.coeffs.size(); ++i) {
    const cdouble cx = x.coeffs[i];
    if (cx == cdouble(0.0)) continue;
    s += cx * y.coeffs[table.partner[i]] * table.sign[i];
  }
  return s * table.factor;
}

ComplexMatrix operator_matrix(const std::function<Form(const Form&)>& map, int n, int domain_p,
                              int domain_q, int codomain_p, int codomain_q) {
  check_bidegree(n, domain_p, domain_q);
  const bool codomain_empty =
      codomain_p < 0 || codomain_p > n || codomain_q < 0 || codomain_q > n;
  const int rows = codomain_empty
                       ? 0
                       : static_cast<int>(binomial(n, codomain_p) * binomial(n, codomain_q));
  const auto& domain = basis_table(n, domain_p, domain_q).monomials;
  ComplexMatrix m(rows, static_cast<int>(domain.size()));
  for (size_t j = 0; j < domain.size(); ++j) {
    const Form image = map(Form::monomial(n, domain[j].holo, domain[j].anti));
    if (image.n != n) throw std::invalid_argument("operator_matrix: map changed ambient dimension");
    const bool matches = image.p == codomain_p && image.q == codomain_q;
    if (!matches) {
      if (!image.is_zero()) throw std::invalid_argument("operator_matrix: map output has wrong bidegree");
      continue;  // zero column
    }
    if (rows == 0) continue;
    for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = image.coeffs[i];
  }
  return m;
}

std::vector<cdouble> form_coefficients(const Form& a) { return a.coeffs; }

Form form_from_coefficients(int n, int p, int q, const std::vector<cdouble>& coeffs) {
  Form f = Form::zero(n, p, q);
  if (coeffs.size() != f.coeffs.size()) throw std::invalid_argument("coefficient count mismatch");
  f.coeffs = coeffs;
  return f;
}

}  // namespace hrv
