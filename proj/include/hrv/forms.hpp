#pragma once
// Constant-coefficient (p,q)-forms on C^n.
//
// A form is stored densely over the monomial basis dz_I ^ dzbar_J with I, J
// strictly increasing subsets of {1..n}, all holomorphic factors first.  The
// basis is ordered lexicographically, holomorphic index major.  Wedge signs
// are transposition counts of the interleaved factors; the top coefficient
// is normalized against the Euclidean volume dx_1^dy_1^...^dx_n^dy_n via
// dz^dzbar = -2i dx^dy.

#include <functional>
#include <vector>

#include "hrv/complex_linalg.hpp"

namespace hrv {

inline constexpr int kMaxAmbientDimension = 8;

long long binomial(int n, int k);

struct MultiIndexPair {
  std::vector<int> holo;  // strictly increasing, elements in 1..n
  std::vector<int> anti;

  bool operator==(const MultiIndexPair& other) const = default;
};

// All monomial index pairs of bidegree (p,q) on C^n in canonical order.
// Throws for out-of-range bidegrees.
std::vector<MultiIndexPair> enumerate_basis(int n, int p, int q);

struct Form {
  int n = 1;
  int p = 0;
  int q = 0;
  std::vector<cdouble> coeffs;  // size C(n,p)*C(n,q), canonical basis order

  static Form zero(int n, int p, int q);
  static Form constant(int n, cdouble value);
  // holo/anti must be strictly increasing; the coefficient sits on the
  // canonical monomial dz_holo ^ dzbar_anti.
  static Form monomial(int n, const std::vector<int>& holo, const std::vector<int>& anti,
                       cdouble coefficient = 1.0);

  int dim() const { return static_cast<int>(coeffs.size()); }
  int degree() const { return p + q; }
  bool is_zero(double tol = 0.0) const;

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(cdouble scalar);
};

Form operator+(Form a, const Form& b);
Form operator-(Form a, const Form& b);
Form operator*(cdouble scalar, Form a);

// Graded product.  Returns the zero form of clamped bidegree when p or q
// overflows n.  Throws when the ambient dimensions differ.
Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int k);
Form wedge_all(const std::vector<Form>& factors);

// Complex conjugation Lambda^{p,q} -> Lambda^{q,p}; an involution.
Form conjugate(const Form& a);

// Coefficient against the Euclidean volume form; input must be an
// (n,n)-form.
cdouble top_coefficient(const Form& a);

// Norm induced by declaring dx_j, dy_j orthonormal: the monomial
// dz_I ^ dzbar_J has norm 2^{(|I|+|J|)/2}.
double euclidean_norm(const Form& a);
cdouble euclidean_inner(const Form& a, const Form& b);

// top_coefficient(wedge(x, y)) for complementary bidegrees, evaluated as a
// sparse pairing.  Used on the hot Gram-matrix path.
cdouble top_pair(const Form& x, const Form& y);

// Matrix of a linear map in the canonical bases.  A codomain bidegree
// outside 0..n denotes the zero space and yields a 0-row matrix.  Map
// outputs must land in the codomain bidegree (identically zero outputs of
// any bidegree are accepted).
ComplexMatrix operator_matrix(const std::function<Form(const Form&)>& map, int n, int domain_p,
                              int domain_q, int codomain_p, int codomain_q);

std::vector<cdouble> form_coefficients(const Form& a);
Form form_from_coefficients(int n, int p, int q, const std::vector<cdouble>& coeffs);

}  // namespace hrv
