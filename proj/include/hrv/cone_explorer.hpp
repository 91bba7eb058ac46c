#pragma once
// Probing (n-2,n-2)-classes for the mixed Hodge-Riemann property at
// bidegree (1,1): Gram verdicts on the primitive space, the degeneracy locus
// where the Lefschetz determinant vanishes, scans along segments between
// classes, and the limit-class vanishing equivalence.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrv/hr_engine.hpp"

namespace hrv {

// A weighted sum of wedge products of (1,1)-forms.  Certification is
// constructive: a positive combination of products of strictly positive
// factors is interior to the positive cone; raw forms carry no certificate.
struct OmegaCandidate {
  int n = 3;
  Form form;                // bidegree (n-2, n-2)
  bool certified_positive = false;
  std::string description;
};

OmegaCandidate raw_candidate(Form f, std::string description = "raw");

// combo entries: (weight >= 0, n-2 factor specs).  Certified when the total
// weight is positive and every weighted term has all factors strictly
// positive.
OmegaCandidate combination_candidate(
    int n, const std::vector<std::pair<double, std::vector<KahlerSpec>>>& combo);

// Single product of n-2 specs with weight 1.
OmegaCandidate product_candidate(int n, const std::vector<KahlerSpec>& specs);

struct ConeProbeResult {
  cdouble lefschetz_det;  // det of alpha -> alpha ^ Omega on Lambda^{1,1}
  double det_scale = 0.0;
  double min_primitive_eigenvalue = 0.0;
  Definiteness verdict = Definiteness::indefinite;
  bool in_locus = false;  // |det| below 1e-9 * det_scale
};

// Requires n >= 3 and a nonzero candidate of bidegree (n-2, n-2).
ConeProbeResult probe(const OmegaCandidate& candidate, const Form& omega);

struct PathSample {
  double t = 0.0;
  double abs_det = 0.0;
  // Determinant projected onto the dominant phase direction of the scan.
  // Real candidates pin the determinant to a fixed line through the origin
  // (real or imaginary depending on (n,p,q)), so sign changes of this
  // projection are genuine zero crossings.
  double signed_det = 0.0;
  double min_eigenvalue = 0.0;
  Definiteness verdict = Definiteness::indefinite;
  bool in_locus = false;
};

struct PathScanResult {
  std::vector<PathSample> samples;              // steps + 1 uniform grid points
  std::optional<double> t_first_fail;           // first verdict off positive-definite
  std::optional<double> t_det_zero;             // first det sign change or collapse
};

// Scans Omega(t) = (1-t) start + t end for t on a uniform grid of steps+1
// points.  steps >= 16; start must be a certified combination.
PathScanResult path_scan(const OmegaCandidate& start, const OmegaCandidate& end, int steps,
                         const Form& omega);

// Seeded search for a raw candidate with an indefinite probe verdict, built
// by wedging an indefinite (1,1)-form into a product of positive ones.
std::optional<OmegaCandidate> find_failing_candidate(int n, const Form& omega, std::uint64_t seed,
                                                     int max_attempts = 64);

struct LimitCaseReport {
  double full_norm = 0.0;    // ||c ^ c_1 ... c_{n-2} ^ c_last||
  double square_norm = 0.0;  // ||c ^ c ^ c_1 ... c_{n-2}||
  double base_norm = 0.0;    // ||c ^ c_1 ... c_{n-2}||
  double full_scale = 0.0;
  double square_scale = 0.0;
  double base_scale = 0.0;
  bool full_vanishes = false;
  bool square_vanishes = false;
  bool base_vanishes = false;
  bool biconditional = false;  // (full = 0 and square = 0) <=> base = 0
};

// c and the c_list entries are (1,1)-forms (the list plays the role of a
// positive product that degenerates in the limit); c_last must be strictly
// positive.  Each "= 0" means norm <= 1e-9 times the product of factor norms.
LimitCaseReport limit_case_check(const Form& c, const std::vector<Form>& c_list,
                                 const Form& c_last);

}  // namespace hrv
