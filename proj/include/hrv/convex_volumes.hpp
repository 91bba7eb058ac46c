#pragma once
// Minkowski mixed volumes for axis-aligned boxes and zonotopes, the
// Aleksandrov-Fenchel and Brunn-Minkowski inequalities over them, and the
// intersection-number bridge matching products of positive (1,1)-forms with
// box mixed volumes.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hrv/kahler.hpp"

namespace hrv {

enum class BodyKind { box, zonotope };

// Boxes are axis-aligned with per-axis widths; zonotopes are Minkowski sums
// of segments [0, g] over their generators.  Both have exact volume
// formulas: products of widths, and sums of |det| over generator n-subsets.
struct ConvexBody {
  BodyKind kind = BodyKind::box;
  int n = 1;
  std::vector<double> widths;                   // box only, all >= 0
  std::vector<std::vector<double>> generators;  // zonotope only

  static ConvexBody box(std::vector<double> widths);
  static ConvexBody zonotope(int n, std::vector<std::vector<double>> generators);
};

// Volume of sum_s lambda_s K_s for lambda_s >= 0.  All-box combinations
// multiply per-axis width sums; any zonotope switches the whole combination
// to pooled scaled generators (boxes contribute axis segments).
double volume(const std::vector<std::pair<double, ConvexBody>>& combination);

enum class MixedVolumeMethod { polarization, interpolation };

struct MixedVolumeResult {
  std::vector<int> multiplicities;
  double value = 0.0;
  MixedVolumeMethod method = MixedVolumeMethod::polarization;
};

const char* to_string(MixedVolumeMethod method);

// Mixed volume V(K_1[i_1], ..., K_r[i_r]) with sum(I) = n.  Polarization
// sums signed volumes of sub-sums grouped by multiplicity profile;
// interpolation fits the volume polynomial on the grid lambda in {1..n+1}^r
// and reads off the lambda^I coefficient.
MixedVolumeResult mixed_volume(const std::vector<ConvexBody>& bodies, const std::vector<int>& I,
                               MixedVolumeMethod method = MixedVolumeMethod::polarization);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double scale = 0.0;
  bool pass = false;    // margin >= -1e-9 * scale
};

// Aleksandrov-Fenchel: V(K1,K2,fill)^2 >= V(K1,K1,fill) V(K2,K2,fill),
// with n-2 fill slots.
InequalityReport af_check(const ConvexBody& k1, const ConvexBody& k2,
                          const std::vector<ConvexBody>& fill);

// Vol(A+B)^{1/n} >= Vol(A)^{1/n} + Vol(B)^{1/n}.
InequalityReport brunn_minkowski_check(const ConvexBody& a, const ConvexBody& b);

// top(c_1 ^ ... ^ c_n) for n (1,1)-forms on C^n; the value is real for
// real classes and positive for strictly positive ones.
double intersection_number(const std::vector<Form>& classes);

// [c1 c2 c3..cn]^2 >= [c1 c1 c3..cn] [c2 c2 c3..cn] for strictly positive
// classes; the intersection-number mirror of af_check.
InequalityReport kt_inequality(const std::vector<Form>& classes);

// Seeded random bodies for trial campaigns: widths in [0.2, 1.2); zonotope
// generator counts between n and n+2 with entries in [-1, 1).
ConvexBody random_box(int n, Rng& rng);
ConvexBody random_zonotope(int n, Rng& rng);

}  // namespace hrv
