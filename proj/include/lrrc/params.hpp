#pragma once

#include <string>
#include <vector>

#include "lrrc/rational.hpp"

namespace lrrc {

// The design tuple (n,k,d,r) with the operating point (alpha, beta) and the
// file size M, all in packet units.
struct SystemParams {
  int n = 0;  // total storage nodes
  int k = 0;  // reconstruction threshold: any k nodes rebuild the file
  int d = 0;  // helpers contacted per repair
  int r = 0;  // max simultaneously unavailable nodes
  Rat alpha;  // per-node storage
  Rat beta;   // per-helper transfer
  Rat file_size;

  Rat gamma() const { return beta * Rat(d); }  // total repair bandwidth d*beta
};

// Empty result means the tuple is admissible; otherwise one entry per
// violated inequality of the admissibility range.
std::vector<std::string> validate_params(int n, int k, int d, int r);
bool params_ok(int n, int k, int d, int r);

// Throws PreconditionError listing the violations.
void require_valid(int n, int k, int d, int r);
void require_valid(const SystemParams& p);

// The multipliers c_1..c_k of beta in the k min-terms of a piecewise-linear
// tradeoff expression sum_i min(c_i * beta, alpha).
struct CutCoefficients {
  std::vector<int> coeffs;
};

// Coefficients ((d)^+, (d-1)^+, ..., (d-k+1)^+) of the blind-helper-selection
// closed form.
CutCoefficients bhs_cut_coefficients(int k, int d);

// Evaluates sum_i min(c_i * beta, alpha).
Rat cut_value(const CutCoefficients& c, const Rat& alpha, const Rat& beta);

// sum_{i=0}^{k-1} min((d-i)^+ beta, alpha): the exact min over the whole
// blind-selection closure of information flow graphs.
Rat bhs_mincut_value(const SystemParams& p);

struct ExtremePoints {
  Rat alpha_mbr, beta_mbr;
  Rat alpha_msr, beta_msr;
};

// Minimum-bandwidth and minimum-storage corners of the tradeoff curve
// sum_i min(c_i beta, alpha) >= M. The alpha = infinity (resp. beta =
// infinity) limits are taken analytically by dropping the min. Throws
// UnprotectableError if every coefficient is zero.
ExtremePoints extreme_points(const CutCoefficients& c, const Rat& file_size, int d);

// MBR corner of the blind-selection curve: alpha = d*beta,
// beta = M / sum_{i=1}^{k} (d-(i-1))^+.
struct MbrPoint {
  Rat alpha, beta;
};
MbrPoint bhs_mbr_point(int n, int k, int d, const Rat& file_size);

// Smallest beta on the curve sum_i min(c_i beta, alpha_cap) >= M, solved
// exactly segment by segment. Used for the MSR corner.
Rat min_beta_on_curve(const CutCoefficients& c, const Rat& alpha_cap, const Rat& file_size);

}  // namespace lrrc
