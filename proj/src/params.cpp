#include "lrrc/params.hpp"

#include <algorithm>

#include "lrrc/errors.hpp"

namespace lrrc {

std::vector<std::string> validate_params(int n, int k, int d, int r) {
  std::vector<std::string> violations;
  if (!(2 <= n)) violations.push_back("2 <= n");
  if (!(1 <= k)) violations.push_back("1 <= k");
  if (!(k <= n - 1)) violations.push_back("k <= n-1");
  if (!(1 <= d)) violations.push_back("1 <= d");
  if (!(d <= n - 1 - r)) violations.push_back("d <= n-1-r");
  if (r < 0) violations.push_back("0 <= r");
  return violations;
}

bool params_ok(int n, int k, int d, int r) { return validate_params(n, k, d, r).empty(); }

void require_valid(int n, int k, int d, int r) {
  auto violations = validate_params(n, k, d, r);
  if (violations.empty()) return;
  std::string msg = "inadmissible (n,k,d,r)=(" + std::to_string(n) + "," + std::to_string(k) +
                    "," + std::to_string(d) + "," + std::to_string(r) + "):";
  for (const auto& v : violations) msg += " " + v + ";";
  throw PreconditionError(msg);
}

void require_valid(const SystemParams& p) {
  require_valid(p.n, p.k, p.d, p.r);
  if (p.alpha < Rat(0) || p.beta < Rat(0) || p.file_size < Rat(0))
    throw PreconditionError("alpha, beta, file_size must be non-negative");
}

CutCoefficients bhs_cut_coefficients(int k, int d) {
  CutCoefficients c;
  c.coeffs.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c.coeffs.push_back(std::max(d - i, 0));
  return c;
}

Rat cut_value(const CutCoefficients& c, const Rat& alpha, const Rat& beta) {
  Rat total = 0;
  for (int ci : c.coeffs) total += min(beta * Rat(ci), alpha);
  return total;
}

Rat bhs_mincut_value(const SystemParams& p) {
  require_valid(p.n, p.k, p.d, p.r);
  return cut_value(bhs_cut_coefficients(p.k, p.d), p.alpha, p.beta);
}

ExtremePoints extreme_points(const CutCoefficients& c, const Rat& file_size, int d) {
  std::int64_t coeff_sum = 0;
  int positive = 0;
  int max_coeff = 0;
  for (int ci : c.coeffs) {
    if (ci < 0 || ci > d) throw PreconditionError("cut coefficient outside [0, d]");
    coeff_sum += ci;
    if (ci > 0) ++positive;
    max_coeff = std::max(max_coeff, ci);
  }
  if (positive == 0) throw UnprotectableError("all cut coefficients are zero");

  ExtremePoints pts;
  pts.beta_mbr = file_size / Rat(coeff_sum);
  pts.alpha_mbr = pts.beta_mbr * Rat(max_coeff);
  pts.alpha_msr = file_size / Rat(positive);
  pts.beta_msr = min_beta_on_curve(c, pts.alpha_msr, file_size);
  return pts;
}

Rat min_beta_on_curve(const CutCoefficients& c, const Rat& alpha_cap, const Rat& file_size) {
  if (file_size == Rat(0)) return Rat(0);
  // Breakpoints of beta -> sum_i min(c_i beta, alpha_cap) are at alpha_cap/c_i.
  std::vector<Rat> breaks;
  for (int ci : c.coeffs)
    if (ci > 0) breaks.push_back(alpha_cap / Rat(ci));
  std::sort(breaks.begin(), breaks.end(), [](const Rat& a, const Rat& b) { return a < b; });
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Rat prev = 0;
  for (std::size_t s = 0; s <= breaks.size(); ++s) {
    // On (prev, upper]: terms with alpha_cap/c_i <= prev are saturated.
    std::int64_t slope = 0;
    Rat saturated = 0;
    for (int ci : c.coeffs) {
      if (ci == 0) continue;
      if (prev > Rat(0) && alpha_cap / Rat(ci) <= prev)
        saturated += alpha_cap;
      else
        slope += ci;
    }
    if (slope == 0) {
      if (saturated >= file_size) return prev;
      break;  // curve is flat below M from here on
    }
    Rat candidate = (file_size - saturated) / Rat(slope);
    if (candidate < prev) candidate = prev;
    Rat upper = s < breaks.size() ? breaks[s] : candidate;
    if (candidate <= upper) return candidate;
    prev = upper;
  }
  throw UnprotectableError("tradeoff curve never reaches the file size");
}

MbrPoint bhs_mbr_point(int n, int k, int d, const Rat& file_size) {
  require_valid(n, k, d, 0);
  std::int64_t denom = 0;
  for (int i = 1; i <= k; ++i) denom += std::max(d - (i - 1), 0);
  if (denom == 0) throw UnprotectableError("zero coefficient sum in the MBR denominator");
  MbrPoint p;
  p.beta = file_size / Rat(denom);
  p.alpha = p.beta * Rat(d);
  return p;
}

}  // namespace lrrc
