#include "hermsv/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hermsv {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
}

void BasisSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("BasisSpec: alpha must be positive, got " +
                                std::to_string(alpha));
  }
  if (n_max < 0) {
    throw std::invalid_argument("BasisSpec: n_max must be >= 0, got " +
                                std::to_string(n_max));
  }
}

double lambda(const BasisSpec& spec, int n) {
  spec.validate();
  if (n < 0) {
    throw std::invalid_argument("lambda: mode index must be >= 0, got " +
                                std::to_string(n));
  }
  return 2.0 * spec.alpha * spec.alpha * static_cast<double>(n);
}

std::vector<double> eval_basis(const BasisSpec& spec, double x) {
  spec.validate();
  if (!std::isfinite(x)) {
    throw std::invalid_argument("eval_basis: x must be finite");
  }
  const double y = spec.alpha * x;
  std::vector<double> h(static_cast<size_t>(spec.size()));
  // sqrt(alpha) folded into psi_0; the recurrence is linear.
  double pm1 = std::sqrt(spec.alpha) * kPiQuarterInv * std::exp(-0.5 * y * y);
  h[0] = pm1;
  if (spec.n_max == 0) return h;
  double p = std::sqrt(2.0) * y * pm1;
  h[1] = p;
  for (int n = 1; n < spec.n_max; ++n) {
    const double next = y * std::sqrt(2.0 / (n + 1)) * p -
                        std::sqrt(static_cast<double>(n) / (n + 1)) * pm1;
    pm1 = p;
    p = next;
    h[static_cast<size_t>(n) + 1] = p;
  }
  return h;
}

CoeffVec CoeffVec::zero(const BasisSpec& spec) {
  spec.validate();
  return CoeffVec{spec, std::vector<double>(static_cast<size_t>(spec.size()), 0.0)};
}

CoeffVec CoeffVec::unit(const BasisSpec& spec, int k) {
  CoeffVec out = zero(spec);
  if (k < 0 || k > spec.n_max) {
    throw std::invalid_argument("CoeffVec::unit: mode " + std::to_string(k) +
                                " outside 0.." + std::to_string(spec.n_max));
  }
  out.values[static_cast<size_t>(k)] = 1.0;
  return out;
}

void CoeffVec::validate() const {
  spec.validate();
  if (static_cast<int>(values.size()) != spec.size()) {
    throw std::invalid_argument(
        "CoeffVec: length " + std::to_string(values.size()) +
        " does not match n_max+1 = " + std::to_string(spec.size()));
  }
  for (size_t n = 0; n < values.size(); ++n) {
    if (!std::isfinite(values[n])) {
      throw std::invalid_argument("CoeffVec: non-finite entry at mode " +
                                  std::to_string(n));
    }
  }
}

double eval_series(const CoeffVec& coeffs, double x) {
  const std::vector<double> h = eval_basis(coeffs.spec, x);
  double sum = 0.0;
  for (size_t n = 0; n < h.size(); ++n) sum += coeffs.values[n] * h[n];
  return sum;
}

double inner(const CoeffVec& a, const CoeffVec& b) {
  const size_t m = std::min(a.values.size(), b.values.size());
  double sum = 0.0;
  for (size_t n = 0; n < m; ++n) sum += a.values[n] * b.values[n];
  return sum;
}

}  // namespace hermsv
