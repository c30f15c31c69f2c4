#include "edtn/recovery.hpp"

#include <cmath>

namespace edtn {

std::pair<double, double> recovery_coefficients(const LameParams& p, DSource src) {
  const DerivedConstants c = derive_constants(p);
  const double d1 = src == DSource::Chain ? c.d1Chain : c.d1;
  const double d2 = src == DSource::Chain ? c.d2Chain : c.d2;
  const double l = p.lambda, m = p.mu;
  return {(l + 2 * m) * d1 - l, -2 * (l + 2 * m) * d2};
}

RMat recovery_matrix(int n, const LameParams& p, DSource src) {
  if (n < 2) throw Error(ErrorKind::Config, "dimension n must be >= 2");
  const auto [A, B] = recovery_coefficients(p, src);
  return A * RMat::Ones(n - 1, n - 1) + B * RMat::Identity(n - 1, n - 1);
}

double recovery_condition(int n, const LameParams& p, DSource src) {
  const Eigen::JacobiSVD<RMat> svd(recovery_matrix(n, p, src));
  const RVec s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo == 0.0 ? INFINITY : s(0) / lo;
}

std::vector<double> forward_p0nn_samples(int n, const LameParams& p, const RVec& kappas) {
  if (kappas.size() != n - 1) throw Error(ErrorKind::Shape, "kappas must have n-1 entries");
  std::vector<double> out;
  for (int a = 0; a < n - 1; ++a) {
    RVec xi = RVec::Zero(n - 1);
    xi(a) = 1.0;
    out.push_back(dtn_p0(kappas, xi, p).value(n - 1, n - 1).real());
  }
  const RVec diag = RVec::Constant(n - 1, 1.0 / std::sqrt(double(n - 1)));
  out.push_back(dtn_p0(kappas, diag, p).value(n - 1, n - 1).real());
  return out;
}

CurvatureEstimate recover_curvatures(const std::vector<double>& samples, int n, const LameParams& p, DSource src) {
  require_symbols(p);
  if (n < 2) throw Error(ErrorKind::Config, "dimension n must be >= 2");
  if (static_cast<int>(samples.size()) != n) throw Error(ErrorKind::Shape, "need n-1 coordinate samples plus one diagonal");
  const RMat M = recovery_matrix(n, p, src);
  CurvatureEstimate est;
  est.conditioning = recovery_condition(n, p, src);
  if (!(est.conditioning < 1e12)) throw Error(ErrorKind::Singular, "recovery map is singular for these Lame constants");
  RVec y(n - 1);
  for (int a = 0; a < n - 1; ++a) y(a) = samples[a];
  est.kappas = M.fullPivLu().solve(y);
  est.sumKappa = est.kappas.sum();
  // diagonal direction: sum(kappa xi^2)/|xi|^2 = sum(kappa)/(n-1)
  const auto [A, B] = recovery_coefficients(p, src);
  const double pred = A * est.sumKappa + B * est.sumKappa / (n - 1);
  est.consistency = std::abs(pred - samples[n - 1]);
  if (est.consistency > 1e-8 * std::max(1.0, std::abs(samples[n - 1])))
    throw Error(ErrorKind::Data, "diagonal sample inconsistent with the coordinate samples");
  return est;
}

}  // namespace edtn
