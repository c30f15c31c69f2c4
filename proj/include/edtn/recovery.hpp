#pragma once

#include "edtn/symbols.hpp"

namespace edtn {

struct CurvatureEstimate {
  double sumKappa = 0;
  RVec kappas;
  double conditioning = 0;  // 2-norm condition number of the linear map
  double consistency = 0;   // residual on the diagonal-direction sample
};

// which (d1, d2) pair drives the affine map
enum class DSource { Chain, Printed };

// p0nn(e_a) = A sum(kappa) + B kappa_a, returns (A, B)
std::pair<double, double> recovery_coefficients(const LameParams& p, DSource src = DSource::Chain);
// (n-1)x(n-1) matrix of kappa -> p0nn(e_1..e_{n-1})
RMat recovery_matrix(int n, const LameParams& p, DSource src = DSource::Chain);
double recovery_condition(int n, const LameParams& p, DSource src = DSource::Chain);

// p0 (n,n) entries from the symbol pipeline at e_1..e_{n-1} and the diagonal direction
std::vector<double> forward_p0nn_samples(int n, const LameParams& p, const RVec& kappas);

// samples: n-1 coordinate values then one diagonal value
CurvatureEstimate recover_curvatures(const std::vector<double>& samples, int n, const LameParams& p,
                                     DSource src = DSource::Chain);

}  // namespace edtn
