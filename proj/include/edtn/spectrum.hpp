#pragma once

#include "edtn/core.hpp"

namespace edtn {

// T v = tau G v for one Fourier index; k = 0 uses the real (breathing, rotation) basis
struct ModeProblem {
  int k = 0;
  RMat T, G;
  std::array<double, 2> taus{};  // branch 0, branch 1
  std::array<RVec, 2> vecs;      // generalized eigenvectors in the (a, b) coordinates
};

ModeProblem disk_mode_matrix(int k, const LameParams& p, double R);

struct SpectrumEntry {
  int k;
  int branch;
  double tau;
};

struct DiskSpectrum {
  double R = 1;
  LameParams params;
  int K = 0;
  std::vector<SpectrumEntry> entries;  // sorted by (tau, k, branch)
  std::vector<double> taus;
  double oracleError = -1;  // max relative gap vs collocation on the first 50; -1 if not run
};

// validate runs the collocation oracle and throws Oracle on disagreement
DiskSpectrum disk_spectrum(const LameParams& p, double R, int K, bool validate = true);

struct CollocationResult {
  std::vector<double> taus;  // sorted
  int rank = 0;
  int points = 0;
  int degree = 0;
};

// dense boundary collocation of the traction DtN on Papkovich-Neuber polynomials
CollocationResult disk_collocation_oracle(const LameParams& p, double R, int degree, int points);
double oracle_gap(const std::vector<double>& a, const std::vector<double>& b, int count);

struct PartialSum {
  double value = 0;
  double tailBound = 0;
};

// tail must be certified below tol, otherwise Truncation with a K hint
PartialSum heat_trace_partial_sum(const DiskSpectrum& s, double t, double tol = 1e-8);
double truncation_tail(const LameParams& p, double R, int K, double t);
// smallest t with a certified tail for this K
double min_certified_t(const LameParams& p, double R, int K, double tol = 1e-8);
// the full series in closed form (geometric sums over both branches)
double disk_heat_trace_exact(const LameParams& p, double R, double t);

long counting_function(const DiskSpectrum& s, double tau);
double counting_reliable_limit(const DiskSpectrum& s);

struct A1Fit {
  double a = 0, b = 0;  // S - A0/t ~ a + b t
  double tmin = 0, tmax = 0;
  int samples = 0;
};
A1Fit fit_a1(const DiskSpectrum& s, double A0, int samples = 20);

// bivariate polynomial sum c_ab z^a zbar^b, used to check the mode fields exactly
struct ZPoly {
  std::vector<std::pair<std::pair<int, int>, cplx>> terms;
  void add(int a, int b, cplx c);
  ZPoly conj() const;
  ZPoly dz() const;
  ZPoly dzbar() const;
  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator*(cplx s) const;
  cplx eval(cplx z) const;
  double max_coeff() const;
};

// complex displacement u + i v for branch vector v of mode k (scale: real or imaginary multiple)
ZPoly mode_displacement(const ModeProblem& m, int branch, cplx scale, const LameParams& p, double R);
// coefficients of mu Laplacian U + (lambda+mu) grad div U, relative to the field size
double navier_residual(const ZPoly& U, const LameParams& p);
// max |traction - tau U| on |z| = R over sample points, relative
double traction_residual(const ZPoly& U, double tau, const LameParams& p, double R, int samples = 64);

}  // namespace edtn
