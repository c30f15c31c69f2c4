#pragma once

#include <functional>

#include "edtn/symbols.hpp"

namespace edtn {

struct Pole {
  cplx location;
  int maxOrder = 1;
};

struct PoleSet {
  std::vector<Pole> poles;
  double mergeTol = 0.0;

  // dedupe: poles closer than tol collapse into one (max of the orders)
  static PoleSet merged(const std::vector<Pole>& raw, double tol);
  // the four speeds times |xi|
  static PoleSet from_speeds(const LameParams& p, double xiNorm, int order);
};

struct ContourOptions {
  int nodes = 64;
  int maxNodes = 8192;
  double relTol = 1e-11;
};

// (1/2 pi i) \oint e^{-t tau} f(tau) dtau around every pole, by circle trapezoid
cplx heat_contour(const std::function<cplx(cplx)>& f, const PoleSet& poles, double t,
                  const ContourOptions& opt = {});

// -(1/2 pi i) \oint e^{-t tau} Tr psi_-1 ; depends on |xi| only
double heat_trace_psi1(int n, const LameParams& p, double xiNorm, double t);
double heat_trace_psi1_closed(int n, const LameParams& p, double xiNorm, double t);

// (1/2 pi i) \oint e^{-t tau} Tr(psi_-1 p0 psi_-1), numerically
double heat_trace_psi2(int n, const LameParams& p, const RVec& kappas, const RVec& xi, double t);
// three-exponential closed form as printed
double heat_trace_psi2_printed(int n, const LameParams& p, const RVec& kappas, const RVec& xi, double t);
// same shape, coefficients from the spectral projections of p1 (what the numerics give)
double heat_trace_psi2_chain(int n, const LameParams& p, const RVec& kappas, const RVec& xi, double t);

// golden residue integrals: integrand in tau and its closed-form contour value
struct ResidueRow {
  std::string label;
  std::function<cplx(cplx)> f;
  double closed;
};
// ten rows built from omega and the three speeds mu, b = 2mu(l+2mu)/(l+3mu), 2mu
// the two omega rows divide by (lambda - mu); closed is NaN at lambda = mu, the contour is not
std::vector<ResidueRow> residue_table(const LameParams& p, double xiNorm, double t);
// the seven terms of Tr psi_-1 and their heat integrals
std::vector<ResidueRow> psi1_term_table(int n, const LameParams& p, double xiNorm, double t);

double sphere_volume(int dim);  // vol(S^dim)

// int_{R^{n-1}} |xi|^m e^{-C|xi|} dxi, optionally with xi_k^2/|xi|^2 inserted
double radial_gamma_integral(int n, double m, double C, bool directional);

double a0_density(int n, const LameParams& p);
// per unit sum(kappa); as printed
double a1_density(int n, const LameParams& p);
// per unit sum(kappa); integrating heat_trace_psi2_chain
double a1_density_chain(int n, const LameParams& p);

struct HeatQuadOptions {
  int threads = 1;
  int angularOrder = 4;     // Gauss nodes per polar level
  int circleNodes = 8;      // trapezoid nodes on S^1
  double radialTol = 1e-12;
  double tailTol = 1e-10;
};

struct HeatCoeffs {
  double a0 = 0, a1 = 0;
  int angularNodes = 0;
  double radialMax = 0;
};

// a0 and a1 (full, not per unit sum(kappa)) from the symbol pipeline at t = 1
HeatCoeffs heat_coeffs_numeric(int n, const LameParams& p, const RVec& kappas,
                               const HeatQuadOptions& opt = {});

// nodes and weights on S^{d-1} in R^d, exact for low-degree polynomials
struct SphereRule {
  std::vector<RVec> nodes;
  std::vector<double> weights;
};
SphereRule sphere_rule(int d, int gaussOrder, int circleNodes);
// Gauss-Jacobi with alpha = beta = a on [-1,1] (Golub-Welsch)
void gauss_jacobi_sym(int m, double a, std::vector<double>& x, std::vector<double>& w);

struct Geometry {
  enum class Kind { Circle, Sphere, Points } kind = Kind::Circle;
  double R = 1.0;
  struct Sample {
    double weight;
    RVec kappas;
  };
  std::vector<Sample> points;
};

struct HeatTotals {
  double A0 = 0;
  double A1 = 0;       // from a1_density
  double A1Chain = 0;  // from a1_density_chain
  double weylSlope = 0;         // A0 / Gamma(n)
  double weylSlopePrinted = 0;  // the coefficient as printed, no Gamma or (2 pi) factors
  double boundaryVolume = 0;
};

HeatTotals total_heat_coefficients(const Geometry& g, int n, const LameParams& p);

}  // namespace edtn
