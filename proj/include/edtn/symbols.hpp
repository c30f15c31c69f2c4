#pragma once

#include <functional>

#include "edtn/core.hpp"

namespace edtn {

struct SymbolPair {
  SymbolMatrix first, second;
};

// b1 for general gInv; b0 only at the origin (empty when kappas absent and wantB0)
SymbolPair sym_b(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
SymbolMatrix sym_b1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
SymbolPair sym_c2_c1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
SymbolMatrix sym_c2(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);

SymbolMatrix q1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
// || q1^2 - b1 q1 - C2+ ||_inf / max(1, ||C2+||_inf)
double verify_q1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
// the positive bracket matrix, i.e. -c2
CMat c2_plus(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);

struct SylvesterOperator {
  CMat U, Uinv;
  CMat L, M;  // U = I (x) L + M^T (x) I with L = q1 - b1, M = q1
  RMat gInv;
  RVec xi;
  LameParams params;
  int n = 0;
};

SylvesterOperator sylvester_operator(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
// closed-form inverse for an arbitrary s~ table (used to test the printed one)
CMat sylvester_inverse_closed(const BoundaryPoint& pt, const RVec& xi, const LameParams& p,
                              const std::array<cplx, 25>& st);
CMat solve_sylvester(const SylvesterOperator& op, const CMat& E);
// dense n^2 x n^2 solve of U vecX = vecE, kept as an oracle
CMat solve_sylvester_dense(const SylvesterOperator& op, const CMat& E);
double sylvester_residual(const SylvesterOperator& op, const CMat& X, const CMat& E);

SymbolMatrix E1_origin(const RVec& kappas, const RVec& xi, const LameParams& p);
SymbolMatrix q0_origin(const RVec& kappas, const RVec& xi, const LameParams& p);
// long coefficient table for q0 at the origin, transcribed literally and
// evaluated with the given s~ table; diagnostic only
CMat q0_origin_printed_table(const RVec& kappas, const RVec& xi, const LameParams& p,
                             const std::array<cplx, 25>& st);
// (n,n) entry predicted by d1 sum(kappa) - 2 d2 sum(kappa xi^2)/|xi|^2
double q0nn_from_d(const RVec& kappas, const RVec& xi, double d1, double d2);

SymbolMatrix dtn_p1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);
SymbolMatrix dtn_p0(const RVec& kappas, const RVec& xi, const LameParams& p);
SymbolPair dtn_symbols(const BoundaryPoint& pt, const RVec& xi, const LameParams& p);

struct PoleInfo {
  std::array<double, 4> locations{};  // speeds * |xi|
};

class ResolventSymbol {
public:
  ResolventSymbol(int order, CMat p1, CMat p0, RVec xi, LameParams params);
  int order() const { return order_; }
  // psi_-1 = (p1 - tau)^-1 numerically; psi_-2 = -psi_-1 p0 psi_-1
  CMat operator()(cplx tau) const;
  CMat psi1_dense(cplx tau) const;
  // closed form through omega and the rank-one inverse
  CMat psi1_closed(cplx tau) const;
  CMat psi2(cplx tau) const;
  const std::array<double, 4>& poles() const { return poles_; }
  const CMat& p1() const { return p1_; }
  const CMat& p0() const { return p0_; }

private:
  void check_tau(cplx tau) const;
  int order_;
  CMat p1_, p0_;
  RVec xi_;
  LameParams params_;
  std::array<double, 4> poles_{};
};

struct ResolventPair {
  ResolventSymbol psi1, psi2;
};

ResolventPair resolvent(const RVec& kappas, const RVec& xi, const LameParams& p);

// omega as printed, and from the rank-one update directly
cplx omega_printed(double xiNorm, cplx tau, const LameParams& p);
cplx omega_lemma(double xiNorm, cplx tau, const LameParams& p);
// seven-term decomposition of Tr psi_-1; returns the individual terms
std::array<cplx, 7> trace_psi1_terms(int n, double xiNorm, cplx tau, const LameParams& p);

}  // namespace edtn
