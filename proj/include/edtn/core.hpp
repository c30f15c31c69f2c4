#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace edtn {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  Config,         // bad user input or parameter domain
  Shape,          // nonconformable matrices
  Singular,       // a distinguished singular case (rank-one inverse, recovery)
  PoleProximity,  // resolvent evaluated too close to a pole
  Nonconvergence, // quadrature or contour refinement gave up
  Truncation,     // spectral partial sum not certified
  Basis,          // degenerate mode basis
  Data,           // inconsistent samples
  Oracle          // in-tree oracle disagreement
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

struct LameParams {
  double lambda = 1.0;
  double mu = 1.0;

  // mu > 0 and lambda + mu >= 0
  bool valid_for_symbols() const;
  // additionally lambda + mu > 0
  bool valid_for_heat() const;
  bool scalar_degenerate() const { return lambda + mu == 0.0; }
  // the cubic printed as the recovery hypothesis
  double nondegeneracy_cubic(int n) const;
  bool nondegenerate(int n) const { return nondegeneracy_cubic(n) != 0.0; }
};

void require_symbols(const LameParams& p);
void require_heat(const LameParams& p);

struct DerivedConstants {
  std::array<cplx, 5> s{};        // s1..s5 at index 0..4
  std::array<cplx, 25> sTilde{};  // table that actually inverts U (see README)
  std::array<cplx, 25> sTildePrinted{};
  double d1 = 0, d2 = 0;            // closed forms as printed
  double d1Chain = 0, d2Chain = 0;  // s~ combinations evaluated on sTilde
  std::array<double, 4> speeds{};   // mu, 2mu, 2mu(l+mu)/(l+3mu), 2mu(l+2mu)/(l+3mu)
  bool speedCoincidence = false;
  bool scalarDegenerate = false;

  cplx st(int k) const { return sTilde[k - 1]; }
  cplx si(int k) const { return s[k - 1]; }
};

DerivedConstants derive_constants(const LameParams& p);

// printed table, exposed for the record and for tests
std::array<cplx, 25> stilde_printed(const LameParams& p);
// d1, d2 from their s~ combinations on an arbitrary table
std::pair<cplx, cplx> d_from_table(const LameParams& p, const std::array<cplx, 25>& st);
// 25x25 linear system whose unique solution is the s~ table (rhs = e_1)
CMat stilde_system(const LameParams& p);
// residuals of the five quadratic equations for s1..s5
std::array<cplx, 5> s_system_residual(const LameParams& p, const std::array<cplx, 5>& s);

struct BoundaryPoint {
  int n = 2;
  RMat gInv;                   // (n-1)x(n-1) SPD
  std::optional<RVec> kappas;  // origin normal form only

  static BoundaryPoint origin(const RVec& kappas);
  static BoundaryPoint general(const RMat& gInv);
  void validate() const;
  bool at_origin() const { return kappas.has_value(); }
};

enum class SymbolTag { q1, q0, b1, b0, c2, c1, p1, p0, psi1, psi2, E1 };

struct SymbolMatrix {
  SymbolTag tag{};
  CMat value;
  RVec xi;
  std::optional<cplx> tau;
};

const char* tag_name(SymbolTag t);

double max_abs(const CMat& m);

// vec stacks columns
CVec vec(const CMat& X);
CMat unvec(const CVec& v, int n);
CMat kron(const CMat& A, const CMat& B);
// (I (x) L + M^T (x) I)
CMat sylvester_matrix(const CMat& L, const CMat& M);
// (I (x) L + M^T (x) I) vec X computed through the matrix product, for checks
CVec kron_vec(const CMat& L, const CMat& M, const CMat& X);

// [a delta + b xi xi^T]^{-1}
CMat rank_one_update_inverse(cplx a, cplx b, const RVec& xi);

}  // namespace edtn
