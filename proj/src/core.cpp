#include "edtn/core.hpp"

#include <cmath>
#include <sstream>

namespace edtn {

bool LameParams::valid_for_symbols() const {
  return std::isfinite(lambda) && std::isfinite(mu) && mu > 0.0 && lambda + mu >= 0.0;
}

bool LameParams::valid_for_heat() const { return valid_for_symbols() && lambda + mu > 0.0; }

double LameParams::nondegeneracy_cubic(int n) const {
  const double l = lambda, m = mu;
  return (n - 1) * l * l * l + (4.0 * n - 2) * l * l * m + (n + 5.0) * l * m * m +
         (14.0 - 8.0 * n) * m * m * m;
}

void require_symbols(const LameParams& p) {
  if (!p.valid_for_symbols()) {
    std::ostringstream os;
    os << "Lame parameters need mu > 0 and lambda + mu >= 0 (got lambda=" << p.lambda
       << ", mu=" << p.mu << ")";
    throw Error(ErrorKind::Config, os.str());
  }
}

void require_heat(const LameParams& p) {
  require_symbols(p);
  if (!(p.lambda + p.mu > 0.0))
    throw Error(ErrorKind::Config, "heat-trace quantities need lambda + mu > 0");
}

std::array<cplx, 25> stilde_printed(const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  std::array<cplx, 25> t{};
  auto S = [&](int k) -> cplx& { return t[k - 1]; };
  const double r = (l + m) / (4.0 * (l + 3 * m));
  S(1) = 0.5;
  S(3) = r;
  S(2) = -r;
  S(4) = I * (l + 2 * m) * (l + m) / (4 * m * (l + 3 * m));
  S(5) = I * m * (l + m) / (4 * (l + 2 * m) * (l + 3 * m));
  S(7) = r;
  S(6) = -r;
  S(8) = -I * r;
  S(9) = -I * r;
  const double a = (l + m) * (l + m) / (4 * (l + 3 * m) * (l + 3 * m));
  S(10) = -a;
  S(11) = a;
  S(12) = a;
  S(13) = -a;
  S(14) = -I * a;
  S(15) = I * a;
  S(16) = -I * a;
  S(17) = I * a;
  const double q = (l + m) * (l + m) / ((l + 3 * m) * (l + 3 * m));
  S(18) = I * (l + 2 * m) * q / (4 * m);
  S(20) = -S(18);
  S(19) = I * m * q / (4 * (l + 2 * m));
  S(21) = -S(19);
  S(22) = -(l + 2 * m) * q / (4 * m);
  S(24) = S(22);
  S(23) = -m * q / (4 * (l + 2 * m));
  S(25) = S(23);
  return t;
}

std::pair<cplx, cplx> d_from_table(const LameParams& p, const std::array<cplx, 25>& t) {
  const double l = p.lambda, m = p.mu;
  const double s2 = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s3 = -s2, s4 = I * s2, s5 = I * s2;
  auto S = [&](int k) { return t[k - 1]; };
  const cplx grp = S(1) + S(3) + S(7) - S(11);
  const cplx d1 = (s4 - I * (l + m) / m) * (S(5) - S(19)) + (s1 + s3) * grp +
                  s5 * (S(8) + S(15)) + (s1 + s2) * S(23);
  const cplx d2 = 0.5 * (s1 + s3) * grp + I * (S(5) - S(19)) - 0.5 * (s1 + s2) * S(23) -
                  I * m / (l + 2 * m) * (S(8) + S(15));
  return {d1, d2};
}

DerivedConstants derive_constants(const LameParams& p) {
  require_symbols(p);
  const double l = p.lambda, m = p.mu;
  DerivedConstants c;
  const double s2 = (l + m) / (l + 3 * m);
  c.s = {1.0, s2, -s2, I * s2, I * s2};
  c.sTildePrinted = stilde_printed(p);
  // entries 10..25 carry the opposite sign from the printed table; this is the
  // unique solution of stilde_system (see tests/test_symbols.cpp)
  c.sTilde = c.sTildePrinted;
  for (int k = 10; k <= 25; ++k) c.sTilde[k - 1] = -c.sTilde[k - 1];

  const double den = (l + 3 * m) * (l + 3 * m);
  c.d1 = 2 * m * (l + 2 * m) / den;
  c.d2 = m * (l * l + 3 * l * m + 3 * m * m) / ((l + 2 * m) * den);
  auto [d1c, d2c] = d_from_table(p, c.sTilde);
  c.d1Chain = d1c.real();
  c.d2Chain = d2c.real();

  c.speeds = {m, 2 * m, 2 * m * (l + m) / (l + 3 * m), 2 * m * (l + 2 * m) / (l + 3 * m)};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(c.speeds[i] - c.speeds[j]) <= 1e-12 * m) c.speedCoincidence = true;
  c.scalarDegenerate = p.scalar_degenerate();
  return c;
}

CMat stilde_system(const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  const double s2v = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s2 = s2v, s3 = -s2v, s4 = I * s2v, s5 = I * s2v;
  const cplx A = s4 - I * (l + m) / m;
  const cplx B = s5 - I * (l + m) / (l + 2 * m);
  CMat M = CMat::Zero(25, 25);
  int row = 0;
  auto eq = [&](std::initializer_list<std::pair<int, cplx>> terms) {
    for (auto& [k, v] : terms) M(row, k - 1) += v;
    ++row;
  };
  eq({{1, 2.0 * s1}});
  eq({{1, s2}, {2, 2.0 * s1 + s2}, {5, A}});
  eq({{1, s3}, {3, 2.0 * s1 + s3}, {4, B}});
  eq({{1, A}, {3, A}, {4, 2.0 * s1 + s2}});
  eq({{1, B}, {2, B}, {5, 2.0 * s1 + s3}});
  eq({{1, s2}, {6, 2.0 * s1 + s2}, {8, s5}});
  eq({{1, s3}, {7, 2.0 * s1 + s3}, {9, s4}});
  eq({{1, s5}, {7, s5}, {9, 2.0 * s1 + s2}});
  eq({{1, s4}, {6, s4}, {8, 2.0 * s1 + s3}});
  eq({{2, s2}, {6, s2}, {10, 2.0 * (s1 + s2)}, {16, s5}, {19, A}});
  eq({{3, s2}, {6, s3}, {11, 2.0 * s1 + s2 + s3}, {17, s5}, {18, B}});
  eq({{2, s3}, {7, s2}, {12, 2.0 * s1 + s2 + s3}, {14, s4}, {21, A}});
  eq({{3, s3}, {7, s3}, {13, 2.0 * (s1 + s3)}, {15, s4}, {20, B}});
  eq({{2, s5}, {9, s2}, {12, s5}, {14, 2.0 * (s1 + s2)}, {23, A}});
  eq({{3, s5}, {9, s3}, {13, s5}, {15, 2.0 * s1 + s2 + s3}, {22, B}});
  eq({{2, s4}, {8, s2}, {10, s4}, {16, 2.0 * s1 + s2 + s3}, {25, A}});
  eq({{3, s4}, {8, s3}, {11, s4}, {17, 2.0 * (s1 + s3)}, {24, B}});
  eq({{4, s2}, {6, A}, {11, A}, {18, 2.0 * (s1 + s2)}, {24, s5}});
  eq({{5, s2}, {6, B}, {10, B}, {19, 2.0 * s1 + s2 + s3}, {25, s5}});
  eq({{4, s3}, {7, A}, {13, A}, {20, 2.0 * s1 + s2 + s3}, {22, s4}});
  eq({{5, s3}, {7, B}, {12, B}, {21, 2.0 * (s1 + s3)}, {23, s4}});
  eq({{4, s5}, {9, A}, {15, A}, {20, s5}, {22, 2.0 * (s1 + s2)}});
  eq({{5, s5}, {9, B}, {14, B}, {21, s5}, {23, 2.0 * s1 + s2 + s3}});
  eq({{4, s4}, {8, A}, {17, A}, {18, s4}, {24, 2.0 * s1 + s2 + s3}});
  eq({{5, s4}, {8, B}, {16, B}, {19, s4}, {25, 2.0 * (s1 + s3)}});
  return M;
}

std::array<cplx, 5> s_system_residual(const LameParams& p, const std::array<cplx, 5>& s) {
  const double l = p.lambda, m = p.mu;
  const cplx s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3], s5 = s[4];
  const double a = (l + m) / m, b = (l + m) / (l + 2 * m);
  return {s1 * s1 - 1.0,
          2.0 * s1 * s2 + s2 * s2 + s4 * s5 - I * a * s5 - a,
          2.0 * s1 * s3 + s3 * s3 + s4 * s5 - I * b * s4 + 1.0 - m / (l + 2 * m),
          2.0 * s1 * s4 + s2 * s4 + s3 * s4 - I * a * s1 - I * a * s3,
          // printed with -i b s1 - b; that line fails at the printed s, this is the (n,k) block
          2.0 * s1 * s5 + s3 * s5 + s2 * s5 - I * b * (s1 + s2)};
}

BoundaryPoint BoundaryPoint::origin(const RVec& kappas) {
  BoundaryPoint b;
  b.n = static_cast<int>(kappas.size()) + 1;
  b.gInv = RMat::Identity(b.n - 1, b.n - 1);
  b.kappas = kappas;
  b.validate();
  return b;
}

BoundaryPoint BoundaryPoint::general(const RMat& gInv) {
  BoundaryPoint b;
  b.n = static_cast<int>(gInv.rows()) + 1;
  b.gInv = gInv;
  b.validate();
  return b;
}

void BoundaryPoint::validate() const {
  if (n < 2) throw Error(ErrorKind::Config, "dimension n must be >= 2");
  if (gInv.rows() != n - 1 || gInv.cols() != n - 1)
    throw Error(ErrorKind::Shape, "gInv must be (n-1)x(n-1)");
  if ((gInv - gInv.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + gInv.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::Config, "gInv must be symmetric");
  Eigen::SelfAdjointEigenSolver<RMat> es(gInv);
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw Error(ErrorKind::Config, "gInv must be positive definite");
  if (kappas) {
    if (kappas->size() != n - 1) throw Error(ErrorKind::Shape, "kappas must have n-1 entries");
    if (!gInv.isIdentity(0.0))
      throw Error(ErrorKind::Config, "origin normal form requires gInv = identity");
  }
}

const char* tag_name(SymbolTag t) {
  switch (t) {
    case SymbolTag::q1: return "q1";
    case SymbolTag::q0: return "q0";
    case SymbolTag::b1: return "b1";
    case SymbolTag::b0: return "b0";
    case SymbolTag::c2: return "c2";
    case SymbolTag::c1: return "c1";
    case SymbolTag::p1: return "p1";
    case SymbolTag::p0: return "p0";
    case SymbolTag::psi1: return "psi_-1";
    case SymbolTag::psi2: return "psi_-2";
    case SymbolTag::E1: return "E1";
  }
  return "?";
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

CVec vec(const CMat& X) {
  CVec v(X.size());
  for (Eigen::Index j = 0; j < X.cols(); ++j) v.segment(j * X.rows(), X.rows()) = X.col(j);
  return v;
}

CMat unvec(const CVec& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) throw Error(ErrorKind::Shape, "unvec: size mismatch");
  CMat X(n, n);
  for (int j = 0; j < n; ++j) X.col(j) = v.segment(j * n, n);
  return X;
}

CMat kron(const CMat& A, const CMat& B) {
  CMat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

CMat sylvester_matrix(const CMat& L, const CMat& M) {
  if (L.rows() != L.cols() || M.rows() != M.cols() || L.rows() != M.rows())
    throw Error(ErrorKind::Shape, "sylvester_matrix: L and M must be square and equal size");
  const CMat In = CMat::Identity(L.rows(), L.rows());
  return kron(In, L) + kron(M.transpose(), In);
}

CVec kron_vec(const CMat& L, const CMat& M, const CMat& X) {
  if (X.rows() != L.rows() || X.cols() != L.cols())
    throw Error(ErrorKind::Shape, "kron_vec: X must match L");
  return sylvester_matrix(L, M) * vec(X);
}

CMat rank_one_update_inverse(cplx a, cplx b, const RVec& xi) {
  if (a == 0.0) throw Error(ErrorKind::Singular, "rank_one_update_inverse: a = 0");
  const double r2 = xi.squaredNorm();
  const cplx den = a + b * r2;
  if (std::abs(den) <= 1e-14 * std::max(std::abs(a), std::abs(b) * r2))
    throw Error(ErrorKind::Singular, "rank_one_update_inverse: a + b|xi|^2 = 0");
  const int d = static_cast<int>(xi.size());
  CMat R = CMat::Identity(d, d) / a;
  const CVec x = xi.cast<cplx>();
  R -= (b / (a * den)) * (x * x.transpose());
  return R;
}

}  // namespace edtn
