#include "edtn/symbols.hpp"

#include <cmath>

namespace edtn {

namespace {

struct Geo {
  int n;
  int d;      // n - 1
  RVec gx;    // gInv xi
  double r;   // |xi|_g
  CVec gxc, xic;
};

Geo geo(const BoundaryPoint& pt, const RVec& xi) {
  pt.validate();
  if (xi.size() != pt.n - 1) throw Error(ErrorKind::Shape, "xi must have n-1 components");
  Geo g;
  g.n = pt.n;
  g.d = pt.n - 1;
  g.gx = pt.gInv * xi;
  const double r2 = xi.dot(g.gx);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw Error(ErrorKind::Config, "zero or invalid covector xi");
  g.r = std::sqrt(r2);
  g.gxc = g.gx.cast<cplx>();
  g.xic = xi.cast<cplx>();
  return g;
}

const RVec& need_kappas(const BoundaryPoint& pt) {
  if (!pt.kappas) throw Error(ErrorKind::Config, "origin normal form (kappas) required");
  return *pt.kappas;
}

SymbolMatrix tagged(SymbolTag t, CMat v, const RVec& xi) {
  SymbolMatrix s;
  s.tag = t;
  s.value = std::move(v);
  s.xi = xi;
  return s;
}

}  // namespace

SymbolMatrix sym_b1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  require_symbols(p);
  const Geo g = geo(pt, xi);
  const double l = p.lambda, m = p.mu;
  CMat B = CMat::Zero(g.n, g.n);
  B.block(0, g.d, g.d, 1) = I * ((l + m) / m) * g.gxc;
  B.block(g.d, 0, 1, g.d) = I * ((l + m) / (l + 2 * m)) * g.xic.transpose();
  return tagged(SymbolTag::b1, B, xi);
}

SymbolPair sym_b(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  SymbolPair out;
  out.first = sym_b1(pt, xi, p);
  const RVec& k = need_kappas(pt);
  const int n = pt.n, d = n - 1;
  const double K = k.sum();
  // at the origin: half the trace of dn g is sum(kappa), Gamma^j_kn = kappa_k delta_jk,
  // tangential Christoffel symbols vanish
  CMat B0 = CMat::Zero(n, n);
  for (int j = 0; j < d; ++j) B0(j, j) = K + 2.0 * k(j);
  B0(d, d) = K;
  out.second = tagged(SymbolTag::b0, B0, xi);
  return out;
}

SymbolMatrix sym_c2(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  require_symbols(p);
  return tagged(SymbolTag::c2, -c2_plus(pt, xi, p), xi);
}

CMat c2_plus(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  const Geo g = geo(pt, xi);
  const double l = p.lambda, m = p.mu;
  CMat C = CMat::Zero(g.n, g.n);
  C.block(0, 0, g.d, g.d) = g.r * g.r * CMat::Identity(g.d, g.d) +
                            ((l + m) / m) * g.gxc * g.xic.transpose();
  C(g.d, g.d) = m / (l + 2 * m) * g.r * g.r;
  return C;
}

SymbolPair sym_c2_c1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  SymbolPair out;
  out.first = sym_c2(pt, xi, p);
  const RVec& k = need_kappas(pt);
  const double l = p.lambda, m = p.mu;
  const int n = pt.n, d = n - 1;
  const double K = k.sum();
  // Gamma^beta_{n beta} = sum(kappa), Gamma^j_{n alpha} = kappa_j delta,
  // Gamma^n_{k alpha} = -kappa_k delta; everything tangential drops out
  CMat C1 = CMat::Zero(n, n);
  for (int j = 0; j < d; ++j) {
    C1(j, d) = I * ((l + m) / m * xi(j) * K + 2.0 * k(j) * xi(j));
    C1(d, j) = -2.0 * I * m / (l + 2 * m) * k(j) * xi(j);
  }
  out.second = tagged(SymbolTag::c1, C1, xi);
  return out;
}

SymbolMatrix q1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  const DerivedConstants c = derive_constants(p);
  const Geo g = geo(pt, xi);
  const cplx s1 = c.si(1), s2 = c.si(2), s3 = c.si(3), s4 = c.si(4), s5 = c.si(5);
  CMat Q = CMat::Zero(g.n, g.n);
  Q.block(0, 0, g.d, g.d) =
      s1 * g.r * CMat::Identity(g.d, g.d) + (s2 / g.r) * g.gxc * g.xic.transpose();
  Q.block(0, g.d, g.d, 1) = s4 * g.gxc;
  Q.block(g.d, 0, 1, g.d) = s5 * g.xic.transpose();
  Q(g.d, g.d) = (s1 + s3) * g.r;
  return tagged(SymbolTag::q1, Q, xi);
}

double verify_q1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  const CMat Q = q1(pt, xi, p).value;
  const CMat B = sym_b1(pt, xi, p).value;
  const CMat C = c2_plus(pt, xi, p);
  return max_abs(Q * Q - B * Q - C) / std::max(1.0, max_abs(C));
}

CMat sylvester_inverse_closed(const BoundaryPoint& pt, const RVec& xi, const LameParams& p,
                              const std::array<cplx, 25>& st) {
  require_symbols(p);
  const Geo g = geo(pt, xi);
  const int n = g.n, d = g.d, N = n * n;
  const double r = g.r;
  auto S = [&](int k) { return st[k - 1]; };
  const CMat In = CMat::Identity(n, n);
  const CMat gxi = g.gxc * g.xic.transpose();  // (g xi)_j xi_k

  auto blk = [&](cplx a, cplx b, cplx cc, cplx dd) {
    CMat B = CMat::Zero(n, n);
    B.block(0, 0, d, d) = (a / r) * gxi;
    B(d, d) = b * r;
    B.block(0, d, d, 1) = cc * g.gxc;
    B.block(d, 0, 1, d) = dd * g.xic.transpose();
    return B;
  };
  CMat A1 = CMat::Zero(n, n);
  A1.block(0, 0, d, d) = gxi / r;
  A1(d, d) = r;
  CMat A2 = CMat::Zero(n, n);
  A2.block(0, d, d, 1) = g.gxc;
  A2.block(d, 0, 1, d) = g.xic.transpose();

  CMat R6 = CMat::Zero(n, n);
  R6.block(0, 0, d, d) = (S(6) / r) * gxi.transpose();
  R6(d, d) = S(7) * r;
  CMat R8 = CMat::Zero(n, n);
  R8.block(0, d, d, 1) = S(9) * g.xic;
  R8.block(d, 0, 1, d) = S(8) * g.gxc.transpose();

  // theta(d1,d2;d3,d4) is diagonal on vec index (row i, col block b)
  auto theta_apply = [&](int k0, const CMat& X) {
    CMat Y = X;
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i) {
        const cplx w = (b < d) ? (i < d ? S(k0) : S(k0 + 1)) : (i < d ? S(k0 + 2) : S(k0 + 3));
        Y.row(b * n + i) *= w;
      }
    return Y;
  };

  CMat T = S(1) * r * CMat::Identity(N, N);
  T += kron(In, blk(S(2), S(3), 0.0, 0.0));
  T += kron(In, blk(0.0, 0.0, S(4), S(5)));
  T += kron(R6, In);
  T += kron(R8, In);
  const CMat IA1 = kron(In, A1), IA2 = kron(In, A2);
  const CMat A1T = kron(A1.transpose(), In), A2T = kron(A2.transpose(), In);
  T += theta_apply(10, IA1 * A1T) / r;
  T += theta_apply(14, IA1 * A2T) / r;
  T += theta_apply(18, IA2 * A1T) / r;
  T += theta_apply(22, IA2 * A2T) / r;
  return T / (r * r);
}

SylvesterOperator sylvester_operator(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  SylvesterOperator op;
  op.M = q1(pt, xi, p).value;
  op.L = op.M - sym_b1(pt, xi, p).value;
  op.U = sylvester_matrix(op.L, op.M);
  op.Uinv = sylvester_inverse_closed(pt, xi, p, derive_constants(p).sTilde);
  op.gInv = pt.gInv;
  op.xi = xi;
  op.params = p;
  op.n = pt.n;
  return op;
}

CMat solve_sylvester(const SylvesterOperator& op, const CMat& E) {
  if (E.rows() != op.n || E.cols() != op.n) throw Error(ErrorKind::Shape, "E must be n x n");
  return unvec(op.Uinv * vec(E), op.n);
}

CMat solve_sylvester_dense(const SylvesterOperator& op, const CMat& E) {
  if (E.rows() != op.n || E.cols() != op.n) throw Error(ErrorKind::Shape, "E must be n x n");
  return unvec(op.U.fullPivLu().solve(vec(E)), op.n);
}

double sylvester_residual(const SylvesterOperator& op, const CMat& X, const CMat& E) {
  return max_abs(op.L * X + X * op.M - E) / std::max(1.0, max_abs(E));
}

SymbolMatrix E1_origin(const RVec& k, const RVec& xi, const LameParams& p) {
  const DerivedConstants c = derive_constants(p);
  const BoundaryPoint pt = BoundaryPoint::origin(k);
  const Geo g = geo(pt, xi);
  const int n = g.n, d = g.d;
  const double l = p.lambda, m = p.mu, r = g.r;
  const cplx s1 = c.si(1), s2 = c.si(2), s3 = c.si(3), s4 = c.si(4), s5 = c.si(5);
  const double K = k.sum();
  const double Kx = (k.array() * xi.array() * xi.array()).sum();
  const CMat X = g.xic * g.xic.transpose();

  CMat E = s1 * (K * r - Kx / r) * CMat::Identity(n, n);
  E.block(0, 0, d, d) += 2.0 * s1 * r * k.cast<cplx>().asDiagonal().toDenseMatrix() +
                         s2 * (K / r + Kx / (r * r * r)) * X;
  for (int j = 0; j < d; ++j) {
    E(j, d) += (s4 - I * (l + m) / m) * K * xi(j) - 2.0 * I * k(j) * xi(j);
    E(d, j) += s5 * K * xi(j) + 2.0 * I * m / (l + 2 * m) * k(j) * xi(j);
  }
  E(d, d) += s3 * (K * r - Kx / r);
  return tagged(SymbolTag::E1, E, xi);
}

SymbolMatrix q0_origin(const RVec& k, const RVec& xi, const LameParams& p) {
  const BoundaryPoint pt = BoundaryPoint::origin(k);
  const SylvesterOperator op = sylvester_operator(pt, xi, p);
  return tagged(SymbolTag::q0, solve_sylvester(op, E1_origin(k, xi, p).value), xi);
}

double q0nn_from_d(const RVec& k, const RVec& xi, double d1, double d2) {
  const double Kx = (k.array() * xi.array() * xi.array()).sum();
  return d1 * k.sum() - 2.0 * d2 * Kx / xi.squaredNorm();
}

CMat q0_origin_printed_table(const RVec& k, const RVec& xi, const LameParams& p,
                             const std::array<cplx, 25>& st) {
  require_symbols(p);
  const double l = p.lambda, m = p.mu;
  const int d = static_cast<int>(xi.size()), n = d + 1;
  const double r = xi.norm();
  const double s2v = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s2 = s2v, s3 = -s2v, s4 = I * s2v, s5 = I * s2v;
  auto S = [&](int i) { return st[i - 1]; };
  const double K = k.sum();
  const double Kx = (k.array() * xi.array() * xi.array()).sum();
  const cplx A = s4 - I * (l + m) / m;
  const cplx w = 2.0 * I * m / (l + 2 * m);
  const CVec x = xi.cast<cplx>();
  const CVec kx = (k.array() * xi.array()).matrix().cast<cplx>();
  const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;

  CMat Q = CMat::Zero(n, n);
  Q.block(0, 0, d, d) =
      2.0 * s1 * S(1) * k.cast<cplx>().asDiagonal().toDenseMatrix() +
      (2.0 * s1 * S(2) + w * S(4)) * (x * kx.transpose()) / r2 +
      (2.0 * s1 * S(6) + 2.0 * (s4 - I) * S(9) - 2.0 * s4 * S(8)) * (kx * x.transpose()) / r2 +
      (s1 * (S(2) + S(6) + S(10) + S(22)) + s2 * (S(1) + S(2) + S(6) + S(10)) + s3 * S(22) +
       A * (S(8) + S(14)) + s5 * (S(4) + S(18))) * K * (x * x.transpose()) / r2 +
      (s2 * S(2) + (s1 + s2) * S(10) + w * S(18) - 2.0 * I * S(14) -
       s1 * (S(2) + S(6) + S(22)) + s2 * (S(1) + S(6)) - s3 * S(22)) * Kx * (x * x.transpose()) / r4;
  Q.block(0, d, d, 1) =
      (s1 * (S(4) + S(9) + S(14) - S(18)) + s2 * (S(9) + S(14)) + s3 * (S(4) - S(18)) +
       A * (S(1) + S(2) + S(7) - S(10)) + s5 * S(22)) * K * x / r +
      ((s1 + s2) * S(14) + w * S(22) - s1 * (S(4) + S(9) - S(18)) + s3 * (-S(4) + S(18)) +
       s2 * S(9) - 2.0 * I * s2 + 2.0 * (I - 2.0 * s4) * S(10)) * Kx * x / r3 +
      (-2.0 * I * (S(1) + S(7)) - 2.0 * s2 * S(9) + 2.0 * (s1 + s2) * S(8)) * kx / r;
  Q.block(d, 0, 1, d) =
      ((w * (S(1) + S(3)) + 2.0 * s1 * S(5)) * kx / r +
       (s1 * (S(5) + S(8) + S(15) + S(19)) + s2 * (S(5) + S(19)) + s3 * (S(8) + S(15)) +
        A * S(23) + s5 * (S(1) + S(3) + S(6) + S(11))) * K * x / r +
       ((s1 + s2) * S(19) + s2 * S(5) - 2.0 * I * S(23) - s1 * (S(5) + S(8) + S(15)) -
        s3 * (S(8) + S(15)) + w * (S(6) + S(11))) * Kx * x / r3)
          .transpose();
  Q(d, d) = (s1 * (S(3) + S(7) - S(11) + S(23)) + s2 * S(23) + s3 * (S(1) + S(3) + S(7) - S(11)) +
             A * (S(5) - S(19)) + s5 * (S(9) + S(15))) * K +
            (-2.0 * I * (S(5) - S(19)) + w * (S(8) + S(15)) - s1 * (S(3) + S(7) - S(11)) +
             (s1 + s2) * S(23) + s3 * (-S(1) - S(3) - S(7) + S(11))) * Kx / r2;
  return Q;
}

SymbolMatrix dtn_p1(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  const CMat Q = q1(pt, xi, p).value;
  const int n = pt.n, d = n - 1;
  const double l = p.lambda, m = p.mu;
  CMat D = CMat::Zero(n, n);
  D.block(0, 0, d, d) = (m * pt.gInv.inverse()).cast<cplx>();
  D(d, d) = l + 2 * m;
  CMat P = D * Q;
  for (int j = 0; j < d; ++j) {
    P(j, d) -= I * m * xi(j);
    P(d, j) -= I * l * xi(j);
  }
  return tagged(SymbolTag::p1, P, xi);
}

SymbolMatrix dtn_p0(const RVec& k, const RVec& xi, const LameParams& p) {
  const CMat Q0 = q0_origin(k, xi, p).value;
  const int n = static_cast<int>(xi.size()) + 1, d = n - 1;
  CMat P = Q0;
  P.topRows(d) *= p.mu;
  P.row(d) *= (p.lambda + 2 * p.mu);
  P(d, d) -= p.lambda * k.sum();
  return tagged(SymbolTag::p0, P, xi);
}

SymbolPair dtn_symbols(const BoundaryPoint& pt, const RVec& xi, const LameParams& p) {
  SymbolPair out;
  out.first = dtn_p1(pt, xi, p);
  out.second = dtn_p0(need_kappas(pt), xi, p);
  return out;
}

ResolventSymbol::ResolventSymbol(int order, CMat p1, CMat p0, RVec xi, LameParams params)
    : order_(order), p1_(std::move(p1)), p0_(std::move(p0)), xi_(std::move(xi)), params_(params) {
  const DerivedConstants c = derive_constants(params_);
  const double r = xi_.norm();
  for (int i = 0; i < 4; ++i) poles_[i] = c.speeds[i] * r;
}

void ResolventSymbol::check_tau(cplx tau) const {
  const double r = xi_.norm();
  for (double pl : poles_)
    if (std::abs(tau - pl) < 1e-8 * r)
      throw Error(ErrorKind::PoleProximity, "tau within 1e-8|xi| of a resolvent pole");
}

CMat ResolventSymbol::psi1_dense(cplx tau) const {
  check_tau(tau);
  const int n = static_cast<int>(p1_.rows());
  return (p1_ - tau * CMat::Identity(n, n)).partialPivLu().inverse();
}

CMat ResolventSymbol::psi1_closed(cplx tau) const {
  check_tau(tau);
  const double l = params_.lambda, m = params_.mu, r = xi_.norm();
  const double s2v = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s2 = s2v, s3 = -s2v, s4 = I * s2v, s5 = I * s2v;
  const int d = static_cast<int>(xi_.size()), n = d + 1;
  const cplx bt = (s1 + s3) * (l + 2 * m) * r - tau;
  const cplx u = m * (s4 - I);
  const cplx v = s5 * (l + 2 * m) - I * l;
  const cplx at = s1 * m * r - tau;
  const cplx btil = s2 * m / r - u * v / bt;
  const CMat sigma = rank_one_update_inverse(at, btil, xi_);
  const CVec x = xi_.cast<cplx>();
  CMat psi(n, n);
  psi.block(0, 0, d, d) = sigma;
  psi.block(0, d, d, 1) = -(u / bt) * (sigma * x);
  psi.block(d, 0, 1, d) = -(v / bt) * (x.transpose() * sigma);
  psi(d, d) = 1.0 / bt + (u * v / (bt * bt)) * (x.transpose() * sigma * x)(0, 0);
  return psi;
}

CMat ResolventSymbol::psi2(cplx tau) const {
  const CMat P = psi1_dense(tau);
  return -P * p0_ * P;
}

CMat ResolventSymbol::operator()(cplx tau) const { return order_ == -1 ? psi1_dense(tau) : psi2(tau); }

ResolventPair resolvent(const RVec& k, const RVec& xi, const LameParams& p) {
  const BoundaryPoint pt = BoundaryPoint::origin(k);
  const CMat P1 = dtn_p1(pt, xi, p).value;
  const CMat P0 = dtn_p0(k, xi, p).value;
  return {ResolventSymbol(-1, P1, P0, xi, p), ResolventSymbol(-2, P1, P0, xi, p)};
}

cplx omega_printed(double r, cplx tau, const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  const double s2v = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s2 = s2v, s3 = -s2v, s4 = I * s2v, s5 = I * s2v;
  const double tp = 2 * m * r, tm = 2 * m * (l + m) * r / (l + 3 * m);
  const cplx num = m * s2 * ((s1 + s3) * (l + 2 * m) * r - tau) -
                   r * m * (s4 - I) * (s5 * (l + 2 * m) - I * l);
  return num / (r * (tau - tp) * (tau - tm));
}

cplx omega_lemma(double r, cplx tau, const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  const double s2v = (l + m) / (l + 3 * m);
  const cplx s1 = 1.0, s2 = s2v, s3 = -s2v, s4 = I * s2v, s5 = I * s2v;
  const cplx at = s1 * m * r - tau;
  const cplx bt = s2 * m / r - m * (s4 - I) * (s5 * (l + 2 * m) - I * l) / ((s1 + s3) * (l + 2 * m) * r - tau);
  return bt / (at + bt * r * r);
}

std::array<cplx, 7> trace_psi1_terms(int n, double r, cplx t, const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  const cplx D = 4 * m * m * r - (l + 3 * m) * t + 2 * l * m * r;
  const cplx D2 = 2 * m * m * r - (l + 3 * m) * t + 2 * l * m * r;
  return {-(n - 1.0) / (t - m * r),
          (l + 3 * m) / D,
          m * r * (l + m) / ((t - 2 * m * r) * D2),
          m * m * r * r * (l - m) / ((t - m * r) * (2 * m * r - t) * D2),
          4 * std::pow(m, 4) * r * r / ((m * r - t) * D * D),
          -4 * std::pow(m, 5) * r * r * r * (l + m) / ((2 * m * r - t) * D2 * D * D),
          -4 * std::pow(m, 6) * std::pow(r, 4) * (l - m) / ((m * r - t) * (2 * m * r - t) * D2 * D * D)};
}

}  // namespace edtn
