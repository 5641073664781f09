#include "nct/powers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nct {

namespace {

double spec_norm(const Eigen::MatrixXcd& M) {
  return Eigen::BDCSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

// principal-branch lambda^z with the kernel convention 0^z := 0
Complex branch_pow(Complex lambda, Complex z, double kernel_tol) {
  if (std::abs(lambda) <= kernel_tol) return 0.0;
  if (lambda.real() < 0.0 && std::abs(lambda.imag()) <= 1e-14 * std::abs(lambda.real())) {
    std::ostringstream os;
    os << "eigenvalue " << lambda.real() << " on the branch cut (-inf, 0)";
    throw DomainError(os.str());
  }
  return std::pow(lambda, z);
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& M, Complex z, double kernel_tol,
                              double normal_tol) {
  double nrm = M.norm();
  double defect = (M.adjoint() * M - M * M.adjoint()).norm();
  if (defect > normal_tol * std::max(nrm * nrm, 1.0)) {
    std::ostringstream os;
    os << "spectral route refused: normality defect " << defect << " exceeds tolerance";
    throw DomainError(os.str());
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (int i = 0; i < d.size(); ++i) d(i) = branch_pow(es.eigenvalues()(i), z, kernel_tol);
  // for normal M the eigenbasis is unitary up to conditioning; solve, don't invert
  return es.eigenvectors() * d.asDiagonal() *
         es.eigenvectors().partialPivLu().solve(
             Eigen::MatrixXcd::Identity(M.rows(), M.cols()));
}

}  // namespace

TruncatedOperator power_spectral(const TruncatedOperator& T, Complex z, PowerOptions opts) {
  double kernel_tol = opts.kernel_tol_frac * std::max(T.matrix().norm(), 1.0);
  return TruncatedOperator(T.theta(), T.box(),
                           matrix_power(T.matrix(), z, kernel_tol, opts.normal_tol),
                           T.provenance() + "^z (spectral)");
}

ContourPowerResult power_contour(const TruncatedOperator& T, Complex z, double r,
                                 PowerOptions opts) {
  ContourPowerResult res{T, 0.0, 0, r, 0.0};
  if (z.real() >= 0.0) {
    // P^z = P^m P^{z-m}: shift into the convergent half-plane Re z < 0
    res.shift_m = int(std::ceil(z.real())) + 1;
    ContourPowerResult base = power_contour(T, z - double(res.shift_m), r, opts);
    Eigen::MatrixXcd M = base.op.matrix();
    for (int i = 0; i < res.shift_m; ++i) M = T.matrix() * M;
    res.op = TruncatedOperator(T.theta(), T.box(), std::move(M), T.provenance() + "^z (contour)");
    res.error_estimate = base.error_estimate * std::pow(spec_norm(T.matrix()), res.shift_m);
    res.r = base.r;
    res.t_max = base.t_max;
    return res;
  }

  std::vector<Complex> ev = eigenvalues(T);
  double min_mod = std::numeric_limits<double>::infinity();
  double kernel_tol = opts.kernel_tol_frac * std::max(T.matrix().norm(), 1.0);
  for (Complex lam : ev) {
    if (std::abs(lam) <= kernel_tol) continue;
    if (lam.real() <= 0.0) {
      std::ostringstream os;
      os << "contour route refused: eigenvalue " << lam.real()
         << (lam.imag() < 0 ? "-" : "+") << std::abs(lam.imag())
         << "i not in the open right half plane";
      throw DomainError(os.str());
    }
    min_mod = std::min(min_mod, std::abs(lam));
  }
  if (!std::isfinite(min_mod)) throw DomainError("contour route refused: spectrum is all kernel");
  if (r <= 0.0) r = 0.5 * min_mod;
  if (r >= min_mod) {
    std::ostringstream os;
    os << "keyhole throat r = " << r << " crosses the spectrum (min modulus " << min_mod << ")";
    throw DomainError(os.str());
  }

  // tail of |lambda^z (T-lambda)^{-1}| ~ t^{Re z - 1} along the rays
  double t_max = keyhole_tmax(z.real() - 1.0, 1.0, opts.quad_tol, 1e3 * r);
  KeyholeContour contour;
  contour.r = r;
  contour.t_max = t_max;

  Eigen::MatrixXcd M = T.matrix();
  const int dim = int(M.rows());
  auto integrate = [&](const QuadratureParams& qp) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& nd : keyhole_nodes(contour, qp)) {
      Eigen::MatrixXcd A = M;
      A.diagonal().array() -= nd.lambda;
      acc += (std::pow(nd.lambda, z) * nd.weight) * A.partialPivLu().inverse();
    }
    return acc;
  };
  Eigen::MatrixXcd I1 = integrate(opts.quad);
  Eigen::MatrixXcd I2 = integrate(refine(opts.quad));
  res.error_estimate = (I1 - I2).norm();
  if (res.error_estimate > 10.0 * opts.quad_tol * std::max(I2.norm(), 1.0)) {
    std::ostringstream os;
    os << "contour quadrature error estimate " << res.error_estimate << " above tolerance "
       << opts.quad_tol;
    throw PrecisionError(os.str());
  }
  res.op = TruncatedOperator(T.theta(), T.box(), std::move(I2), T.provenance() + "^z (contour)");
  res.r = r;
  res.t_max = t_max;
  return res;
}

NcElement element_power(const NcElement& a, Complex z, int cutoff, double kernel_tol_frac) {
  LatticeBox box(a.n(), cutoff);
  Eigen::MatrixXcd L = left_mult_matrix(a, box);
  double kernel_tol = kernel_tol_frac * std::max(L.norm(), 1.0);
  Eigen::MatrixXcd Lz = matrix_power(L, z, kernel_tol, 1e-8);
  Eigen::VectorXcd b = Lz.col(box.index(zero_index(a.n())));
  NcElement::CoeffMap m;
  for (int i = 0; i < box.dim(); ++i)
    if (std::abs(b(i)) > kPruneThreshold) m.emplace(box.point(i), b(i));
  return NcElement(a.theta(), std::move(m));
}

NumericSymbol power_symbol(const ClassicalSymbol& rho, Complex z, int J,
                           const EllipticityData& ell, EvalPolicy policy, QuadratureParams quad) {
  if (ell.c <= 0.0) throw DomainError("power_symbol: positivity refused, c <= 0");
  for (Complex lam : ell.spectral_cloud) {
    if (lam.real() <= 0.0 || std::abs(lam.imag()) > 1e-8 * std::abs(lam)) {
      std::ostringstream os;
      os << "power_symbol: spectral cloud point " << lam.real()
         << (lam.imag() < 0 ? "-" : "+") << std::abs(lam.imag())
         << "i not in (0, inf), positivity refused";
      throw DomainError(os.str());
    }
  }

  const double w = rho.order();
  auto sigma = std::make_shared<ClassicalSymbol>(parametric_parametrix(rho, J));
  const double c = ell.c, cp = ell.c_prime;

  NumericSymbol out;
  out.theta = rho.theta();
  out.order = w * z.real();
  for (int j = 0; j <= J; ++j) {
    NumericComponent comp;
    comp.degree = w * z.real() - j;
    comp.eval = [sigma, j, z, w, c, cp, policy, quad](const Eigen::VectorXd& xi) {
      double s = std::pow(xi.norm(), w);
      double center = 0.5 * (c + cp) * s;
      double radius = (0.5 * (cp - c) + 0.1 * (cp - c)) * s;
      // keep the circle at distance >= c s / 2 from (-inf, 0]
      radius = std::min(std::max(radius, 0.05 * c * s), center - 0.5 * c * s);
      JordanCircle circle{center, radius, /*clockwise=*/true};
      NcElement acc = NcElement::zero(sigma->theta());
      for (const auto& nd : circle_nodes(circle, quad)) {
        Evaluator point_ev(sigma->theta(), xi, nd.lambda, policy);
        acc = acc + point_ev.eval(sigma->component(j).expr) * (std::pow(nd.lambda, z) * nd.weight);
      }
      return acc;
    };
    out.components.push_back(std::move(comp));
  }
  return out;
}

AbsValueResult abs_value(const TruncatedOperator& P, const ClassicalSymbol& sym,
                         PowerOptions opts) {
  AbsValueResult res{power_spectral(compose(adjoint_op(P), P), 0.5, opts), {}};
  ExprPtr principal = sym.principal().expr;
  ExprPtr squared = sym_prod({star_expr(principal), principal});
  ThetaPtr theta = sym.theta();
  double ktf = opts.kernel_tol_frac;
  res.principal = [squared, theta, ktf](const Eigen::VectorXd& xi) {
    NcElement v = eval(squared, theta, xi);
    return element_power(v, 0.5, std::max(8, 2 * v.support_radius()), ktf);
  };
  return res;
}

double group_property_check(const TruncatedOperator& T, Complex z1, Complex z2,
                            PowerOptions opts) {
  TruncatedOperator a = power_spectral(T, z1, opts);
  TruncatedOperator b = power_spectral(T, z2, opts);
  TruncatedOperator c = power_spectral(T, z1 + z2, opts);
  return spec_norm(a.matrix() * b.matrix() - c.matrix());
}

}  // namespace nct
