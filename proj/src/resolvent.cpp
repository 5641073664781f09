#include "nct/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nct {

std::vector<Complex> eigenvalues(const TruncatedOperator& T) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.matrix(), false);
  if (es.info() != Eigen::Success) throw Error("eigensolver failed");
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + T.box().dim());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
  });
  return out;
}

std::vector<EigenCluster> spectrum(const TruncatedOperator& T, SpectrumOptions opts) {
  std::vector<Complex> ev = eigenvalues(T);
  std::vector<EigenCluster> clusters;
  for (Complex z : ev) {
    bool merged = false;
    for (auto& c : clusters) {
      if (std::abs(z - c.value) <= opts.cluster_tol) {
        // running mean keeps the cluster centroid stable
        c.value = (c.value * double(c.multiplicity) + z) / double(c.multiplicity + 1);
        ++c.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({z, 1});
  }
  return clusters;
}

double spectral_distance(const std::vector<Complex>& spectrum, Complex lambda) {
  double d = std::numeric_limits<double>::infinity();
  for (Complex z : spectrum) d = std::min(d, std::abs(z - lambda));
  return d;
}

TruncatedOperator exact_resolvent(const TruncatedOperator& T, Complex lambda, double guard_frac) {
  double guard = guard_frac * std::max(T.matrix().norm(), 1.0);
  double d = spectral_distance(eigenvalues(T), lambda);
  if (d < guard) {
    std::ostringstream os;
    os << "lambda near spectrum: distance " << d << " below guard " << guard;
    throw DomainError(os.str());
  }
  Eigen::MatrixXcd A = T.matrix();
  A.diagonal().array() -= lambda;
  return TruncatedOperator(T.theta(), T.box(), A.partialPivLu().inverse(),
                           "(" + T.provenance() + " - lambda)^{-1}");
}

DecayFit minimal_growth_check(const TruncatedOperator& T, double ray_arg, double t_lo,
                              double t_hi, int samples, double guard_frac) {
  std::vector<Complex> ev = eigenvalues(T);
  double guard = guard_frac * std::max(T.matrix().norm(), 1.0);
  Complex dir = std::polar(1.0, ray_arg);
  for (Complex z : ev) {
    // distance from z to the ray segment {t*dir : t in [t_lo, t_hi]}
    double t = std::clamp((z * std::conj(dir)).real(), t_lo, t_hi);
    if (std::abs(z - t * dir) < guard) {
      std::ostringstream os;
      os << "eigenvalue " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
         << "i lies on the ray arg = " << ray_arg;
      throw DomainError(os.str());
    }
  }
  Eigen::MatrixXcd M = T.matrix();
  return ray_decay(
      [&](Complex lambda) {
        Eigen::MatrixXcd A = M;
        A.diagonal().array() -= lambda;
        Eigen::MatrixXcd R = A.partialPivLu().inverse();
        return Eigen::BDCSVD<Eigen::MatrixXcd>(R).singularValues()(0);
      },
      ray_arg, t_lo, t_hi, samples);
}

std::vector<TruncatedOperator> parametrix_operators(const ClassicalSymbol& sym, int Jmax,
                                                    Complex lambda, int N, EvalPolicy policy) {
  ClassicalSymbol sigma = parametric_parametrix(sym, Jmax);
  const ThetaPtr& theta = sym.theta();
  LatticeBox box(theta->n(), N);

  // per-component tables, one shared evaluation cache per lattice point
  std::vector<ToroidalSymbolTable> tables(Jmax + 1, ToroidalSymbolTable(theta, N));
  for (const auto& k : box.points()) {
    Eigen::VectorXd xi(theta->n());
    for (int j = 0; j < theta->n(); ++j) xi(j) = k[j];
    Evaluator ev(theta, xi, lambda, policy);
    for (int j = 0; j <= Jmax; ++j) tables[j].set(k, ev.eval(sigma.component(j).expr));
  }

  std::vector<TruncatedOperator> out;
  ToroidalSymbolTable partial(theta, N);
  for (int j = 0; j <= Jmax; ++j) {
    for (const auto& k : box.points()) partial.set(k, partial.at(k) + tables[j].at(k));
    TruncatedOperator q = quantize(partial);
    out.emplace_back(theta, box, q.matrix(), "Q_" + std::to_string(j));
  }
  return out;
}

std::vector<double> parametrix_residuals(const ClassicalSymbol& sym, int Jmax, Complex lambda,
                                         int N, int margin, EvalPolicy policy) {
  std::vector<TruncatedOperator> Q = parametrix_operators(sym, Jmax, lambda, N, policy);
  TruncatedOperator P = quantize(sym, N, std::nullopt, policy);
  Eigen::MatrixXcd A = P.matrix();
  A.diagonal().array() -= lambda;
  Eigen::MatrixXcd Pr = interior_projector(P.box(), margin);
  std::vector<double> out;
  for (const auto& q : Q) {
    Eigen::MatrixXcd R = A * q.matrix();
    R.diagonal().array() -= 1.0;
    out.push_back(Eigen::BDCSVD<Eigen::MatrixXcd>(Pr * R * Pr).singularValues()(0));
  }
  return out;
}

ResolventReport resolvent_vs_parametrix(const ClassicalSymbol& sym, int J,
                                        const std::vector<Complex>& lambda_grid, int N, int margin,
                                        EvalPolicy policy) {
  ResolventReport rep;
  rep.cutoff = N;
  rep.margin = margin;
  rep.depth = J;
  TruncatedOperator P = quantize(sym, N, std::nullopt, policy);
  rep.spectrum_snapshot = spectrum(P);
  Eigen::MatrixXcd Pr = interior_projector(P.box(), margin);

  std::vector<double> fit_t, fit_y;
  for (Complex lambda : lambda_grid) {
    TruncatedOperator R(P.theta(), P.box(), Eigen::MatrixXcd::Zero(P.box().dim(), P.box().dim()));
    try {
      R = exact_resolvent(P, lambda);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "lambda = " << lambda.real() << (lambda.imag() < 0 ? "-" : "+")
         << std::abs(lambda.imag()) << "i skipped: " << e.what();
      rep.skipped.push_back(os.str());
      continue;
    }
    rep.lambda_grid.push_back(lambda);
    rep.exact_norms.push_back(op_norm(R));
    std::vector<TruncatedOperator> Q = parametrix_operators(sym, J, lambda, N, policy);
    rep.residuals.push_back(parametrix_residuals(sym, J, lambda, N, margin, policy));
    double diff = Eigen::BDCSVD<Eigen::MatrixXcd>(Pr * (R.matrix() - Q.back().matrix()) * Pr)
                      .singularValues()(0);
    rep.difference_norms.push_back(diff);
    if (diff > 0.0) {
      fit_t.push_back(std::abs(lambda));
      fit_y.push_back(diff);
    }
  }
  if (fit_t.size() >= 3) rep.difference_fit = fit_decay(fit_t, fit_y);
  return rep;
}

DecayFit trace_chain(const std::vector<TruncatedOperator>& factors,
                     const std::vector<double>& orders, const TruncatedOperator& P, double w,
                     const std::vector<Complex>& lambda_grid, double guard_frac) {
  if (factors.empty() || factors.size() != orders.size())
    throw ConfigError("trace_chain: factors and orders must be nonempty and aligned");
  const int m = int(factors.size()) - 1;  // number of resolvent factors
  const int n = P.theta()->n();
  double a = 0.0;
  for (double o : orders) a += o;
  if (!(-double(m) * w + a < -double(n))) {
    std::ostringstream os;
    os << "trace_chain precondition violated: -(resolvent count)*w + sum(orders) = " << -m * w + a
       << " is not < -n = " << -n;
    throw DomainError(os.str());
  }

  std::vector<Complex> ev = eigenvalues(P);
  double guard = guard_frac * std::max(P.matrix().norm(), 1.0);
  std::vector<double> t, y;
  for (Complex lambda : lambda_grid) {
    if (spectral_distance(ev, lambda) < guard) continue;
    Eigen::MatrixXcd A = P.matrix();
    A.diagonal().array() -= lambda;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::MatrixXcd chain = factors[0].matrix();
    for (size_t j = 1; j < factors.size(); ++j) chain = factors[j].matrix() * lu.solve(chain);
    double tr = std::abs(chain.trace());
    if (tr > 0.0) {
      t.push_back(1.0 + std::abs(lambda));
      y.push_back(tr);
    }
  }
  return fit_decay(t, y);
}

}  // namespace nct
