#pragma once

#include "nct/classical.hpp"
#include "nct/cone.hpp"

namespace nct {

// Composition rho1 # rho2: components of degree q1+q2-j for j <= J,
// (r1#r2)_{q1+q2-j} = sum_{k+l+|alpha|=j} 1/alpha! d_xi^alpha r1_{q1-k} delta^alpha r2_{q2-l}.
// Exact (terminating) for differential symbols when J >= q1 + q2.
ClassicalSymbol sharp(const ClassicalSymbol& r1, const ClassicalSymbol& r2, int J);

// Adjoint symbol: rho*_{qbar-j} = sum_{k+|alpha|=j} 1/alpha! delta^alpha d_xi^alpha (r_{q-k})*.
ClassicalSymbol star(const ClassicalSymbol& r, int J);

struct EllipticityData {
  double c = 0.0;        // inf over sphere samples of smallest singular value
  double c_prime = 0.0;  // sup over sphere samples of largest singular value
  std::vector<Eigen::VectorXd> sphere_samples;
  std::vector<Complex> spectral_cloud;  // truncated left-mult eigenvalues, all samples
  PseudoCone theta_cone;                // reported Theta(P), shrunk by sampling slack
};

struct EllipticityOptions {
  int sphere_samples = 64;
  int cutoff = 12;             // truncation for the norm surrogates
  double slack = 0.05;         // sector shrink fraction
  double min_singular = 1e-10; // below this the sample counts as non-elliptic
  unsigned seed = 7;           // sphere sampling for n >= 3
};

EllipticityData ellipticity_data(const HomogeneousSymbol& principal, const ThetaPtr& theta,
                                 EllipticityOptions opts = {});

// Parametrix without parameter: sigma_{-q} = rho_q^{-1},
// sigma_{-q-j} = -sum_{k+l+|alpha|=j, l<j} 1/alpha! rho_q^{-1} d^alpha rho_{q-k} delta^alpha sigma_{-q-l}.
ClassicalSymbol parametrix(const ClassicalSymbol& r, int J);

// Parametrix with parameter, lambda-degree -1: sigma_{-w} = (rho_w - lambda)^{-1},
// same recursion with rho_w replaced by rho_w - lambda in the leading inverse.
ClassicalSymbol parametric_parametrix(const ClassicalSymbol& r, int J);

}  // namespace nct
