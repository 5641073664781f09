#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>

#include "nct/element.hpp"

namespace nct {

// Expression tree over (xi, lambda) with NcElement leaves. Nodes are
// immutable and shared; the parametrix recursions reuse whole subtrees, and
// the evaluation cache is keyed on node identity.
enum class NodeKind {
  Constant,    // NcElement leaf
  XiMonomial,  // xi^beta
  Lambda,      // the spectral parameter
  Sum,
  Product,     // ordered, noncommutative
  Inverse,
  ScalarPow,   // child^z, child structurally scalar-valued
  BracketNorm, // <xi> = (1+|xi|^2)^{1/2}
  Scaled,      // c * child, c a complex literal
};

struct SymbolNode;
using ExprPtr = std::shared_ptr<const SymbolNode>;

struct SymbolNode {
  NodeKind kind;
  std::optional<NcElement> value;  // Constant
  MultiIndex beta;                 // XiMonomial
  Complex coeff{1.0, 0.0};         // Scaled factor / ScalarPow exponent
  std::vector<ExprPtr> args;
};

// Builders. Sums flatten and drop zero children; products flatten and
// collapse to zero on a zero factor. The empty sum is the zero symbol.
ExprPtr sym_const(NcElement a);
ExprPtr sym_xi(MultiIndex beta);
ExprPtr sym_xi_sq(int n);  // |xi|^2 = sum_j xi_j^2
ExprPtr sym_lambda();
ExprPtr sym_bracket();
ExprPtr sym_zero();
ExprPtr sym_sum(std::vector<ExprPtr> args);
ExprPtr sym_prod(std::vector<ExprPtr> args);
ExprPtr sym_inv(ExprPtr child);
ExprPtr sym_pow(ExprPtr child, Complex z);  // throws unless child is scalar-valued
ExprPtr sym_scale(Complex c, ExprPtr child);

bool is_zero_expr(const ExprPtr& e);
// structural scalar check: every leaf combination has support in {0}
bool is_scalar_expr(const ExprPtr& e);
// true if the tree contains Inverse or non-integer ScalarPow nodes (possible
// singularity at xi = 0 / forbidden lambda)
bool has_singular_nodes(const ExprPtr& e);

struct EvalPolicy {
  int invert_cutoff = 10;       // starting truncation radius for Inverse nodes
  int invert_max_cutoff = 28;   // doubled on residual failure up to this cap
  double invert_tol = 1e-9;     // residual tolerance for Inverse nodes
};

// Bottom-up evaluator for a fixed (xi, lambda); memoizes on node identity so
// shared subtrees (parametrix components) are evaluated once.
class Evaluator {
 public:
  Evaluator(ThetaPtr theta, Eigen::VectorXd xi, std::optional<Complex> lambda,
            EvalPolicy policy = {});

  NcElement eval(const ExprPtr& e);

  const Eigen::VectorXd& xi() const { return xi_; }
  const std::optional<Complex>& lambda() const { return lambda_; }

 private:
  ThetaPtr theta_;
  Eigen::VectorXd xi_;
  std::optional<Complex> lambda_;
  EvalPolicy policy_;
  std::unordered_map<const SymbolNode*, NcElement> cache_;
};

NcElement eval(const ExprPtr& e, const ThetaPtr& theta, const Eigen::VectorXd& xi,
               std::optional<Complex> lambda = std::nullopt, EvalPolicy policy = {});

// d/dxi_j; product rule preserves factor order, d(u^{-1}) = -u^{-1} du u^{-1}.
ExprPtr diff_xi(const ExprPtr& e, int j);
ExprPtr diff_xi(const ExprPtr& e, const MultiIndex& alpha);

// delta_j as a derivation through the tree; reaches Constant leaves.
ExprPtr apply_delta(const ExprPtr& e, int j);
ExprPtr apply_delta(const ExprPtr& e, const MultiIndex& alpha);

// Symbolic adjoint: reverses products, conjugates coefficients, takes the
// NcElement adjoint at Constant leaves. For lambda-free trees.
ExprPtr star_expr(const ExprPtr& e);

}  // namespace nct
