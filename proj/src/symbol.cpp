#include "nct/symbol.hpp"

#include <cmath>

#include "nct/element_linalg.hpp"

namespace nct {

namespace {

ExprPtr make_node(SymbolNode node) { return std::make_shared<const SymbolNode>(std::move(node)); }

}  // namespace

ExprPtr sym_const(NcElement a) {
  SymbolNode n;
  n.kind = NodeKind::Constant;
  n.value = std::move(a);
  return make_node(std::move(n));
}

ExprPtr sym_xi(MultiIndex beta) {
  SymbolNode n;
  n.kind = NodeKind::XiMonomial;
  n.beta = std::move(beta);
  return make_node(std::move(n));
}

ExprPtr sym_xi_sq(int n) {
  std::vector<ExprPtr> terms;
  for (int j = 0; j < n; ++j) {
    MultiIndex b(n, 0);
    b[j] = 2;
    terms.push_back(sym_xi(std::move(b)));
  }
  return sym_sum(std::move(terms));
}

ExprPtr sym_lambda() {
  SymbolNode n;
  n.kind = NodeKind::Lambda;
  return make_node(std::move(n));
}

ExprPtr sym_bracket() {
  SymbolNode n;
  n.kind = NodeKind::BracketNorm;
  return make_node(std::move(n));
}

ExprPtr sym_zero() { return sym_sum({}); }

bool is_zero_expr(const ExprPtr& e) {
  if (!e) return true;
  switch (e->kind) {
    case NodeKind::Constant: return e->value->is_zero();
    case NodeKind::Sum: return e->args.empty();
    case NodeKind::Scaled: return e->coeff == Complex(0.0) || is_zero_expr(e->args[0]);
    default: return false;
  }
}

ExprPtr sym_sum(std::vector<ExprPtr> args) {
  std::vector<ExprPtr> flat;
  for (auto& a : args) {
    if (is_zero_expr(a)) continue;
    if (a->kind == NodeKind::Sum)
      flat.insert(flat.end(), a->args.begin(), a->args.end());
    else
      flat.push_back(std::move(a));
  }
  if (flat.size() == 1) return flat[0];
  SymbolNode n;
  n.kind = NodeKind::Sum;
  n.args = std::move(flat);
  return make_node(std::move(n));
}

ExprPtr sym_prod(std::vector<ExprPtr> args) {
  std::vector<ExprPtr> flat;
  Complex scale(1.0);
  for (auto& a : args) {
    if (is_zero_expr(a)) return sym_zero();
    if (a->kind == NodeKind::Product) {
      flat.insert(flat.end(), a->args.begin(), a->args.end());
    } else if (a->kind == NodeKind::Scaled) {
      scale *= a->coeff;
      flat.push_back(a->args[0]);
    } else {
      flat.push_back(std::move(a));
    }
  }
  ExprPtr p;
  if (flat.size() == 1) {
    p = flat[0];
  } else {
    SymbolNode n;
    n.kind = NodeKind::Product;
    n.args = std::move(flat);
    p = make_node(std::move(n));
  }
  return scale == Complex(1.0) ? p : sym_scale(scale, std::move(p));
}

ExprPtr sym_inv(ExprPtr child) {
  SymbolNode n;
  n.kind = NodeKind::Inverse;
  n.args = {std::move(child)};
  return make_node(std::move(n));
}

ExprPtr sym_pow(ExprPtr child, Complex z) {
  if (!is_scalar_expr(child)) throw ConfigError("sym_pow: child is not scalar-valued");
  SymbolNode n;
  n.kind = NodeKind::ScalarPow;
  n.coeff = z;
  n.args = {std::move(child)};
  return make_node(std::move(n));
}

ExprPtr sym_scale(Complex c, ExprPtr child) {
  if (c == Complex(1.0)) return child;
  if (c == Complex(0.0) || is_zero_expr(child)) return sym_zero();
  if (child->kind == NodeKind::Scaled) {
    c *= child->coeff;
    child = child->args[0];
  }
  SymbolNode n;
  n.kind = NodeKind::Scaled;
  n.coeff = c;
  n.args = {std::move(child)};
  return make_node(std::move(n));
}

bool is_scalar_expr(const ExprPtr& e) {
  if (!e) return true;
  switch (e->kind) {
    case NodeKind::Constant: return e->value->is_scalar();
    case NodeKind::XiMonomial:
    case NodeKind::Lambda:
    case NodeKind::BracketNorm: return true;
    default:
      for (const auto& a : e->args)
        if (!is_scalar_expr(a)) return false;
      return true;
  }
}

bool has_singular_nodes(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == NodeKind::Inverse) return true;
  if (e->kind == NodeKind::ScalarPow) {
    double re = e->coeff.real();
    if (e->coeff.imag() != 0.0 || re != std::floor(re) || re < 0.0) return true;
  }
  for (const auto& a : e->args)
    if (has_singular_nodes(a)) return true;
  return false;
}

Evaluator::Evaluator(ThetaPtr theta, Eigen::VectorXd xi, std::optional<Complex> lambda,
                     EvalPolicy policy)
    : theta_(std::move(theta)), xi_(std::move(xi)), lambda_(lambda), policy_(policy) {}

NcElement Evaluator::eval(const ExprPtr& e) {
  if (!e) return NcElement::zero(theta_);
  if (auto it = cache_.find(e.get()); it != cache_.end()) return it->second;

  NcElement out = NcElement::zero(theta_);
  switch (e->kind) {
    case NodeKind::Constant:
      require_same_theta(theta_, e->value->theta());
      out = *e->value;
      break;
    case NodeKind::XiMonomial: {
      double v = 1.0;
      for (size_t j = 0; j < e->beta.size(); ++j)
        for (int r = 0; r < e->beta[j]; ++r) v *= xi_(j);
      out = NcElement::scalar(theta_, v);
      break;
    }
    case NodeKind::Lambda:
      if (!lambda_) throw DomainError("eval: lambda node with no bound parameter");
      out = NcElement::scalar(theta_, *lambda_);
      break;
    case NodeKind::BracketNorm:
      out = NcElement::scalar(theta_, std::sqrt(1.0 + xi_.squaredNorm()));
      break;
    case NodeKind::Sum:
      for (const auto& a : e->args) out = out + eval(a);
      break;
    case NodeKind::Product: {
      out = NcElement::unit(theta_);
      for (const auto& a : e->args) out = mul(out, eval(a));
      break;
    }
    case NodeKind::Inverse: {
      NcElement v = eval(e->args[0]);
      if (v.is_scalar()) {
        Complex s = v.trace();
        if (s == Complex(0.0))
          throw NotInvertibleError("not invertible at this truncation (scalar zero) at inverse node",
                                   std::numeric_limits<double>::infinity());
        out = NcElement::scalar(theta_, 1.0 / s);
      } else {
        int cutoff = policy_.invert_cutoff;
        for (;;) {
          try {
            out = invert(v, cutoff, policy_.invert_tol).inverse;
            break;
          } catch (NotInvertibleError& err) {
            if (cutoff >= policy_.invert_max_cutoff)
              throw NotInvertibleError(std::string(err.what()) + " at inverse node",
                                       err.condition);
            cutoff = std::min(2 * cutoff, policy_.invert_max_cutoff);
          }
        }
      }
      break;
    }
    case NodeKind::ScalarPow: {
      Complex s = eval(e->args[0]).trace();
      out = NcElement::scalar(theta_, std::pow(s, e->coeff));
      break;
    }
    case NodeKind::Scaled:
      out = eval(e->args[0]) * e->coeff;
      break;
  }
  cache_.emplace(e.get(), out);
  return out;
}

NcElement eval(const ExprPtr& e, const ThetaPtr& theta, const Eigen::VectorXd& xi,
               std::optional<Complex> lambda, EvalPolicy policy) {
  Evaluator ev(theta, xi, lambda, policy);
  return ev.eval(e);
}

ExprPtr diff_xi(const ExprPtr& e, int j) {
  if (!e || is_zero_expr(e)) return sym_zero();
  switch (e->kind) {
    case NodeKind::Constant:
    case NodeKind::Lambda:
      return sym_zero();
    case NodeKind::XiMonomial: {
      int b = j < int(e->beta.size()) ? e->beta[j] : 0;
      if (b == 0) return sym_zero();
      MultiIndex nb = e->beta;
      nb[j] -= 1;
      return sym_scale(double(b), sym_xi(std::move(nb)));
    }
    case NodeKind::BracketNorm: {
      // d<xi>/dxi_j = xi_j <xi>^{-1}
      MultiIndex ej(j + 1, 0);
      ej[j] = 1;
      return sym_prod({sym_xi(std::move(ej)), sym_pow(sym_bracket(), -1.0)});
    }
    case NodeKind::Sum: {
      std::vector<ExprPtr> terms;
      for (const auto& a : e->args) terms.push_back(diff_xi(a, j));
      return sym_sum(std::move(terms));
    }
    case NodeKind::Product: {
      std::vector<ExprPtr> terms;
      for (size_t i = 0; i < e->args.size(); ++i) {
        std::vector<ExprPtr> factors = e->args;
        factors[i] = diff_xi(e->args[i], j);
        terms.push_back(sym_prod(std::move(factors)));
      }
      return sym_sum(std::move(terms));
    }
    case NodeKind::Inverse: {
      ExprPtr du = diff_xi(e->args[0], j);
      if (is_zero_expr(du)) return sym_zero();
      return sym_scale(-1.0, sym_prod({e, du, e}));
    }
    case NodeKind::ScalarPow: {
      ExprPtr du = diff_xi(e->args[0], j);
      if (is_zero_expr(du)) return sym_zero();
      return sym_scale(e->coeff, sym_prod({sym_pow(e->args[0], e->coeff - 1.0), du}));
    }
    case NodeKind::Scaled:
      return sym_scale(e->coeff, diff_xi(e->args[0], j));
  }
  return sym_zero();
}

ExprPtr diff_xi(const ExprPtr& e, const MultiIndex& alpha) {
  ExprPtr out = e;
  for (size_t j = 0; j < alpha.size(); ++j)
    for (int r = 0; r < alpha[j]; ++r) out = diff_xi(out, int(j));
  return out;
}

ExprPtr apply_delta(const ExprPtr& e, int j) {
  if (!e || is_zero_expr(e)) return sym_zero();
  switch (e->kind) {
    case NodeKind::Constant:
      return sym_const(delta_j(j, *e->value));
    case NodeKind::XiMonomial:
    case NodeKind::Lambda:
    case NodeKind::BracketNorm:
    case NodeKind::ScalarPow:  // child is scalar-valued, delta kills it
      return sym_zero();
    case NodeKind::Sum: {
      std::vector<ExprPtr> terms;
      for (const auto& a : e->args) terms.push_back(apply_delta(a, j));
      return sym_sum(std::move(terms));
    }
    case NodeKind::Product: {
      std::vector<ExprPtr> terms;
      for (size_t i = 0; i < e->args.size(); ++i) {
        std::vector<ExprPtr> factors = e->args;
        factors[i] = apply_delta(e->args[i], j);
        terms.push_back(sym_prod(std::move(factors)));
      }
      return sym_sum(std::move(terms));
    }
    case NodeKind::Inverse: {
      ExprPtr du = apply_delta(e->args[0], j);
      if (is_zero_expr(du)) return sym_zero();
      return sym_scale(-1.0, sym_prod({e, du, e}));
    }
    case NodeKind::Scaled:
      return sym_scale(e->coeff, apply_delta(e->args[0], j));
  }
  return sym_zero();
}

ExprPtr apply_delta(const ExprPtr& e, const MultiIndex& alpha) {
  ExprPtr out = e;
  for (size_t j = 0; j < alpha.size(); ++j)
    for (int r = 0; r < alpha[j]; ++r) out = apply_delta(out, int(j));
  return out;
}

ExprPtr star_expr(const ExprPtr& e) {
  if (!e || is_zero_expr(e)) return sym_zero();
  switch (e->kind) {
    case NodeKind::Constant:
      return sym_const(adjoint(*e->value));
    case NodeKind::XiMonomial:
    case NodeKind::BracketNorm:
    case NodeKind::Lambda:
      return e;
    case NodeKind::Sum: {
      std::vector<ExprPtr> terms;
      for (const auto& a : e->args) terms.push_back(star_expr(a));
      return sym_sum(std::move(terms));
    }
    case NodeKind::Product: {
      std::vector<ExprPtr> factors;
      for (auto it = e->args.rbegin(); it != e->args.rend(); ++it) factors.push_back(star_expr(*it));
      return sym_prod(std::move(factors));
    }
    case NodeKind::Inverse:
      return sym_inv(star_expr(e->args[0]));
    case NodeKind::ScalarPow:
      return sym_pow(star_expr(e->args[0]), std::conj(e->coeff));
    case NodeKind::Scaled:
      return sym_scale(std::conj(e->coeff), star_expr(e->args[0]));
  }
  return sym_zero();
}

}  // namespace nct
