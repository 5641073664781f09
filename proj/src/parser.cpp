#include "nct/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace nct {

namespace {

double binom(int a, int g) { return factorial(a) / (factorial(g) * factorial(a - g)); }

double multi_binom(const MultiIndex& alpha, const MultiIndex& gamma) {
  double b = 1.0;
  for (size_t j = 0; j < alpha.size(); ++j) b *= binom(alpha[j], gamma[j]);
  return b;
}

// all gamma with 0 <= gamma <= alpha componentwise
void sub_indices(const MultiIndex& alpha, size_t j, MultiIndex& cur,
                 std::vector<MultiIndex>& out) {
  if (j == alpha.size()) {
    out.push_back(cur);
    return;
  }
  for (int g = 0; g <= alpha[j]; ++g) {
    cur[j] = g;
    sub_indices(alpha, j + 1, cur, out);
  }
}

void insert_term(std::map<MultiIndex, NcElement>& terms, const MultiIndex& alpha,
                 const NcElement& a) {
  if (a.is_zero()) return;
  auto it = terms.find(alpha);
  if (it == terms.end()) {
    terms.emplace(alpha, a);
  } else {
    it->second = it->second + a;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

int DiffOp::order() const {
  int m = 0;
  for (const auto& [alpha, a] : terms) m = std::max(m, nct::order(alpha));
  return m;
}

NcElement DiffOp::apply(const NcElement& u) const {
  NcElement out = NcElement::zero(theta);
  for (const auto& [alpha, a] : terms) out = out + mul(a, delta(alpha, u));
  return out;
}

DiffOp diffop_zero(ThetaPtr theta) { return DiffOp{std::move(theta), {}}; }

DiffOp diffop_scalar(ThetaPtr theta, Complex c) {
  DiffOp p{theta, {}};
  insert_term(p.terms, zero_index(theta->n()), NcElement::scalar(theta, c));
  return p;
}

DiffOp diffop_mult(NcElement a) {
  DiffOp p{a.theta(), {}};
  insert_term(p.terms, zero_index(a.n()), a);
  return p;
}

DiffOp diffop_delta(ThetaPtr theta, int j) {
  DiffOp p{theta, {}};
  p.terms.emplace(unit_index(theta->n(), j), NcElement::unit(theta));
  return p;
}

DiffOp operator+(const DiffOp& p, const DiffOp& q) {
  require_same_theta(p.theta, q.theta);
  DiffOp out = p;
  for (const auto& [alpha, a] : q.terms) insert_term(out.terms, alpha, a);
  return out;
}

DiffOp operator-(const DiffOp& p, const DiffOp& q) { return p + (Complex(-1.0) * q); }

DiffOp operator*(Complex c, const DiffOp& p) {
  DiffOp out{p.theta, {}};
  for (const auto& [alpha, a] : p.terms) insert_term(out.terms, alpha, a * c);
  return out;
}

DiffOp operator*(const DiffOp& p, const DiffOp& q) {
  require_same_theta(p.theta, q.theta);
  DiffOp out{p.theta, {}};
  for (const auto& [alpha, a] : p.terms) {
    for (const auto& [beta, b] : q.terms) {
      // delta^alpha (b delta^beta u) = sum_{gamma <= alpha} binom (delta^gamma b) delta^{alpha-gamma+beta} u
      std::vector<MultiIndex> gammas;
      MultiIndex cur = zero_index(int(alpha.size()));
      sub_indices(alpha, 0, cur, gammas);
      for (const auto& gamma : gammas) {
        NcElement coeff = mul(a, delta(gamma, b)) * Complex(multi_binom(alpha, gamma));
        insert_term(out.terms, add(sub(alpha, gamma), beta), coeff);
      }
    }
  }
  return out;
}

DiffOp diffop_pow(const DiffOp& p, int m) {
  if (m < 0) throw ConfigError("diffop_pow: exponent must be nonnegative");
  DiffOp out = diffop_scalar(p.theta, 1.0);
  for (int i = 0; i < m; ++i) out = out * p;
  return out;
}

namespace {

struct Parser {
  const std::string& src;
  ThetaPtr theta;
  size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(unsigned(src[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  int parse_index() {
    if (pos >= src.size() || !std::isdigit(unsigned(src[pos]))) fail("expected generator index");
    size_t end;
    int j = std::stoi(src.substr(pos), &end);
    pos += end;
    if (j < 1 || j > theta->n()) fail("generator index out of range 1.." +
                                      std::to_string(theta->n()));
    return j - 1;
  }

  int parse_int_exponent() {
    skip_ws();
    bool neg = false;
    if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) neg = src[pos++] == '-';
    if (pos >= src.size() || !std::isdigit(unsigned(src[pos]))) fail("expected integer exponent");
    size_t end;
    int m = std::stoi(src.substr(pos), &end);
    pos += end;
    return neg ? -m : m;
  }

  double parse_number() {
    skip_ws();
    size_t end;
    double v = 0.0;
    try {
      v = std::stod(src.substr(pos), &end);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos += end;
    return v;
  }

  // primary with an optional immediately-following exponent
  DiffOp parse_factor() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];

    if (c == '(') {
      ++pos;
      DiffOp e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) {
        int m = parse_int_exponent();
        if (m < 0) fail("negative exponent requires a single generator base");
        return diffop_pow(e, m);
      }
      return e;
    }
    if (c == '+' || c == '-') {
      ++pos;
      DiffOp f = parse_factor();
      return c == '-' ? Complex(-1.0) * f : f;
    }
    if (c == 'U') {
      ++pos;
      int j = parse_index();
      int m = eat('^') ? parse_int_exponent() : 1;
      MultiIndex k = zero_index(theta->n());
      k[j] = m;
      return diffop_mult(NcElement::monomial(theta, k));
    }
    if (c == 'd') {
      ++pos;
      int j = parse_index();
      int m = eat('^') ? parse_int_exponent() : 1;
      if (m < 0) fail("exponent on a derivation must be a nonnegative integer");
      return diffop_pow(diffop_delta(theta, j), m);
    }
    if (c == 'i' && (pos + 1 >= src.size() || !std::isalnum(unsigned(src[pos + 1])))) {
      ++pos;
      DiffOp unit = diffop_scalar(theta, Complex(0.0, 1.0));
      if (eat('^')) {
        int m = parse_int_exponent();
        Complex v = std::pow(Complex(0.0, 1.0), m);
        return diffop_scalar(theta, v);
      }
      return unit;
    }
    if (std::isdigit(unsigned(c)) || c == '.') {
      double v = parse_number();
      if (eat('^')) {
        int m = parse_int_exponent();
        return diffop_scalar(theta, std::pow(Complex(v), m));
      }
      return diffop_scalar(theta, v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  DiffOp parse_term() {
    DiffOp out = parse_factor();
    while (eat('*')) out = out * parse_factor();
    return out;
  }

  DiffOp parse_expr() {
    DiffOp out = parse_term();
    for (;;) {
      if (eat('+')) {
        out = out + parse_term();
      } else if (eat('-')) {
        out = out - parse_term();
      } else {
        return out;
      }
    }
  }
};

void print_complex(std::ostringstream& os, Complex c) {
  os.precision(17);
  if (c.real() == 0.0) c = Complex(0.0, c.imag());  // canonicalize -0
  if (c.imag() == 0.0) c = Complex(c.real(), 0.0);
  os << "(" << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "*i";
  os << ")";
}

}  // namespace

OperatorAst parse_operator(const std::string& src, ThetaPtr theta) {
  Parser p{src, theta};
  DiffOp result = p.parse_expr();
  p.skip_ws();
  if (p.pos != src.size()) p.fail("trailing input");
  return OperatorAst{src, std::move(result)};
}

std::string print_operator(const OperatorAst& ast) {
  std::ostringstream os;
  const ThetaPtr& theta = ast.normalized.theta;
  bool first = true;
  for (const auto& [alpha, a] : ast.normalized.terms) {
    for (const auto& [k, c] : a.coeffs()) {
      if (!first) os << " + ";
      first = false;
      print_complex(os, c);
      for (int j = 0; j < theta->n(); ++j)
        if (k[j] != 0) os << "*U" << (j + 1) << "^" << k[j];
      for (int j = 0; j < theta->n(); ++j)
        for (int r = 0; r < alpha[j]; ++r) os << "*d" << (j + 1);
    }
  }
  if (first) os << "(0)";
  return os.str();
}

}  // namespace nct
