#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hnl/complex.hpp"
#include "hnl/measure.hpp"

namespace hnl {

// Immutable expression tree for scalar analytic functions of one complex
// variable.  Nodes are shared (the tree is a DAG); evaluation is a pure
// function of (expr, z) with no hidden state, so expressions may be
// evaluated concurrently from many threads.
//
// Evaluation is Riemann-sphere aware: a subexpression whose value is the
// point at infinity signals PoleError, and enclosing Moebius-type nodes
// resume with the correct limit (Moebius(inf) = a/c, -1/inf = 0).  Only a
// genuine indeterminate form (0 * inf) is a hard error.

class FuncExpr;
using ExprPtr = std::shared_ptr<const FuncExpr>;

struct WeylTransformNode {
  SpectralMeasure measure;
};

// z -> i*c
struct ConstImagNode {
  double c = 0.0;
};

// z -> sign * exp(-i * ell * z),  ell > 0, sign = +-1
struct ExpTransportNode {
  double ell = 0.0;
  int sign = 1;
};

// z -> (a*f(z) + b) / (c*f(z) + d),  ad - bc != 0
struct MoebiusNode {
  Cplx a, b, c, d;
  ExprPtr inner;
};

struct ProductNode {
  std::vector<ExprPtr> factors;
};

struct ScaleNode {
  double factor = 1.0;
  ExprPtr inner;
};

// z -> -1 / f(z)
struct NegReciprocalNode {
  ExprPtr inner;
};

// z -> f(z)^n,  n >= 1
struct PowerNode {
  ExprPtr inner;
  int n = 1;
};

class FuncExpr {
 public:
  using Node = std::variant<WeylTransformNode, ConstImagNode, ExpTransportNode,
                            MoebiusNode, ProductNode, ScaleNode,
                            NegReciprocalNode, PowerNode>;

  explicit FuncExpr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

 private:
  Node node_;
};

namespace expr {

// Factory functions; each validates its node invariants and throws
// std::invalid_argument on violation.
ExprPtr weyl(SpectralMeasure mu);
ExprPtr const_imag(double c);
ExprPtr exp_transport(double ell, int sign);
ExprPtr moebius(Cplx a, Cplx b, Cplx c, Cplx d, ExprPtr inner);
ExprPtr product(std::vector<ExprPtr> factors);
ExprPtr scale(double factor, ExprPtr inner);
ExprPtr neg_reciprocal(ExprPtr inner);
ExprPtr power(ExprPtr inner, int n);

}  // namespace expr

// Recursive evaluation.  Throws DomainError (propagated from leaves),
// PoleError when the value of the whole expression is infinite, and
// IndeterminateError on 0 * inf.
Cplx eval(const ExprPtr& f, Cplx z);

// Scalar Cayley pair connecting transfer and impedance values (J = 1):
//   v = i (w - 1) / (w + 1),       w = (1 - i v) / (1 + i v).
// The orientation is fixed so the round trip is the identity and
// cayley_w_to_v(0) = -i.
Cplx cayley_w_to_v(Cplx w);
Cplx cayley_v_to_w(Cplx v);

// V = i (W - 1) / (W + 1) as an expression node.
ExprPtr cayley_transform_expr(ExprPtr transfer);

struct HerglotzProbeReport {
  double min_im = 0.0;
  Cplx argmin;
  std::size_t argmin_index = 0;
};

// min over the grid of Im f(z); the caller asserts nonnegativity.
// All grid points must lie in the open upper half-plane.
HerglotzProbeReport herglotz_probe(const ExprPtr& f, std::span<const Cplx> grid);

// JSON round-trip.  Nested {"op": "...", ...} objects mirroring the node
// variants; the top level carries "schema": 1.
std::string to_json(const ExprPtr& f);
ExprPtr expr_from_json(std::string_view text);

}  // namespace hnl
