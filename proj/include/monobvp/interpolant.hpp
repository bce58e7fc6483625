#pragma once

#include "monobvp/mesh.hpp"

namespace monobvp {

/// Continuous extensions of a mesh function.
///
/// x_bar is the piecewise affine interpolant through the nodal values.
/// v_bar is built from the backward slopes n*Dx(k-1): on [k/n, (k+1)/n) it
/// runs affinely from n*Dx(k-1) to n*Dx(k), and on [0, 1/n) it is the
/// constant n*Dx(0). Both are exact at nodes: x_bar(k/n) = x(k) and
/// v_bar(k/n) = n*Dx(k-1) for k >= 1.
class InterpolantPair {
 public:
  explicit InterpolantPair(MeshFunction source);

  const MeshFunction& source() const noexcept { return source_; }
  double x_bar(double t) const;
  double v_bar(double t) const;

  /// Exact integral of v_bar^2 over [0, 1].
  double v_bar_square_integral() const;
  /// max_t |x_bar(t)|, attained at a node.
  double max_abs_x_bar() const;

 private:
  /// Cell index k with node(k) <= t < node(k+1); t >= 1 maps to n.
  int cell(double t) const;

  MeshFunction source_;
};

InterpolantPair interpolants(const MeshFunction& x);

}  // namespace monobvp
