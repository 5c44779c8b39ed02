#pragma once

#include <optional>

#include "sqckit/linalg.hpp"
#include "sqckit/space.hpp"

namespace sqckit {

/// Concrete set-valued map families with convex graphs. These are the only
/// maps the value-function combinators accept; arbitrary user maps are out
/// of scope.
///
///  - AffineGraph:    x -> {Ax + b}                       (single-valued)
///  - AffinePreimage: x -> B^{-1}({x}), B(y) = Ay + b     (square invertible A)
///  - SumSplit:       x -> {(x1, x2) : x1 + x2 = x}       (infimal convolution)
///  - ProductSlice:   x -> box[lo, hi], or x + box[lo, hi] when anchored
///                    (anchored slices are affine processes)
struct MapDescriptor {
  enum class Kind { AffineGraph, AffinePreimage, SumSplit, ProductSlice };

  Kind kind = Kind::ProductSlice;
  Matrix a;
  Vec b;
  Vec slice_lo, slice_hi;
  bool anchored = false;
  std::optional<double> gamma;  // declared expansiveness
  std::optional<double> ell;    // declared Lipschitz constant

  static MapDescriptor affine_graph(Matrix a, Vec b);
  static MapDescriptor affine_preimage(Matrix a, Vec b);
  static MapDescriptor sum_split();
  static MapDescriptor product_slice(Vec lo, Vec hi, bool anchored_at_x = false);

  /// Dimension of the image-space variable the inner search runs over.
  std::size_t image_dim() const;
  /// Dimension of the map's argument, when the descriptor pins it down.
  std::optional<std::size_t> argument_dim() const;
};

}  // namespace sqckit
