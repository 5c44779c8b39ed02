#include "sqckit/map_descriptor.hpp"

namespace sqckit {

MapDescriptor MapDescriptor::affine_graph(Matrix a, Vec b) {
  if (a.rows() != b.size()) fail(ErrorCode::DimensionMismatch, "affine graph offset size");
  MapDescriptor m;
  m.kind = Kind::AffineGraph;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

MapDescriptor MapDescriptor::affine_preimage(Matrix a, Vec b) {
  if (!a.is_square())
    fail(ErrorCode::InvalidConstant, "affine preimage maps require a square invertible matrix");
  if (a.rows() != b.size()) fail(ErrorCode::DimensionMismatch, "affine preimage offset size");
  MapDescriptor m;
  m.kind = Kind::AffinePreimage;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

MapDescriptor MapDescriptor::sum_split() {
  MapDescriptor m;
  m.kind = Kind::SumSplit;
  return m;
}

MapDescriptor MapDescriptor::product_slice(Vec lo, Vec hi, bool anchored_at_x) {
  if (lo.size() != hi.size() || lo.empty())
    fail(ErrorCode::DimensionMismatch, "product slice corners");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) fail(ErrorCode::EmptyImageOnDomain, "product slice box is empty");
  MapDescriptor m;
  m.kind = Kind::ProductSlice;
  m.slice_lo = std::move(lo);
  m.slice_hi = std::move(hi);
  m.anchored = anchored_at_x;
  return m;
}

std::size_t MapDescriptor::image_dim() const {
  switch (kind) {
    case Kind::AffineGraph:
      return a.rows();
    case Kind::AffinePreimage:
      return a.cols();
    case Kind::SumSplit:
      return 0;  // split dimension depends on the argument
    case Kind::ProductSlice:
      return slice_lo.size();
  }
  return 0;
}

std::optional<std::size_t> MapDescriptor::argument_dim() const {
  switch (kind) {
    case Kind::AffineGraph:
      return a.cols();
    case Kind::AffinePreimage:
      return a.rows();
    case Kind::ProductSlice:
      return anchored ? std::optional<std::size_t>(slice_lo.size()) : std::nullopt;
    case Kind::SumSplit:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace sqckit
