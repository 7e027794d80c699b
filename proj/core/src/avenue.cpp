#include "natave/avenue.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace natave {

ShapeStream::ShapeStream(u64 lo, u64 hi, std::size_t segment_size)
    : next_n_(lo), hi_(hi), segment_size_(segment_size) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("ShapeStream: need 1 <= lo <= hi");
  if (segment_size == 0) throw std::invalid_argument("ShapeStream: segment_size == 0");
}

void ShapeStream::fill_segment() {
  seg_lo_ = next_n_;
  u64 seg_hi = std::min(hi_, seg_lo_ + segment_size_ - 1);
  ends_.clear();
  buf_.clear();
  idx_ = 0;
  for_each_factorization(
      seg_lo_, seg_hi,
      [&](u64 n, std::span<const FactorPair> f) {
        if (n == 1) {
          buf_ += "()";
        } else {
          append_shape_string(f, buf_);
        }
        ends_.push_back(static_cast<u32>(buf_.size()));
      },
      segment_size_);
}

bool ShapeStream::next(u64& n, std::string_view& shape) {
  if (next_n_ > hi_) return false;
  if (idx_ >= ends_.size()) fill_segment();
  n = next_n_;
  std::size_t begin = idx_ == 0 ? 0 : ends_[idx_ - 1];
  shape = std::string_view(buf_).substr(begin, ends_[idx_] - begin);
  ++idx_;
  ++next_n_;
  return true;
}

AvenueWindow window(u64 n, u64 len) {
  if (n == 0 || len == 0) throw std::invalid_argument("window: need n >= 1 and len >= 1");
  AvenueWindow w;
  w.start = n;
  w.shapes.reserve(len);
  for (u64 i = 0; i < len; ++i) w.shapes.push_back(tree_of(n + i));
  return w;
}

FirstOccurrenceList first_occurrences(u64 bound, ShapeKind kind, std::size_t segment_size) {
  if (bound < 1) throw std::invalid_argument("first_occurrences: need bound >= 1");
  FirstOccurrenceList out;
  out.kind = kind;
  out.bound = bound;
  std::unordered_set<std::string> seen;
  ShapeStream stream(1, bound, segment_size);
  u64 n;
  std::string_view shape;
  while (stream.next(n, shape)) {
    std::string key = kind == ShapeKind::planar ? std::string(shape)
                                                : canonical_string(shape);
    if (seen.insert(std::move(key)).second) out.entries.push_back(n);
  }
  return out;
}

}  // namespace natave
