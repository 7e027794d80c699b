#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "natave/tree.hpp"

namespace natave {

enum class ShapeKind { planar, unordered };

struct AvenueWindow {
  u64 start = 1;
  std::vector<PlanarShape> shapes;
};

struct FirstOccurrenceList {
  ShapeKind kind = ShapeKind::planar;
  u64 bound = 0;
  std::vector<u64> entries;
};

// Pull-based stream of (n, shape string) over [lo, hi], sieving one segment
// at a time. Resumable: a fresh stream can start at any n. The string_view
// returned by next() stays valid until the following next() call.
class ShapeStream {
 public:
  ShapeStream(u64 lo, u64 hi, std::size_t segment_size = kDefaultSegmentSize);

  // Advances to the next integer; false once the range is exhausted.
  bool next(u64& n, std::string_view& shape);

 private:
  void fill_segment();

  u64 next_n_;
  u64 hi_;
  std::size_t segment_size_;
  u64 seg_lo_ = 0;
  std::vector<u32> ends_;  // end offset of shape i within buf_
  std::string buf_;
  std::size_t idx_ = 0;
};

AvenueWindow window(u64 n, u64 len);

FirstOccurrenceList first_occurrences(u64 bound, ShapeKind kind,
                                      std::size_t segment_size = kDefaultSegmentSize);

}  // namespace natave
