#include <doctest.h>

#include <algorithm>

#include "natave/avenue.hpp"

using namespace natave;

namespace {

std::vector<std::pair<u64, std::string>> collect(u64 lo, u64 hi,
                                                 std::size_t segment_size = kDefaultSegmentSize) {
  std::vector<std::pair<u64, std::string>> out;
  ShapeStream stream(lo, hi, segment_size);
  u64 n;
  std::string_view shape;
  while (stream.next(n, shape)) out.emplace_back(n, std::string(shape));
  return out;
}

}  // namespace

TEST_CASE("scan yields shapes in order") {
  auto head = collect(1, 4);
  REQUIRE(head.size() == 4);
  CHECK(head[0] == std::pair<u64, std::string>{1, "()"});
  CHECK(head[1] == std::pair<u64, std::string>{2, "(())"});
  CHECK(head[2] == std::pair<u64, std::string>{3, "(())"});
  CHECK(head[3] == std::pair<u64, std::string>{4, "((()))"});

  auto pair = collect(13, 14);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].second == "(())");
  CHECK(pair[1].second == "(()())");

  auto single = collect(42, 42);
  REQUIRE(single.size() == 1);
  CHECK(single[0].second == shape_string_of(42));

  CHECK_THROWS_AS(ShapeStream(0, 10), std::invalid_argument);
}

TEST_CASE("scan agrees with per-n trees") {
  ShapeStream stream(1, 100000);
  u64 n;
  std::string_view shape;
  while (stream.next(n, shape)) {
    CHECK(shape == shape_string_of(n));
  }
}

TEST_CASE("segmentation does not change the stream") {
  auto reference = collect(1, 2000);
  for (std::size_t seg : {std::size_t{1}, std::size_t{7}, std::size_t{1000}}) {
    CHECK(collect(1, 2000, seg) == reference);
  }
  // resuming mid-range matches a slice of the full scan
  auto tail = collect(1500, 2000, 64);
  CHECK(std::equal(tail.begin(), tail.end(), reference.begin() + 1499));
}

TEST_CASE("window") {
  AvenueWindow w = window(5, 3);
  CHECK(w.start == 5);
  REQUIRE(w.shapes.size() == 3);
  CHECK(serialize(w.shapes[0]) == "(())");
  CHECK(serialize(w.shapes[1]) == "(()())");
  CHECK(serialize(w.shapes[2]) == "(())");

  AvenueWindow unit = window(1, 1);
  CHECK(serialize(unit.shapes[0]) == "()");

  AvenueWindow w11 = window(11, 3);
  CHECK(serialize(w11.shapes[0]) == "(())");
  CHECK(serialize(w11.shapes[1]) == "((())())");
  CHECK(serialize(w11.shapes[2]) == "(())");

  CHECK_THROWS_AS(window(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(window(1, 0), std::invalid_argument);
}

TEST_CASE("first occurrences") {
  FirstOccurrenceList planar = first_occurrences(48, ShapeKind::planar);
  CHECK(planar.entries == std::vector<u64>{1, 2, 4, 6, 12, 16, 18, 30, 36, 48});

  FirstOccurrenceList unordered = first_occurrences(48, ShapeKind::unordered);
  CHECK(unordered.entries == std::vector<u64>{1, 2, 4, 6, 12, 16, 30, 36, 48});

  CHECK(first_occurrences(1, ShapeKind::planar).entries == std::vector<u64>{1});
  CHECK_THROWS_AS(first_occurrences(0, ShapeKind::planar), std::invalid_argument);
}

TEST_CASE("unordered first occurrences are a subset of planar ones") {
  FirstOccurrenceList planar = first_occurrences(10000, ShapeKind::planar);
  FirstOccurrenceList unordered = first_occurrences(10000, ShapeKind::unordered);
  CHECK(std::includes(planar.entries.begin(), planar.entries.end(),
                      unordered.entries.begin(), unordered.entries.end()));
}

TEST_CASE("first occurrences are segment-size independent") {
  FirstOccurrenceList reference = first_occurrences(5000, ShapeKind::planar);
  for (std::size_t seg : {std::size_t{13}, std::size_t{1000}, std::size_t{1 << 16}}) {
    CHECK(first_occurrences(5000, ShapeKind::planar, seg).entries == reference.entries);
  }
}
