#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "natave/sieve.hpp"

namespace natave {

// Ordered rooted tree shape, the value of the map n -> tree. The single
// node tree serializes to "()"; children appear left to right.
class PlanarShape {
 public:
  PlanarShape() = default;
  explicit PlanarShape(std::vector<PlanarShape> children)
      : children_(std::move(children)) {}

  const std::vector<PlanarShape>& children() const { return children_; }
  std::size_t node_count() const;

  friend bool operator==(const PlanarShape&, const PlanarShape&) = default;

 private:
  std::vector<PlanarShape> children_;
};

// Order-normalized shape: equal for any two planar shapes related by a
// recursive permutation of children. Equality is string equality on the
// canonical serialization (children sorted by (length, lex) recursively).
class CanonicalShape {
 public:
  CanonicalShape() : text_("()") {}
  explicit CanonicalShape(const PlanarShape& s);

  const std::string& str() const { return text_; }
  std::vector<CanonicalShape> children() const;

  friend bool operator==(const CanonicalShape&, const CanonicalShape&) = default;

 private:
  explicit CanonicalShape(std::string canonical_text)
      : text_(std::move(canonical_text)) {}
  std::string text_;
};

// Rooted tree with prime edge labels, distinct and increasing at every
// branching. value() reconstructs the original integer.
struct PrimeTree {
  std::vector<std::pair<u64, PrimeTree>> children;

  u64 value() const;               // throws std::overflow_error past 64 bits
  PlanarShape erase_labels() const;

  friend bool operator==(const PrimeTree&, const PrimeTree&) = default;
};

PlanarShape tree_of(u64 n);
PlanarShape tree_of(const Factorization& f);
PrimeTree labeled_tree_of(u64 n);

CanonicalShape canonicalize(const PlanarShape& s);

std::string serialize(const PlanarShape& s);
PlanarShape parse(std::string_view text);  // throws ParseError

// Canonical serialization computed directly on a parenthesis string.
std::string canonical_string(std::string_view shape_text);

// Shape string of n without materializing PlanarShape nodes.
std::string shape_string_of(u64 n);
// Same, from an exponent list in increasing-prime order (the primes
// themselves do not affect the shape). Appends to `out`.
void append_shape_string(std::span<const FactorPair> factors, std::string& out);

u64 omega(u64 n);

// Least integer whose planar tree equals s. Throws std::overflow_error
// when the witness does not fit in 64 bits.
u64 min_realization(const PlanarShape& s);

// Least integer whose canonical tree equals c: larger recursive values are
// assigned to smaller primes.
u64 min_realization_unordered(const CanonicalShape& c);

}  // namespace natave
