#include "natave/tree.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "natave/errors.hpp"

namespace natave {

namespace {

u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("value exceeds 64 bits");
  }
  return r;
}

u64 checked_pow(u64 base, u64 exp) {
  u64 r = 1;
  for (u64 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

u64 nth_prime(std::size_t i) {
  // Child counts stay tiny: omega(n) <= 15 for 64-bit n.
  static const std::array<u64, 16> primes = {2,  3,  5,  7,  11, 13, 17, 19,
                                             23, 29, 31, 37, 41, 43, 47, 53};
  if (i >= primes.size()) throw std::overflow_error("too many children for a 64-bit witness");
  return primes[i];
}

// Splits the body of "(...)" into child substrings. Assumes balanced input.
std::vector<std::string_view> child_views(std::string_view text) {
  std::vector<std::string_view> kids;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '(') {
      if (depth == 0) start = i;
      ++depth;
    } else {
      --depth;
      if (depth == 0) kids.push_back(text.substr(start, i - start + 1));
    }
  }
  return kids;
}

bool canonical_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

std::size_t PlanarShape::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

PlanarShape tree_of(u64 n) {
  if (n == 0) throw std::invalid_argument("tree_of: need n >= 1");
  if (n == 1) return PlanarShape{};
  return tree_of(factorize(n));
}

PlanarShape tree_of(const Factorization& f) {
  std::vector<PlanarShape> kids;
  kids.reserve(f.size());
  for (const auto& [p, e] : f) kids.push_back(tree_of(e));
  return PlanarShape{std::move(kids)};
}

PrimeTree labeled_tree_of(u64 n) {
  if (n == 0) throw std::invalid_argument("labeled_tree_of: need n >= 1");
  PrimeTree t;
  if (n == 1) return t;
  for (const auto& [p, e] : factorize(n)) {
    t.children.emplace_back(p, labeled_tree_of(e));
  }
  return t;
}

u64 PrimeTree::value() const {
  u64 v = 1;
  for (const auto& [p, sub] : children) {
    v = checked_mul(v, checked_pow(p, sub.value()));
  }
  return v;
}

PlanarShape PrimeTree::erase_labels() const {
  std::vector<PlanarShape> kids;
  kids.reserve(children.size());
  for (const auto& [p, sub] : children) kids.push_back(sub.erase_labels());
  return PlanarShape{std::move(kids)};
}

std::string serialize(const PlanarShape& s) {
  std::string out;
  out.reserve(2 * s.node_count());
  auto rec = [&](auto&& self, const PlanarShape& t) -> void {
    out.push_back('(');
    for (const auto& c : t.children()) self(self, c);
    out.push_back(')');
  };
  rec(rec, s);
  return out;
}

PlanarShape parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty shape", 0);
  std::size_t pos = 0;
  auto rec = [&](auto&& self) -> PlanarShape {
    if (pos >= text.size() || text[pos] != '(') {
      throw ParseError("expected '('", pos);
    }
    ++pos;
    std::vector<PlanarShape> kids;
    while (pos < text.size() && text[pos] == '(') kids.push_back(self(self));
    if (pos >= text.size()) throw ParseError("unbalanced shape", pos);
    if (text[pos] != ')') throw ParseError("stray character", pos);
    ++pos;
    return PlanarShape{std::move(kids)};
  };
  PlanarShape s = rec(rec);
  if (pos != text.size()) throw ParseError("trailing input after shape", pos);
  return s;
}

std::string canonical_string(std::string_view shape_text) {
  std::vector<std::string> kids;
  for (std::string_view kv : child_views(shape_text)) {
    kids.push_back(canonical_string(kv));
  }
  std::sort(kids.begin(), kids.end(), canonical_less);
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out.push_back(')');
  return out;
}

CanonicalShape::CanonicalShape(const PlanarShape& s)
    : text_(canonical_string(serialize(s))) {}

std::vector<CanonicalShape> CanonicalShape::children() const {
  std::vector<CanonicalShape> kids;
  for (std::string_view kv : child_views(text_)) {
    kids.push_back(CanonicalShape{std::string(kv)});
  }
  return kids;
}

CanonicalShape canonicalize(const PlanarShape& s) { return CanonicalShape{s}; }

namespace {

// Shape strings for small arguments; exponents in factorizations of 64-bit
// integers never exceed 63.
const std::string& small_shape(u64 n) {
  static const std::vector<std::string> table = [] {
    std::vector<std::string> t;
    for (u64 i = 1; i <= 64; ++i) t.push_back(serialize(tree_of(i)));
    return t;
  }();
  return table[n - 1];
}

}  // namespace

void append_shape_string(std::span<const FactorPair> factors, std::string& out) {
  out.push_back('(');
  for (const auto& [p, e] : factors) out += small_shape(e);
  out.push_back(')');
}

std::string shape_string_of(u64 n) {
  if (n == 0) throw std::invalid_argument("shape_string_of: need n >= 1");
  if (n == 1) return "()";
  std::string out;
  Factorization f = factorize(n);
  out.push_back('(');
  for (const auto& [p, e] : f) out += serialize(tree_of(e));
  out.push_back(')');
  return out;
}

u64 omega(u64 n) {
  if (n == 0) throw std::invalid_argument("omega: need n >= 1");
  if (n == 1) return 0;
  return factorize(n).size();
}

u64 min_realization(const PlanarShape& s) {
  u64 v = 1;
  const auto& kids = s.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    v = checked_mul(v, checked_pow(nth_prime(i), min_realization(kids[i])));
  }
  return v;
}

u64 min_realization_unordered(const CanonicalShape& c) {
  std::vector<std::pair<u64, std::string>> vals;
  for (const CanonicalShape& kid : c.children()) {
    vals.emplace_back(min_realization_unordered(kid), kid.str());
  }
  // Larger recursive exponents go to smaller primes; ties by canonical order.
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return canonical_less(a.second, b.second);
  });
  u64 v = 1;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v = checked_mul(v, checked_pow(nth_prime(i), vals[i].first));
  }
  return v;
}

}  // namespace natave
