#include "natave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace natave {

namespace {

bool is_bush_shape(std::string_view shape) {
  // "(" followed by k copies of "()" and a closing ")"; k = 0 is t(1).
  if (shape.size() < 2 || shape.front() != '(' || shape.back() != ')') return false;
  std::size_t i = 1;
  while (i + 1 < shape.size()) {
    if (shape[i] != '(' || shape[i + 1] != ')') return false;
    i += 2;
  }
  return i + 1 == shape.size();
}

double model_value(DensityModel model, double constant, u64 x) {
  double xd = static_cast<double>(x);
  switch (model) {
    case DensityModel::pnt:
      return xd / std::log(xd);
    case DensityModel::li:
      return li(xd);
    case DensityModel::semiprime:
      if (xd < 16) {
        throw std::invalid_argument("semiprime model: need x >= 16 (loglog x > 0)");
      }
      return xd * std::log(std::log(xd)) / std::log(xd);
    case DensityModel::constant:
      return constant * xd;
  }
  throw std::logic_error("unknown density model");
}

}  // namespace

double li(double x) {
  if (x < 2) throw std::invalid_argument("li: need x >= 2");
  // Ramanujan-free classical series: li(x) = gamma + ln ln x + sum_k (ln x)^k / (k k!)
  constexpr double kEulerGamma = 0.5772156649015328606;
  double lx = std::log(x);
  double sum = kEulerGamma + std::log(lx);
  double term = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= lx / k;
    double add = term / k;
    sum += add;
    if (static_cast<double>(k) > lx && add < 1e-13 * std::abs(sum)) break;
  }
  return sum;
}

DensityReport count_matches(const DensityTarget& target, u64 bound,
                            std::vector<u64> checkpoints, DensityModel model,
                            double constant, const ScanOptions& options) {
  if (checkpoints.empty()) throw std::invalid_argument("count_matches: empty checkpoints");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("count_matches: checkpoints must be increasing");
  }
  if (checkpoints.back() > bound) {
    throw std::invalid_argument("count_matches: checkpoint beyond bound");
  }

  DensityReport report;
  report.model = model;
  report.constant = constant;

  // Counts at each checkpoint share one scan. Word targets reuse the
  // occurrence machinery; shape predicates stream directly.
  std::vector<u64> counts(checkpoints.size(), 0);
  if (target.kind == TargetKind::word) {
    Word w = parse_word(target.text);
    report.target = w.text();
    OccurrenceReport occ = occurrences(w, bound, std::nullopt, options);
    std::size_t ci = 0;
    u64 running = 0;
    std::size_t pi = 0;
    for (; ci < checkpoints.size(); ++ci) {
      while (pi < occ.positions.size() && occ.positions[pi] <= checkpoints[ci]) {
        ++running;
        ++pi;
      }
      counts[ci] = running;
    }
  } else {
    report.target = target.kind == TargetKind::squarefree ? "squarefree" : target.text;
    std::string canon_target;
    if (target.kind == TargetKind::canonical_shape) {
      canon_target = canonical_string(target.text);
    }
    ShapeStream stream(1, bound, options.segment_size);
    u64 n;
    std::string_view shape;
    u64 running = 0;
    std::size_t ci = 0;
    while (stream.next(n, shape) && ci < checkpoints.size()) {
      bool hit = target.kind == TargetKind::squarefree
                     ? is_bush_shape(shape)
                     : canonical_string(shape) == canon_target;
      if (hit) ++running;
      while (ci < checkpoints.size() && n == checkpoints[ci]) {
        counts[ci] = running;
        ++ci;
      }
    }
  }

  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    double mv = model_value(model, constant, checkpoints[i]);
    report.checkpoints.push_back(
        {checkpoints[i], counts[i], mv, static_cast<double>(counts[i]) / mv});
  }
  return report;
}

GapReport gap_stats(const Word& w, u64 bound, const ScanOptions& options) {
  if (bound < w.size()) throw std::invalid_argument("gap_stats: bound < word length");
  OccurrenceReport occ = occurrences(w, bound, std::nullopt, options);
  GapReport report{w, bound, 0, {}};
  for (u64 g : occ.gaps) {
    ++report.gap_histogram[g];
    report.max_gap = std::max(report.max_gap, g);
  }
  return report;
}

}  // namespace natave
