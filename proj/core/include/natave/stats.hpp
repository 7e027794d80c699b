#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "natave/observable.hpp"

namespace natave {

// Principal-value logarithmic integral, relative error <= 1e-9. x >= 2.
double li(double x);

enum class DensityModel { pnt, li, semiprime, constant };

struct DensityCheckpoint {
  u64 x = 0;
  u64 count = 0;
  double model_value = 0.0;
  double ratio = 0.0;
};

struct DensityReport {
  std::string target;  // word text, shape, or "squarefree"
  DensityModel model = DensityModel::pnt;
  double constant = 0.0;  // only for DensityModel::constant
  std::vector<DensityCheckpoint> checkpoints;
};

// What a density scan counts at each n.
enum class TargetKind {
  word,             // occurrences of a word (covers single planar shapes)
  canonical_shape,  // n whose canonical tree equals the target
  squarefree        // n whose root children are all leaves (incl. n = 1)
};

struct DensityTarget {
  TargetKind kind = TargetKind::word;
  std::string text;  // word text or canonical shape string; unused for squarefree
};

DensityReport count_matches(const DensityTarget& target, u64 bound,
                            std::vector<u64> checkpoints, DensityModel model,
                            double constant = 0.0, const ScanOptions& options = {});

struct GapReport {
  Word word;
  u64 bound = 0;
  u64 max_gap = 0;
  std::map<u64, u64> gap_histogram;
};

GapReport gap_stats(const Word& w, u64 bound, const ScanOptions& options = {});

}  // namespace natave
