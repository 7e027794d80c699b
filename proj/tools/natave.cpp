#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "natave/avenue.hpp"
#include "natave/errors.hpp"
#include "natave/observable.hpp"
#include "natave/sieve.hpp"
#include "natave/stats.hpp"
#include "natave/tree.hpp"

using json = nlohmann::ordered_json;
using namespace natave;

namespace {

struct GlobalOpts {
  std::string format = "json";
  unsigned threads = 0;
  std::size_t segment_size = kDefaultSegmentSize;

  ScanOptions scan() const { return ScanOptions{threads, segment_size}; }
};

void emit_record(const std::string& command, const json& parameters, const json& result) {
  json rec;
  rec["command"] = command;
  rec["parameters"] = parameters;
  rec["result"] = result;
  std::cout << rec.dump() << "\n";
}

std::string status_name(OccurrenceStatus s) {
  switch (s) {
    case OccurrenceStatus::empty: return "empty";
    case OccurrenceStatus::unique_up_to_bound: return "unique-up-to-bound";
    case OccurrenceStatus::unique_proved: return "unique-proved";
    case OccurrenceStatus::multiple: return "multiple";
  }
  return "?";
}

std::string kappa_status_name(KappaStatus s) {
  switch (s) {
    case KappaStatus::unique_up_to_bound: return "unique-up-to-bound";
    case KappaStatus::proved: return "proved";
    case KappaStatus::exhausted: return "exhausted";
  }
  return "?";
}

json labeled_json(const PrimeTree& t) {
  json out = json::array();
  for (const auto& [p, sub] : t.children) {
    json child;
    child["prime"] = p;
    child["children"] = labeled_json(sub);
    out.push_back(child);
  }
  return out;
}

void dot_nodes(const PlanarShape& s, int& counter, int parent, std::ostream& os) {
  int id = counter++;
  os << "  n" << id << " [shape=circle,label=\"\"];\n";
  if (parent >= 0) os << "  n" << parent << " -- n" << id << ";\n";
  for (const auto& c : s.children()) dot_nodes(c, counter, id, os);
}

void dot_labeled(const PrimeTree& t, int& counter, int parent, u64 label, std::ostream& os) {
  int id = counter++;
  os << "  n" << id << " [shape=circle,label=\"\"];\n";
  if (parent >= 0) {
    os << "  n" << parent << " -- n" << id << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [p, sub] : t.children) dot_labeled(sub, counter, id, p, os);
}

std::vector<u64> parse_checkpoints(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

struct BFileEntry {
  u64 index;
  u64 value;
};

std::vector<BFileEntry> read_bfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open b-file: " + path);
  std::vector<BFileEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::stringstream ss(line.substr(start));
    BFileEntry e{};
    if (!(ss >> e.index >> e.value)) {
      throw std::runtime_error("malformed b-file line: " + line);
    }
    entries.push_back(e);
  }
  return entries;
}

int run_tree(u64 n, bool labeled, bool unordered, const GlobalOpts& g) {
  json params;
  params["n"] = n;
  params["labeled"] = labeled;
  params["unordered"] = unordered;

  PlanarShape s = tree_of(n);
  std::string planar = serialize(s);
  std::string shown = unordered ? canonicalize(s).str() : planar;

  if (g.format == "dot") {
    std::cout << "graph tree_" << n << " {\n";
    int counter = 0;
    if (labeled) {
      PrimeTree t = labeled_tree_of(n);
      dot_labeled(t, counter, -1, 0, std::cout);
    } else {
      dot_nodes(s, counter, -1, std::cout);
    }
    std::cout << "}\n";
    return 0;
  }
  if (g.format == "text") {
    std::cout << shown << "\n";
    return 0;
  }
  if (g.format == "csv") {
    std::cout << "n,shape\n" << n << "," << shown << "\n";
    return 0;
  }
  json result;
  result["shape"] = shown;
  if (labeled) result["labeled"] = labeled_json(labeled_tree_of(n));
  emit_record("tree", params, result);
  return 0;
}

int run_seq(u64 max, const std::string& kind, const GlobalOpts& g) {
  json params;
  params["max"] = max;
  params["kind"] = kind;
  ShapeKind k = kind == "unordered" ? ShapeKind::unordered : ShapeKind::planar;
  FirstOccurrenceList list = first_occurrences(max, k, g.segment_size);
  if (g.format == "text") {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      std::cout << (i ? "," : "") << list.entries[i];
    }
    std::cout << "\n";
    return 0;
  }
  if (g.format == "csv") {
    std::cout << "index,value\n";
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      std::cout << i + 1 << "," << list.entries[i] << "\n";
    }
    return 0;
  }
  json result;
  result["entries"] = list.entries;
  emit_record("seq", params, result);
  return 0;
}

int run_match(const std::string& word_text, u64 max, std::optional<u64> limit,
              const GlobalOpts& g) {
  json params;
  params["word"] = word_text;
  params["max"] = max;
  if (limit) params["limit"] = *limit;
  Word w = parse_word(word_text);
  OccurrenceReport r = occurrences(w, max, limit, g.scan());
  if (g.format == "text") {
    std::cout << "count " << r.positions.size() << " status " << status_name(r.status) << "\n";
    for (u64 p : r.positions) std::cout << p << "\n";
    return 0;
  }
  if (g.format == "csv") {
    std::cout << "position\n";
    for (u64 p : r.positions) std::cout << p << "\n";
    return 0;
  }
  json result;
  result["positions"] = r.positions;
  result["count"] = r.positions.size();
  result["status"] = status_name(r.status);
  result["gaps"] = r.gaps;
  result["truncated"] = r.truncated;
  emit_record("match", params, result);
  return 0;
}

int run_kappa(u64 n, const std::string& direction, u64 bound, u64 cap,
              const GlobalOpts& g) {
  json params;
  params["n"] = n;
  params["direction"] = direction;
  params["bound"] = bound;
  Direction dir = direction == "minus" ? Direction::backward : Direction::forward;
  KappaResult r = kappa(n, dir, bound, cap, g.scan());
  if (g.format == "text") {
    if (r.kappa) {
      std::cout << "kappa " << *r.kappa << " status " << kappa_status_name(r.status) << "\n";
    } else {
      std::cout << "kappa undetermined status exhausted\n";
    }
    return 0;
  }
  if (g.format == "csv") {
    std::cout << "n,direction,bound,kappa,status\n"
              << n << "," << direction << "," << bound << ","
              << (r.kappa ? std::to_string(*r.kappa) : "undetermined") << ","
              << kappa_status_name(r.status) << "\n";
    return 0;
  }
  json result;
  if (r.kappa) {
    result["kappa"] = *r.kappa;
  } else {
    result["kappa"] = "undetermined";
  }
  result["status"] = kappa_status_name(r.status);
  emit_record("kappa", params, result);
  return 0;
}

int run_milestones(u64 bound, u64 max_len, const GlobalOpts& g) {
  json params;
  params["bound"] = bound;
  params["max_len"] = max_len;
  std::vector<Milestone> list = milestones(bound, max_len, g.scan());
  if (g.format == "csv") {
    std::cout << "position,length,word,up_to_bound\n";
    for (const auto& m : list) {
      std::cout << m.position << "," << m.word.size() << "," << m.word.text()
                << "," << (m.up_to_bound ? 1 : 0) << "\n";
    }
    return 0;
  }
  if (g.format == "text") {
    for (const auto& m : list) {
      std::cout << m.position << "  " << m.word.text()
                << (m.up_to_bound ? "  (up to bound)" : "  (proved)") << "\n";
    }
    return 0;
  }
  json result = json::array();
  for (const auto& m : list) {
    json item;
    item["position"] = m.position;
    item["word"] = m.word.text();
    item["up_to_bound"] = m.up_to_bound;
    result.push_back(item);
  }
  emit_record("milestones", params, result);
  return 0;
}

int run_density(const DensityTarget& target, u64 max, const std::string& model_text,
                const std::string& checkpoints_text, const GlobalOpts& g) {
  json params;
  params["target"] = target.kind == TargetKind::squarefree ? "squarefree" : target.text;
  params["max"] = max;
  params["model"] = model_text;
  params["checkpoints"] = checkpoints_text;

  DensityModel model;
  double constant = 0.0;
  if (model_text == "pnt") {
    model = DensityModel::pnt;
  } else if (model_text == "li") {
    model = DensityModel::li;
  } else if (model_text == "semiprime") {
    model = DensityModel::semiprime;
  } else if (model_text.rfind("const:", 0) == 0) {
    model = DensityModel::constant;
    constant = std::stod(model_text.substr(6));
  } else {
    throw std::invalid_argument("unknown model: " + model_text);
  }

  std::vector<u64> checkpoints = parse_checkpoints(checkpoints_text);
  DensityReport r = count_matches(target, max, checkpoints, model, constant, g.scan());
  if (g.format == "csv" || g.format == "text") {
    std::cout << "x,count,model_value,ratio\n";
    for (const auto& c : r.checkpoints) {
      std::cout << c.x << "," << c.count << "," << c.model_value << "," << c.ratio << "\n";
    }
    return 0;
  }
  json result = json::array();
  for (const auto& c : r.checkpoints) {
    json item;
    item["x"] = c.x;
    item["count"] = c.count;
    item["model_value"] = c.model_value;
    item["ratio"] = c.ratio;
    result.push_back(item);
  }
  emit_record("density", params, result);
  return 0;
}

int run_gaps(const std::string& word_text, u64 max, const GlobalOpts& g) {
  json params;
  params["word"] = word_text;
  params["max"] = max;
  Word w = parse_word(word_text);
  GapReport r = gap_stats(w, max, g.scan());
  if (g.format == "csv" || g.format == "text") {
    std::cout << "gap,count\n";
    for (const auto& [gap, count] : r.gap_histogram) {
      std::cout << gap << "," << count << "\n";
    }
    return 0;
  }
  json result;
  result["max_gap"] = r.max_gap;
  json hist = json::object();
  for (const auto& [gap, count] : r.gap_histogram) hist[std::to_string(gap)] = count;
  result["gap_histogram"] = hist;
  emit_record("gaps", params, result);
  return 0;
}

int run_minreal(const std::string& shape_text, bool unordered, const GlobalOpts& g) {
  json params;
  params["shape"] = shape_text;
  params["unordered"] = unordered;
  PlanarShape s = parse(shape_text);
  u64 value = unordered ? min_realization_unordered(canonicalize(s)) : min_realization(s);
  if (g.format == "text" || g.format == "csv") {
    std::cout << value << "\n";
    return 0;
  }
  emit_record("minreal", params, json{{"value", value}});
  return 0;
}

int run_compare(const std::string& path, const std::string& kind, u64 max,
                const GlobalOpts& g) {
  json params;
  params["oeis_bfile"] = path;
  params["kind"] = kind;
  params["max"] = max;

  ShapeKind k = kind == "unordered" ? ShapeKind::unordered : ShapeKind::planar;
  FirstOccurrenceList ours = first_occurrences(max, k, g.segment_size);
  std::vector<BFileEntry> theirs = read_bfile(path);

  json mismatches = json::array();
  std::size_t compared = 0;
  for (const BFileEntry& e : theirs) {
    if (e.value > max) break;
    if (e.index < 1 || e.index > ours.entries.size() ||
        ours.entries[e.index - 1] != e.value) {
      json item;
      item["index"] = e.index;
      item["bfile_value"] = e.value;
      if (e.index >= 1 && e.index <= ours.entries.size()) {
        item["computed_value"] = ours.entries[e.index - 1];
      }
      mismatches.push_back(item);
    }
    ++compared;
  }
  // entries we found below max that the b-file prefix is missing
  if (compared < ours.entries.size() &&
      (theirs.empty() || theirs.back().value <= max)) {
    for (std::size_t i = compared; i < ours.entries.size(); ++i) {
      json item;
      item["index"] = i + 1;
      item["computed_value"] = ours.entries[i];
      item["bfile_value"] = nullptr;
      mismatches.push_back(item);
    }
  }

  if (g.format == "text" || g.format == "csv") {
    std::cout << "compared," << compared << "\nmismatches," << mismatches.size() << "\n";
    return mismatches.empty() ? 0 : 1;
  }
  json result;
  result["compared"] = compared;
  result["mismatch_count"] = mismatches.size();
  result["mismatches"] = mismatches;
  emit_record("compare", params, result);
  return mismatches.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-tower tree sequence explorer"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("NATAVE_SEGMENT_SIZE")) {
    g.segment_size = std::strtoull(env, nullptr, 10);
    if (g.segment_size == 0) g.segment_size = kDefaultSegmentSize;
  }
  app.add_option("--format", g.format, "Output format: json, csv, text (tree also: dot)")
      ->default_val("json");
  app.add_option("--threads", g.threads, "Worker threads for scans (0 = auto)");

  // tree
  u64 tree_n = 0;
  bool tree_labeled = false, tree_unordered = false;
  auto* tree_cmd = app.add_subcommand("tree", "Print the tree of an integer");
  tree_cmd->add_option("n", tree_n, "Integer to map")->required();
  tree_cmd->add_flag("--labeled", tree_labeled, "Keep prime labels");
  tree_cmd->add_flag("--unordered", tree_unordered, "Canonical (order-free) form");

  // seq
  u64 seq_max = 0;
  std::string seq_kind = "planar";
  auto* seq_cmd = app.add_subcommand("seq", "First-occurrence integers of new shapes");
  seq_cmd->add_option("--max", seq_max, "Scan bound")->required();
  seq_cmd->add_option("--kind", seq_kind, "planar or unordered")
      ->check(CLI::IsMember({"planar", "unordered"}));

  // match
  std::string match_word;
  u64 match_max = 0;
  std::optional<u64> match_limit;
  u64 match_limit_raw = 0;
  auto* match_cmd = app.add_subcommand("match", "Find occurrences of a word");
  match_cmd->add_option("--word", match_word, "Word text, e.g. \"(()) * (())\"")->required();
  match_cmd->add_option("--max", match_max, "Scan bound")->required();
  auto* limit_opt = match_cmd->add_option("--limit", match_limit_raw, "Stop after K positions");

  // kappa
  u64 kappa_n = 0, kappa_bound = 0, kappa_cap = 64;
  std::string kappa_dir;
  auto* kappa_cmd = app.add_subcommand("kappa", "Uniqueness radius of a window");
  kappa_cmd->add_option("--n", kappa_n, "Anchor")->required();
  kappa_cmd->add_option("--direction", kappa_dir, "plus or minus")
      ->required()
      ->check(CLI::IsMember({"plus", "minus"}));
  kappa_cmd->add_option("--bound", kappa_bound, "Scan bound")->required();
  kappa_cmd->add_option("--cap", kappa_cap, "Largest window extension tried");

  // milestones
  u64 mile_bound = 0, mile_len = 0;
  auto* mile_cmd = app.add_subcommand("milestones", "Unique irreducible windows");
  mile_cmd->add_option("--bound", mile_bound, "Scan bound")->required();
  mile_cmd->add_option("--max-len", mile_len, "Largest word length")->required();

  // density
  std::string den_word, den_shape, den_model, den_checkpoints;
  bool den_squarefree = false;
  u64 den_max = 0;
  auto* den_cmd = app.add_subcommand("density", "Counts vs analytic models");
  auto* dw = den_cmd->add_option("--word", den_word, "Word target");
  auto* ds = den_cmd->add_option("--shape", den_shape, "Single-shape target");
  auto* dq = den_cmd->add_flag("--squarefree", den_squarefree, "Squarefree (bush) target");
  dw->excludes(ds)->excludes(dq);
  ds->excludes(dq);
  den_cmd->add_option("--max", den_max, "Scan bound")->required();
  den_cmd->add_option("--model", den_model, "pnt | li | semiprime | const:<c>")->required();
  den_cmd->add_option("--checkpoints", den_checkpoints, "Comma-separated x values")->required();

  // gaps
  std::string gaps_word;
  u64 gaps_max = 0;
  auto* gaps_cmd = app.add_subcommand("gaps", "Gap histogram of a word's occurrences");
  gaps_cmd->add_option("--word", gaps_word, "Word text")->required();
  gaps_cmd->add_option("--max", gaps_max, "Scan bound")->required();

  // minreal
  std::string minreal_shape;
  bool minreal_unordered = false;
  auto* minreal_cmd = app.add_subcommand("minreal", "Least integer realizing a shape");
  minreal_cmd->add_option("--shape", minreal_shape, "Parenthesis shape")->required();
  minreal_cmd->add_flag("--unordered", minreal_unordered, "Minimize over child orderings");

  // compare
  std::string cmp_path, cmp_kind = "planar";
  u64 cmp_max = 0;
  auto* cmp_cmd = app.add_subcommand("compare", "Check the seq against an OEIS b-file");
  cmp_cmd->add_option("--oeis-bfile", cmp_path, "Path to b-file")->required();
  cmp_cmd->add_option("--kind", cmp_kind, "planar or unordered")
      ->check(CLI::IsMember({"planar", "unordered"}));
  cmp_cmd->add_option("--max", cmp_max, "Scan bound")->required();

  for (CLI::App* sub : {tree_cmd, seq_cmd, match_cmd, kappa_cmd, mile_cmd, den_cmd,
                        gaps_cmd, minreal_cmd, cmp_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (limit_opt->count() > 0) match_limit = match_limit_raw;

  try {
    if (tree_cmd->parsed()) return run_tree(tree_n, tree_labeled, tree_unordered, g);
    if (seq_cmd->parsed()) return run_seq(seq_max, seq_kind, g);
    if (match_cmd->parsed()) return run_match(match_word, match_max, match_limit, g);
    if (kappa_cmd->parsed()) return run_kappa(kappa_n, kappa_dir, kappa_bound, kappa_cap, g);
    if (mile_cmd->parsed()) return run_milestones(mile_bound, mile_len, g);
    if (den_cmd->parsed()) {
      DensityTarget target;
      if (den_squarefree) {
        target.kind = TargetKind::squarefree;
      } else if (!den_shape.empty()) {
        target.kind = TargetKind::word;
        target.text = den_shape;
      } else if (!den_word.empty()) {
        target.kind = TargetKind::word;
        target.text = den_word;
      } else {
        throw std::invalid_argument("density: need --word, --shape or --squarefree");
      }
      return run_density(target, den_max, den_model, den_checkpoints, g);
    }
    if (gaps_cmd->parsed()) return run_gaps(gaps_word, gaps_max, g);
    if (minreal_cmd->parsed()) return run_minreal(minreal_shape, minreal_unordered, g);
    if (cmp_cmd->parsed()) return run_compare(cmp_path, cmp_kind, cmp_max, g);
  } catch (const std::exception& e) {
    json rec;
    rec["error"] = e.what();
    std::cout << rec.dump() << "\n";
    return 1;
  }
  return 0;
}
