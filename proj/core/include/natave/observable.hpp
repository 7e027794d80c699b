#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natave/avenue.hpp"
#include "natave/tree.hpp"

namespace natave {

// One letter of a word: a concrete tree shape or the interior wildcard.
struct Token {
  bool wildcard = false;
  std::string shape;  // serialized planar shape; empty for wildcards

  friend bool operator==(const Token&, const Token&) = default;
};

// Finite sequence of tokens sought as a contiguous window of the tree
// sequence. Wildcards may only appear in the interior.
class Word {
 public:
  explicit Word(std::vector<Token> tokens);

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool has_wildcard() const;

  // Space-separated text form, e.g. "(()) * (())".
  std::string text() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Token> tokens_;
};

Word make_word(std::vector<std::string> token_texts);
Word parse_word(std::string_view text);  // throws ParseError

// The asterisk-free word given by the shapes of [n, n+len-1].
Word word_of(u64 n, u64 len);

Word transpose(const Word& w);

bool window_equal(u64 n, u64 m, u64 len);

bool matches_at(const Word& w, u64 n);

enum class OccurrenceStatus { empty, unique_up_to_bound, unique_proved, multiple };

struct OccurrenceReport {
  Word word;
  u64 bound = 0;
  std::vector<u64> positions;
  OccurrenceStatus status = OccurrenceStatus::empty;
  std::vector<u64> gaps;  // differences of consecutive positions
  bool truncated = false; // stopped at `limit` before reaching the bound
};

struct ScanOptions {
  unsigned threads = 0;  // 0 = available parallelism
  std::size_t segment_size = kDefaultSegmentSize;
};

OccurrenceReport occurrences(const Word& w, u64 bound,
                             std::optional<u64> limit = std::nullopt,
                             const ScanOptions& options = {});

// Matches many words in a single pass over [1, bound].
std::vector<OccurrenceReport> occurrences_batch(std::span<const Word> words, u64 bound,
                                                const ScanOptions& options = {});

// Windows whose single occurrence up to 10^6 is backed by a proof.
bool registry_proves_unique(const Word& w);

enum class Direction { forward, backward };
enum class KappaStatus { unique_up_to_bound, proved, exhausted };

struct KappaResult {
  u64 n = 0;
  Direction direction = Direction::forward;
  u64 bound = 0;
  std::optional<u64> kappa;  // empty when status == exhausted
  KappaStatus status = KappaStatus::exhausted;
};

KappaResult kappa(u64 n, Direction direction, u64 bound, u64 search_cap = 64,
                  const ScanOptions& options = {});

struct Milestone {
  Word word;
  u64 position = 0;
  bool up_to_bound = true;  // false when the registry proves uniqueness
};

// Asterisk-free words of length <= max_len occurring exactly once up to
// `bound` whose every proper contiguous subword occurs at least twice.
std::vector<Milestone> milestones(u64 bound, u64 max_len,
                                  const ScanOptions& options = {});

}  // namespace natave
