#include "natave/observable.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "natave/errors.hpp"

namespace natave {

namespace {

std::vector<u64> gaps_of(const std::vector<u64>& positions) {
  std::vector<u64> g;
  for (std::size_t i = 1; i < positions.size(); ++i) {
    g.push_back(positions[i] - positions[i - 1]);
  }
  return g;
}

OccurrenceStatus status_of(const Word& w, std::size_t count) {
  if (count == 0) return OccurrenceStatus::empty;
  if (count >= 2) return OccurrenceStatus::multiple;
  return registry_proves_unique(w) ? OccurrenceStatus::unique_proved
                                   : OccurrenceStatus::unique_up_to_bound;
}

unsigned effective_threads(const ScanOptions& options) {
  if (options.threads > 0) return options.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

bool token_matches(const Token& t, std::string_view shape) {
  return t.wildcard || t.shape == shape;
}

// Matches all words against positions in [a, b], shapes streamed from a.
std::vector<std::vector<u64>> scan_chunk(std::span<const Word> words, u64 a, u64 b,
                                         u64 bound, std::size_t segment_size) {
  std::size_t max_len = 0;
  for (const Word& w : words) max_len = std::max(max_len, w.size());

  std::vector<std::vector<u64>> found(words.size());
  u64 scan_hi = std::min(bound, b + max_len - 1);
  ShapeStream stream(a, scan_hi, segment_size);
  std::vector<std::string> ring(max_len);
  u64 n;
  std::string_view shape;
  while (stream.next(n, shape)) {
    ring[n % max_len] = shape;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      const auto& tokens = words[wi].tokens();
      u64 len = tokens.size();
      if (n + 1 < a + len) continue;
      u64 p = n + 1 - len;
      if (p < a || p > b) continue;
      bool ok = true;
      for (u64 i = 0; i < len && ok; ++i) {
        ok = token_matches(tokens[i], ring[(p + i) % max_len]);
      }
      if (ok) found[wi].push_back(p);
    }
  }
  return found;
}

}  // namespace

Word::Word(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw std::invalid_argument("Word: need at least one token");
  if (tokens_.front().wildcard || tokens_.back().wildcard) {
    throw std::invalid_argument("Word: wildcard not allowed at the boundary");
  }
  for (const Token& t : tokens_) {
    if (!t.wildcard) parse(t.shape);  // validates; throws ParseError
  }
}

bool Word::has_wildcard() const {
  return std::any_of(tokens_.begin(), tokens_.end(),
                     [](const Token& t) { return t.wildcard; });
}

std::string Word::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens_[i].wildcard ? "*" : tokens_[i].shape;
  }
  return out;
}

Word make_word(std::vector<std::string> token_texts) {
  std::vector<Token> tokens;
  tokens.reserve(token_texts.size());
  for (auto& t : token_texts) {
    if (t == "*") {
      tokens.push_back(Token{true, ""});
    } else {
      tokens.push_back(Token{false, std::move(t)});
    }
  }
  return Word{std::move(tokens)};
}

Word parse_word(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') throw ParseError("unexpected space", i);
    if (text[i] == '*') {
      tokens.push_back(Token{true, ""});
      ++i;
    } else if (text[i] == '(') {
      std::size_t end = text.find(' ', i);
      std::string_view tok = text.substr(i, end == std::string_view::npos
                                                ? std::string_view::npos
                                                : end - i);
      try {
        parse(tok);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), i + e.offset());
      }
      tokens.push_back(Token{false, std::string(tok)});
      i += tok.size();
    } else {
      throw ParseError("expected '(' or '*'", i);
    }
    if (i < text.size()) {
      if (text[i] != ' ') throw ParseError("expected single space between tokens", i);
      ++i;
      if (i == text.size()) throw ParseError("trailing space", i - 1);
    }
  }
  return Word{std::move(tokens)};
}

Word word_of(u64 n, u64 len) {
  AvenueWindow w = window(n, len);
  std::vector<Token> tokens;
  tokens.reserve(len);
  for (const PlanarShape& s : w.shapes) tokens.push_back(Token{false, serialize(s)});
  return Word{std::move(tokens)};
}

Word transpose(const Word& w) {
  std::vector<Token> tokens(w.tokens().rbegin(), w.tokens().rend());
  return Word{std::move(tokens)};
}

bool window_equal(u64 n, u64 m, u64 len) {
  if (n == 0 || m == 0 || len == 0) {
    throw std::invalid_argument("window_equal: need n, m, len >= 1");
  }
  return word_of(n, len) == word_of(m, len);
}

bool matches_at(const Word& w, u64 n) {
  if (n == 0) throw std::invalid_argument("matches_at: need n >= 1");
  const auto& tokens = w.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].wildcard) continue;
    if (shape_string_of(n + i) != tokens[i].shape) return false;
  }
  return true;
}

bool registry_proves_unique(const Word& w) {
  // Windows whose single occurrence is a theorem: the contiguous prime pair
  // at 2, the windows at 4 and 8 settled by divisibility / the Catalan
  // equation, and the length-3 windows at 5, 11 and 17.
  static const std::unordered_set<std::string> registry = [] {
    std::unordered_set<std::string> r;
    r.insert(word_of(2, 2).text());
    r.insert(word_of(4, 2).text());
    r.insert(word_of(8, 2).text());
    r.insert(word_of(5, 3).text());
    r.insert(word_of(11, 3).text());
    r.insert(word_of(17, 3).text());
    return r;
  }();
  return registry.contains(w.text());
}

OccurrenceReport occurrences(const Word& w, u64 bound, std::optional<u64> limit,
                             const ScanOptions& options) {
  if (bound < w.size()) throw std::invalid_argument("occurrences: bound < word length");
  OccurrenceReport report{w, bound, {}, OccurrenceStatus::empty, {}, false};

  if (limit.has_value()) {
    // Single streaming pass with early exit. The scan cap is at least 2 so
    // a single hit can still be told apart from several.
    u64 cap = std::max<u64>(*limit, 2);
    u64 len = w.size();
    ShapeStream stream(1, bound, options.segment_size);
    std::vector<std::string> ring(len);
    u64 n;
    std::string_view shape;
    while (stream.next(n, shape)) {
      ring[n % len] = shape;
      if (n < len) continue;
      u64 p = n + 1 - len;
      bool ok = true;
      const auto& tokens = w.tokens();
      for (u64 i = 0; i < len && ok; ++i) {
        ok = token_matches(tokens[i], ring[(p + i) % len]);
      }
      if (ok) {
        report.positions.push_back(p);
        if (report.positions.size() >= cap) {
          report.truncated = n + 1 <= bound;
          break;
        }
      }
    }
    report.status = status_of(w, report.positions.size());
    if (report.positions.size() > *limit) report.positions.resize(*limit);
  } else {
    auto reports = occurrences_batch(std::span<const Word>(&w, 1), bound, options);
    report = std::move(reports.front());
  }
  report.gaps = gaps_of(report.positions);
  return report;
}

std::vector<OccurrenceReport> occurrences_batch(std::span<const Word> words, u64 bound,
                                                const ScanOptions& options) {
  for (const Word& w : words) {
    if (bound < w.size()) throw std::invalid_argument("occurrences: bound < word length");
  }
  unsigned threads = effective_threads(options);
  u64 chunk = std::max<u64>((bound + threads - 1) / threads, 1);

  std::vector<std::future<std::vector<std::vector<u64>>>> futures;
  for (u64 a = 1; a <= bound; a += chunk) {
    u64 b = std::min(bound, a + chunk - 1);
    futures.push_back(std::async(std::launch::async, [=] {
      return scan_chunk(words, a, b, bound, options.segment_size);
    }));
  }

  std::vector<OccurrenceReport> reports;
  reports.reserve(words.size());
  std::vector<std::vector<u64>> merged(words.size());
  for (auto& f : futures) {
    auto part = f.get();
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      merged[wi].insert(merged[wi].end(), part[wi].begin(), part[wi].end());
    }
  }
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    OccurrenceReport r{words[wi], bound, std::move(merged[wi]),
                       OccurrenceStatus::empty, {}, false};
    r.status = status_of(words[wi], r.positions.size());
    r.gaps = gaps_of(r.positions);
    reports.push_back(std::move(r));
  }
  return reports;
}

KappaResult kappa(u64 n, Direction direction, u64 bound, u64 search_cap,
                  const ScanOptions& options) {
  if (n == 0) throw std::invalid_argument("kappa: need n >= 1");
  KappaResult result{n, direction, bound, std::nullopt, KappaStatus::exhausted};
  for (u64 k = 0; k <= search_cap; ++k) {
    u64 start;
    if (direction == Direction::forward) {
      if (n + k > bound) break;  // window would leave the scanned range
      start = n;
    } else {
      if (k >= n) break;  // backward window may not extend below 1
      start = n - k;
    }
    Word w = word_of(start, k + 1);
    OccurrenceReport r = occurrences(w, bound, 2, options);
    if (r.positions.size() == 1) {
      result.kappa = k;
      result.status = r.status == OccurrenceStatus::unique_proved
                          ? KappaStatus::proved
                          : KappaStatus::unique_up_to_bound;
      return result;
    }
  }
  return result;
}

std::vector<Milestone> milestones(u64 bound, u64 max_len, const ScanOptions& options) {
  if (bound < 2 || max_len < 1) {
    throw std::invalid_argument("milestones: need bound >= 2 and max_len >= 1");
  }

  struct Entry {
    std::uint32_t count = 0;  // saturates at 2
    u64 first = 0;
  };
  std::unordered_map<std::string, Entry> windows;

  // Single pass counting every contiguous window of length <= max_len.
  ShapeStream stream(1, bound, options.segment_size);
  std::vector<std::string> ring(max_len);
  u64 n;
  std::string_view shape;
  while (stream.next(n, shape)) {
    ring[n % max_len] = shape;
    for (u64 len = 1; len <= max_len && len <= n; ++len) {
      u64 p = n + 1 - len;
      std::string key;
      for (u64 i = 0; i < len; ++i) {
        if (i > 0) key.push_back(' ');
        key += ring[(p + i) % max_len];
      }
      Entry& e = windows[key];
      if (e.count == 0) e.first = p;
      if (e.count < 2) ++e.count;
    }
  }

  std::vector<Milestone> out;
  for (const auto& [key, entry] : windows) {
    if (entry.count != 1) continue;
    Word w = parse_word(key);
    const auto& tokens = w.tokens();
    bool irreducible = true;
    for (std::size_t sub_len = 1; sub_len < tokens.size() && irreducible; ++sub_len) {
      for (std::size_t start = 0; start + sub_len <= tokens.size(); ++start) {
        std::string sub;
        for (std::size_t i = 0; i < sub_len; ++i) {
          if (i > 0) sub.push_back(' ');
          sub += tokens[start + i].shape;
        }
        if (windows.at(sub).count < 2) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) {
      out.push_back(Milestone{w, entry.first, !registry_proves_unique(w)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Milestone& a, const Milestone& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.word.size() < b.word.size();
  });
  return out;
}

}  // namespace natave
