#include "cgate/overlap/ngram_index.h"

#include "cgate/common/digest.h"
#include "cgate/common/error.h"
#include "cgate/common/parallel.h"
#include "cgate/common/text.h"
#include "cgate/common/vendor_json.h"

namespace cgate::overlap {

namespace {

constexpr uint64_t kMod = (1ULL << 61) - 1;
constexpr uint64_t kPrimaryBase = 0x1f3d5b79a1c3e5f7ULL % kMod;
constexpr uint64_t kGuardBase = 0x6c8e9cf570932bd5ULL % kMod;
constexpr uint64_t kGuardSeed = 0x84222325cbf29ce4ULL;

uint64_t MulMod(uint64_t a, uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  uint64_t r = static_cast<uint64_t>(p & kMod) + static_cast<uint64_t>(p >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

uint64_t AddMod(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  if (r >= kMod) r -= kMod;
  return r;
}

uint64_t SubMod(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kMod - b; }

uint64_t PowMod(uint64_t base, size_t exp) {
  uint64_t result = 1;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base);
    base = MulMod(base, base);
    exp >>= 1;
  }
  return result;
}

// Rolling polynomial hash over a stream of per-token values.
class Roller {
 public:
  Roller(uint64_t base, size_t n) : base_(base), drop_(PowMod(base, n - 1)) {}

  uint64_t Init(const std::vector<uint64_t>& values, size_t n) {
    hash_ = 0;
    for (size_t i = 0; i < n; ++i) hash_ = AddMod(MulMod(hash_, base_), values[i]);
    return hash_;
  }

  uint64_t Roll(uint64_t removed, uint64_t added) {
    hash_ = AddMod(MulMod(SubMod(hash_, MulMod(removed, drop_)), base_), added);
    return hash_;
  }

 private:
  uint64_t base_;
  uint64_t drop_;
  uint64_t hash_ = 0;
};

std::string JoinWindow(const std::vector<std::string>& tokens, size_t offset, size_t n) {
  std::string out;
  for (size_t i = offset; i < offset + n; ++i) {
    if (i > offset) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::vector<WindowKey> WindowKeys(const std::vector<std::string>& tokens, size_t n, bool with_guard) {
  std::vector<WindowKey> keys;
  if (n == 0 || tokens.size() < n) return keys;
  std::vector<uint64_t> primary(tokens.size()), guard;
  for (size_t i = 0; i < tokens.size(); ++i) primary[i] = Mix64(Fnv1a64(tokens[i])) % kMod;
  if (with_guard) {
    guard.resize(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) guard[i] = Mix64(Fnv1a64(tokens[i], kGuardSeed) ^ 0x5bd1e995ULL) % kMod;
  }
  Roller p(kPrimaryBase, n);
  Roller g(kGuardBase, n);
  keys.reserve(tokens.size() - n + 1);
  WindowKey k;
  k.primary = p.Init(primary, n);
  if (with_guard) k.guard = g.Init(guard, n);
  keys.push_back(k);
  for (size_t i = n; i < tokens.size(); ++i) {
    k.primary = p.Roll(primary[i - n], primary[i]);
    if (with_guard) k.guard = g.Roll(guard[i - n], guard[i]);
    keys.push_back(k);
  }
  return keys;
}

NgramIndex::NgramIndex(IndexOptions options) : options_(options), tokenizer_(options.tokenizer) {
  if (options_.n < 2) throw UsageError("n-gram length must be at least 2");
}

void NgramIndex::Add(const std::string& text) { AddTokens(tokenizer_.Tokenize(text)); }

void NgramIndex::AddTokens(const std::vector<std::string>& tokens) {
  ++stats_.documents;
  if (tokens.size() < options_.n) {
    ++stats_.short_documents;
    return;
  }
  const std::vector<WindowKey> keys = WindowKeys(tokens, options_.n, options_.collision_guard);
  stats_.windows += keys.size();
  const auto doc = static_cast<uint32_t>(targets_.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    digests_.insert(keys[i]);
    if (options_.verify) occurrences_[keys[i]].emplace_back(doc, static_cast<uint32_t>(i));
  }
  if (options_.verify) targets_.push_back(tokens);
}

bool NgramIndex::Matches(const WindowKey& key, const std::vector<std::string>& tokens, size_t offset) const {
  if (!Contains(key)) return false;
  if (!options_.verify) return true;
  auto it = occurrences_.find(key);
  if (it == occurrences_.end()) return false;
  for (const auto& [doc, start] : it->second) {
    const auto& target = targets_[doc];
    bool equal = true;
    for (size_t i = 0; i < options_.n && equal; ++i) equal = target[start + i] == tokens[offset + i];
    if (equal) return true;
  }
  return false;
}

NgramIndex BuildIndex(corpus::CorpusReader& targets, const IndexOptions& options) {
  NgramIndex index(options);
  corpus::DocumentRecord doc;
  while (targets.Next(doc)) index.Add(doc.text);
  return index;
}

OverlapReport Scan(corpus::CorpusReader& corpus, const std::vector<NamedIndex>& indexes, const ScanOptions& options) {
  if (indexes.empty()) throw UsageError("overlap scan needs at least one target index");
  const IndexOptions& first = indexes.front().index->options();
  for (const NamedIndex& ni : indexes) {
    const IndexOptions& io = ni.index->options();
    if (!(io.tokenizer == options.tokenizer)) {
      throw InputError("tokenizer mismatch: index '" + ni.name + "' uses " + io.tokenizer.Id() + ", scan uses " +
                       options.tokenizer.Id());
    }
    if (io.n != first.n || io.collision_guard != first.collision_guard) {
      throw UsageError("all target indexes must share n and collision-guard settings");
    }
  }

  OverlapReport report;
  report.n = first.n;
  report.tokenizer_id = options.tokenizer.Id();
  report.tokenizer_hash = options.tokenizer.Hash();
  report.collision_guard = first.collision_guard;
  report.verified = true;
  for (const NamedIndex& ni : indexes) {
    report.targets.push_back({ni.name, 0, 0, {}, {}});
    report.verified = report.verified && ni.index->options().verify;
  }

  const text::Tokenizer tokenizer(options.tokenizer);
  struct DocHits {
    std::vector<int64_t> first_offset;  // per target, -1 when unmatched
    std::vector<std::string> tokens;
  };

  std::vector<corpus::DocumentRecord> chunk;
  std::vector<DocHits> hits;
  bool more = true;
  while (more) {
    chunk.clear();
    corpus::DocumentRecord doc;
    while (chunk.size() < std::max<size_t>(1, options.chunk_size) && (more = corpus.Next(doc))) {
      chunk.push_back(std::move(doc));
    }
    if (chunk.empty()) break;
    hits.assign(chunk.size(), DocHits{});
    ParallelFor(chunk.size(), options.workers, [&](size_t i) {
      DocHits& h = hits[i];
      h.first_offset.assign(indexes.size(), -1);
      h.tokens = tokenizer.Tokenize(chunk[i].text);
      const std::vector<WindowKey> keys = WindowKeys(h.tokens, first.n, first.collision_guard);
      for (size_t t = 0; t < indexes.size(); ++t) {
        for (size_t w = 0; w < keys.size(); ++w) {
          if (indexes[t].index->Matches(keys[w], h.tokens, w)) {
            h.first_offset[t] = static_cast<int64_t>(w);
            break;
          }
        }
      }
    });
    for (size_t i = 0; i < chunk.size(); ++i) {
      for (size_t t = 0; t < indexes.size(); ++t) {
        TargetOverlap& target = report.targets[t];
        ++target.total_docs;
        if (hits[i].first_offset[t] < 0) continue;
        ++target.matched_docs;
        target.matched_ids.push_back(chunk[i].id);
        if (target.samples.size() < options.max_samples) {
          target.samples.push_back(
              {chunk[i].id, JoinWindow(hits[i].tokens, static_cast<size_t>(hits[i].first_offset[t]), first.n)});
        }
      }
    }
  }
  return report;
}

std::string RenderOverlapCsv(const OverlapReport& report) {
  std::string out = "target,matched_docs,total_docs,matched_pct\n";
  for (const TargetOverlap& t : report.targets) {
    out += text::CsvField(t.name) + "," + std::to_string(t.matched_docs) + "," + std::to_string(t.total_docs) + "," +
           text::FormatFixed(100.0 * t.matched_fraction(), 3) + "\n";
  }
  return out;
}

std::string RenderOverlapJson(const OverlapReport& report) {
  nlohmann::json j = nlohmann::json::object();
  j["n"] = report.n;
  j["tokenizer"] = report.tokenizer_id;
  j["tokenizer_hash"] = report.tokenizer_hash;
  j["collision_guard"] = report.collision_guard;
  j["verified"] = report.verified;
  j["targets"] = nlohmann::json::array();
  for (const TargetOverlap& t : report.targets) {
    nlohmann::json samples = nlohmann::json::array();
    for (const SampleMatch& s : t.samples) samples.push_back({{"doc_id", s.doc_id}, {"window", s.window}});
    j["targets"].push_back({{"target", t.name},
                            {"matched_docs", t.matched_docs},
                            {"total_docs", t.total_docs},
                            {"matched_fraction", t.matched_fraction()},
                            {"matched_ids", t.matched_ids},
                            {"samples", std::move(samples)}});
  }
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

}  // namespace cgate::overlap
