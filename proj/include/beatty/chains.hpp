#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/largeness.hpp"
#include "beatty/spectrum.hpp"

namespace beatty {

// ---------------------------------------------------------------------------
// decreasing chains C_1 ⊇ C_2 ⊇ ... ⊇ C_k over one shared universe

struct Chain {
  std::vector<IntegerSet> levels;
  std::uint64_t universe_bound = 0;

  std::size_t depth() const { return levels.size(); }
};

inline Chain make_chain(std::vector<IntegerSet> levels, std::uint64_t universe_bound = 0) {
  if (levels.empty()) throw DomainError("chain must have at least one level");
  std::uint64_t bound = universe_bound;
  for (const IntegerSet& lvl : levels) {
    if (lvl.empty()) throw DomainError("chain levels must be nonempty");
    bound = std::max(bound, lvl.universe_bound());
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (!levels[i + 1].is_subset_of(levels[i]))
      throw DomainError("chain level " + std::to_string(i + 2) +
                        " is not contained in level " + std::to_string(i + 1));
  }
  Chain chain;
  chain.universe_bound = bound;
  chain.levels.reserve(levels.size());
  for (IntegerSet& lvl : levels) chain.levels.push_back(lvl.with_universe(bound));
  return chain;
}

struct ChainViolation {
  std::size_t level = 0;  // 1-based
  std::uint64_t x = 0;

  friend bool operator==(const ChainViolation&, const ChainViolation&) = default;
};

struct ChainVerdict {
  bool holds = false;
  std::vector<ChainViolation> violations;   // condition (i), in (level, x) order
  std::vector<std::size_t> family_failures; // condition (ii): 1-based failing levels
};

namespace detail {

struct BitUniverse {
  std::vector<std::uint64_t> words;
  explicit BitUniverse(const IntegerSet& set, std::uint64_t bound) : words(bound / 64 + 1, 0) {
    for (const std::uint64_t e : set.elements()) words[e >> 6] |= 1ull << (e & 63);
  }
  bool test(std::uint64_t v) const { return (words[v >> 6] >> (v & 63)) & 1; }
};

}  // namespace detail

// Condition (i): every shift x <= shift_bound taken from a level re-embeds
// some level, within the window [1, U - x]; elements pushed past the shared
// universe are outside the evidence and are ignored. Condition (ii): every
// level passes the family check.
inline ChainVerdict verify_chain_d(const Chain& chain, const FamilyCheck& family_check,
                                   std::uint64_t shift_bound) {
  if (chain.levels.empty()) throw DomainError("verify_chain_d: empty chain");
  const std::uint64_t universe = chain.universe_bound;

  std::vector<detail::BitUniverse> bits;
  bits.reserve(chain.depth());
  for (const IntegerSet& lvl : chain.levels) bits.emplace_back(lvl, universe);

  ChainVerdict verdict;
  for (std::size_t n = 0; n < chain.depth(); ++n) {
    for (const std::uint64_t x : chain.levels[n].elements()) {
      if (x > shift_bound) break;
      bool witnessed = false;
      for (std::size_t m = 0; m < chain.depth() && !witnessed; ++m) {
        bool contained = true;
        for (const std::uint64_t v : chain.levels[m].elements()) {
          if (v > universe - x) break;
          if (!bits[n].test(x + v)) {
            contained = false;
            break;
          }
        }
        witnessed = contained;
      }
      if (!witnessed) verdict.violations.push_back({n + 1, x});
    }
  }
  for (std::size_t n = 0; n < chain.depth(); ++n) {
    if (!family_check.passes(chain.levels[n])) verdict.family_failures.push_back(n + 1);
  }
  verdict.holds = verdict.violations.empty() && verdict.family_failures.empty();
  return verdict;
}

// C_n = finite sums of the generator tail {x_k : k >= n}. A shift x using
// generators below index m satisfies x + C_m ⊆ C_n outright, so the chain
// certifies itself wherever the needed deeper level exists.
inline Chain canonical_ip_chain(const GeneratorSequence& gen, std::size_t depth) {
  if (depth == 0) throw DomainError("canonical_ip_chain: depth must be positive");
  if (depth >= gen.terms.size())
    throw SizeError("canonical_ip_chain: depth must stay below the generator count");
  const std::uint64_t total = detail::checked_generator_total(gen);
  std::vector<IntegerSet> levels;
  levels.reserve(depth);
  for (std::size_t n = 0; n < depth; ++n) {
    const GeneratorSequence tail(
        std::vector<std::uint64_t>(gen.terms.begin() + static_cast<std::ptrdiff_t>(n), gen.terms.end()));
    levels.push_back(finite_sums(tail).with_universe(total));
  }
  return make_chain(std::move(levels), total);
}

// ---------------------------------------------------------------------------
// certificate trees with materialized branch sets

// Nodes are value sequences over the ambient set, closed under prefixes.
// Each node carries its branch set B_f as stored data; the definitional
// reading B_f = {x : f^x in T} guides construction but finite truncation
// forces the sets to be carried explicitly.
struct CertTree {
  IntegerSet ambient;
  std::uint64_t universe_bound = 0;
  std::vector<std::vector<std::uint64_t>> nodes;  // sorted lexicographically, nodes[0] = root
  std::vector<IntegerSet> branch;                 // parallel to nodes
};

inline CertTree make_cert_tree(IntegerSet ambient,
                               std::vector<std::pair<std::vector<std::uint64_t>, IntegerSet>> entries) {
  if (entries.empty()) throw DomainError("certificate tree must contain the root");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first)
      throw DomainError("certificate tree has a duplicate node");
  }
  if (!entries.front().first.empty())
    throw DomainError("certificate tree is missing the empty root function");

  CertTree tree;
  tree.universe_bound = ambient.universe_bound();
  for (const auto& [node, branch] : entries)
    tree.universe_bound = std::max(tree.universe_bound, branch.universe_bound());
  tree.ambient = ambient.with_universe(tree.universe_bound);

  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < entries.size(); ++i) index.emplace(entries[i].first, i);
  for (const auto& [node, branch] : entries) {
    if (node.empty()) continue;
    auto parent = node;
    parent.pop_back();
    if (!index.contains(parent))
      throw DomainError("certificate tree is not prefix closed");
  }
  tree.nodes.reserve(entries.size());
  tree.branch.reserve(entries.size());
  for (auto& [node, branch] : entries) {
    tree.nodes.push_back(std::move(node));
    tree.branch.push_back(branch.with_universe(tree.universe_bound));
  }
  return tree;
}

struct TreeViolation {
  std::size_t node_index = 0;  // into CertTree::nodes
  std::uint64_t x = 0;

  friend bool operator==(const TreeViolation&, const TreeViolation&) = default;
};

struct TreeVerdict {
  bool holds = false;
  std::vector<TreeViolation> range_violations;        // condition (i): value outside ambient
  std::vector<TreeViolation> containment_violations;  // condition (ii): x + B_{f^x} ⊄ B_f
  std::vector<std::vector<std::size_t>> family_violations;  // condition (iii): node subsets
};

// Condition (iii) runs over intersections of up to subset_bound branch sets;
// nodes whose stored branch set is empty are truncation leaves and carry no
// evidence, so they are excluded there.
inline TreeVerdict verify_tree_b(const CertTree& tree, const FamilyCheck& family_check,
                                 std::size_t subset_bound) {
  if (tree.nodes.empty()) throw DomainError("verify_tree_b: empty tree");
  if (subset_bound == 0) throw DomainError("verify_tree_b: subset bound must be positive");

  TreeVerdict verdict;
  const std::uint64_t universe = tree.universe_bound;

  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) index.emplace(tree.nodes[i], i);

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    for (const std::uint64_t v : tree.nodes[i]) {
      if (!tree.ambient.contains(v)) verdict.range_violations.push_back({i, v});
    }
  }

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const IntegerSet& bf = tree.branch[i];
    for (const std::uint64_t x : bf.elements()) {
      auto child = tree.nodes[i];
      child.push_back(x);
      const auto it = index.find(child);
      if (it == index.end()) continue;  // no deeper evidence at this x
      const IntegerSet& bchild = tree.branch[it->second];
      bool contained = true;
      for (const std::uint64_t v : bchild.elements()) {
        if (v > universe - x) break;
        if (!bf.contains(x + v)) {
          contained = false;
          break;
        }
      }
      if (!contained) verdict.containment_violations.push_back({i, x});
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (!tree.branch[i].empty()) candidates.push_back(i);
  std::uint64_t combos = 0;
  std::vector<std::size_t> pick;
  const std::function<void(std::size_t, const IntegerSet*)> descend =
      [&](std::size_t from, const IntegerSet* acc) {
        for (std::size_t c = from; c < candidates.size(); ++c) {
          if (++combos > 200'000)
            throw SizeError("verify_tree_b: too many branch-set intersections; lower subset_bound");
          pick.push_back(candidates[c]);
          const IntegerSet inter =
              acc == nullptr ? tree.branch[candidates[c]] : acc->intersect(tree.branch[candidates[c]]);
          if (!family_check.passes(inter)) verdict.family_violations.push_back(pick);
          if (pick.size() < subset_bound) descend(c + 1, &inter);
          pick.pop_back();
        }
      };
  descend(0, nullptr);

  verdict.holds = verdict.range_violations.empty() && verdict.containment_violations.empty() &&
                  verdict.family_violations.empty();
  return verdict;
}

// The tree a canonical finite-sums chain induces: nodes are sequences of
// subset sums with strictly increasing generator support, and each node
// stores the finite sums of the tail past its last used generator. Requires
// all 2^k - 1 subset sums distinct so supports are well defined.
inline CertTree canonical_ip_tree(const GeneratorSequence& gen, std::size_t max_len) {
  const std::size_t k = gen.terms.size();
  if (k > 16) throw SizeError("canonical_ip_tree: generator count capped at 16");
  if (max_len == 0 || max_len > k)
    throw DomainError("canonical_ip_tree: max_len must lie in [1, k]");
  const IntegerSet all_sums = finite_sums(gen);
  if (all_sums.size() != (1ull << k) - 1)
    throw DomainError("canonical_ip_tree: generator subset sums collide");
  const std::uint64_t total = all_sums.universe_bound();

  // value -> largest generator index used (unique by distinctness)
  std::map<std::uint64_t, std::size_t> max_index;
  for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
    std::uint64_t sum = 0;
    std::size_t top = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        sum += gen.terms[i];
        top = i + 1;
      }
    }
    max_index[sum] = top;
  }

  std::vector<IntegerSet> tail_sums(k + 2);  // tail_sums[j] = FS({x_j..x_k}), 1-based
  for (std::size_t j = 1; j <= k; ++j) {
    const GeneratorSequence tail(std::vector<std::uint64_t>(
        gen.terms.begin() + static_cast<std::ptrdiff_t>(j - 1), gen.terms.end()));
    tail_sums[j] = finite_sums(tail).with_universe(total);
  }
  tail_sums[k + 1] = IntegerSet({}, total);

  std::vector<std::pair<std::vector<std::uint64_t>, IntegerSet>> entries;
  const std::function<void(const std::vector<std::uint64_t>&, std::size_t)> grow =
      [&](const std::vector<std::uint64_t>& node, std::size_t next_index) {
        if (entries.size() > 20'000)
          throw SizeError("canonical_ip_tree: node budget exceeded; lower max_len or k");
        entries.emplace_back(node, tail_sums[next_index]);
        if (node.size() == max_len) return;
        for (const std::uint64_t x : tail_sums[next_index].elements()) {
          auto child = node;
          child.push_back(x);
          grow(child, max_index.at(x) + 1);
        }
      };
  grow({}, 1);
  return make_cert_tree(finite_sums(gen), std::move(entries));
}

// ---------------------------------------------------------------------------
// the image-chain experiment

struct ImageChainReport {
  ChainVerdict input_verdict;
  Chain image_chain;
  ChainVerdict image_verdict;
};

// Maps every level through the spectrum and re-runs the chain verification
// on the image. Exploratory: the verdict is reported, never asserted.
inline ImageChainReport image_chain_experiment(const SpectrumParams& params, const Chain& chain,
                                               const FamilyCheck& family_check,
                                               std::uint64_t shift_bound) {
  ImageChainReport report;
  report.input_verdict = verify_chain_d(chain, family_check, shift_bound);
  std::vector<IntegerSet> image_levels;
  image_levels.reserve(chain.depth());
  for (const IntegerSet& lvl : chain.levels) image_levels.push_back(spectrum_image(params, lvl));
  std::uint64_t image_bound = 0;
  for (const IntegerSet& lvl : image_levels)
    image_bound = std::max(image_bound, lvl.universe_bound());
  report.image_chain = make_chain(std::move(image_levels), image_bound);
  report.image_verdict = verify_chain_d(report.image_chain, family_check, shift_bound);
  return report;
}

// ---------------------------------------------------------------------------
// chain files: set-file blocks separated by a line of three dashes

inline Chain read_chain(std::istream& in) {
  std::vector<IntegerSet> levels;
  std::string block;
  std::string line;
  const auto flush = [&] {
    std::istringstream stream(block);
    levels.push_back(read_set(stream));
    block.clear();
  };
  while (std::getline(in, line)) {
    std::string_view s = detail::trim(line);
    if (s == "---") {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return make_chain(std::move(levels));
}

inline void write_chain(const Chain& chain, std::ostream& out) {
  for (std::size_t i = 0; i < chain.levels.size(); ++i) {
    if (i) out << "---\n";
    write_set(chain.levels[i], out);
  }
}

inline Chain read_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open chain file '" + path.string() + "'");
  return read_chain(in);
}

inline void write_chain_file(const Chain& chain, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write chain file '" + path.string() + "'");
  write_chain(chain, out);
  if (!out) throw IoError("write failed for chain file '" + path.string() + "'");
}

}  // namespace beatty
