#include "csl/decomp.hpp"

#include <algorithm>
#include <map>

namespace csl {

Collection::Collection(GroundSet ground, std::vector<Subset> members) : ground_(ground), members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const Subset m = members_[i];
    if (m.empty()) throw MalformedInput("collections cannot contain the empty set");
    if (!ground_.contains(m)) throw MalformedInput("member " + m.to_string() + " is outside the ground set");
    for (std::size_t j = 0; j < i; ++j) {
      if (members_[j] == m) throw MalformedInput("duplicate member " + m.to_string());
    }
  }
}

bool Collection::contains(Subset s) const { return std::find(members_.begin(), members_.end(), s) != members_.end(); }

bool Collection::is_chain() const {
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (!members_[i].proper_subset_of(members_[i - 1])) return false;
  }
  return !members_.empty();
}

bool Collection::is_partition() const {
  std::uint32_t seen = 0;
  for (Subset m : members_) {
    if (seen & m.bits()) return false;
    seen |= m.bits();
  }
  return !members_.empty() && Subset(seen) == ground_.full();
}

Relation make_relation(const Collection& base, RelationKind kind) {
  Relation r;
  const auto& m = base.members();
  switch (kind) {
    case RelationKind::diagonal:
      for (Subset d : m) r.pairs.emplace_back(d, d);
      break;
    case RelationKind::complement:
      for (Subset d : m) r.pairs.emplace_back(d, base.ground().complement(d));
      break;
    case RelationKind::rplus:
    case RelationKind::rminus:
      if (!base.is_chain()) throw PreconditionError("R+ and R- need a chain ordered outermost first");
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (kind == RelationKind::rplus) {
          r.pairs.emplace_back(m[i], i + 1 < m.size() ? m[i + 1] : Subset{});
        } else {
          r.pairs.emplace_back(m[i], i > 0 ? m[i - 1] : Subset{});
        }
      }
      break;
    case RelationKind::consecutive:
      for (std::size_t i = 0; i + 1 < m.size(); ++i) r.pairs.emplace_back(m[i], m[i + 1]);
      break;
    case RelationKind::custom:
      throw PreconditionError("custom relations need explicit pairs");
  }
  return r;
}

Relation make_relation(const Collection& base, const std::vector<SubsetPair>& pairs) {
  auto allowed = [&](Subset s) { return s.empty() || base.contains(s); };
  for (const auto& [c, d] : pairs) {
    if (!allowed(c) || !allowed(d)) {
      throw MalformedInput("relation pair (" + c.to_string() + ", " + d.to_string() +
                           ") is not over the collection and the empty set");
    }
  }
  return Relation{pairs};
}

Relation make_relation(const Collection& base, const RelationSpec& spec) {
  if (spec.kind == RelationKind::custom) return make_relation(base, spec.custom_pairs);
  return make_relation(base, spec.kind);
}

namespace {

void partitions_rec(GroundSet ground, int point, std::vector<std::uint32_t>& blocks, const CollectionVisitor& visit) {
  if (point > ground.n()) {
    std::vector<Subset> members;
    members.reserve(blocks.size());
    for (auto b : blocks) members.emplace_back(b);
    visit(Collection(ground, std::move(members)));
    return;
  }
  const std::uint32_t bit = 1u << (point - 1);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    blocks[k] |= bit;
    partitions_rec(ground, point + 1, blocks, visit);
    blocks[k] &= ~bit;
  }
  blocks.push_back(bit);
  partitions_rec(ground, point + 1, blocks, visit);
  blocks.pop_back();
}

void chains_rec(GroundSet ground, std::vector<Subset>& chain, int max_len, const CollectionVisitor& visit) {
  visit(Collection(ground, chain));
  if (static_cast<int>(chain.size()) >= max_len) return;
  const std::uint32_t outer = chain.back().bits();
  // proper nonempty subsets of the innermost member, in increasing index
  for (std::uint32_t c = 1; c < outer; ++c) {
    if ((c & ~outer) != 0) continue;
    chain.emplace_back(c);
    chains_rec(ground, chain, max_len, visit);
    chain.pop_back();
  }
}

}  // namespace

void for_each_partition(GroundSet ground, const CollectionVisitor& visit) {
  if (ground.n() > kMaxPartitionPoints) {
    throw CapacityError("partition enumeration is limited to n <= " + std::to_string(kMaxPartitionPoints));
  }
  std::vector<std::uint32_t> blocks;
  partitions_rec(ground, 1, blocks, visit);
}

std::vector<Collection> enumerate_partitions(GroundSet ground) {
  std::vector<Collection> out;
  for_each_partition(ground, [&](const Collection& c) { out.push_back(c); });
  return out;
}

std::size_t count_chains(GroundSet ground, std::optional<int> max_len) {
  const int len = max_len ? *max_len : ground.n();
  if (len < 1) return 0;
  // ways[d] = number of chains with outermost member d and at most `level` members
  const std::size_t size = ground.subset_count();
  std::vector<std::size_t> ways(size, 1);
  ways[0] = 0;
  for (int level = 2; level <= len; ++level) {
    std::vector<std::size_t> next(size, 0);
    for (std::size_t d = 1; d < size; ++d) {
      std::size_t total = 1;
      for (std::size_t c = (d - 1) & d; c != 0; c = (c - 1) & d) total += ways[c];
      next[d] = total;
    }
    ways = std::move(next);
  }
  std::size_t total = 0;
  for (std::size_t d = 1; d < size; ++d) total += ways[d];
  return total;
}

void for_each_chain(GroundSet ground, std::optional<int> max_len, const CollectionVisitor& visit) {
  if (!max_len && ground.n() > kMaxChainPoints) {
    throw CapacityError("chain enumeration is limited to n <= " + std::to_string(kMaxChainPoints) +
                        " unless the chain length is bounded");
  }
  if (max_len && *max_len < 1) throw PreconditionError("chain length bound must be >= 1");
  if (max_len && count_chains(ground, max_len) > kMaxChainCount) {
    throw CapacityError("too many chains for the requested length bound");
  }
  const int len = max_len ? std::min(*max_len, ground.n()) : ground.n();
  std::vector<Subset> chain;
  for (std::uint32_t d = 1; d < ground.subset_count(); ++d) {
    chain.assign(1, Subset(d));
    chains_rec(ground, chain, len, visit);
  }
}

std::vector<Collection> enumerate_chains(GroundSet ground, std::optional<int> max_len) {
  std::vector<Collection> out;
  for_each_chain(ground, max_len, [&](const Collection& c) { out.push_back(c); });
  return out;
}

DecompositionSystem::DecompositionSystem(GroundSet ground, std::optional<SystemTag> tag, std::optional<int> max_len,
                                         std::vector<Collection> collections)
    : ground_(ground), tag_(tag), max_chain_len_(max_len), collections_(std::move(collections)) {}

DecompositionSystem DecompositionSystem::symbolic(GroundSet ground, SystemTag tag, std::optional<int> max_chain_len) {
  if (max_chain_len && tag != SystemTag::chain) throw PreconditionError("length bounds only apply to chain systems");
  return DecompositionSystem(ground, tag, max_chain_len, {});
}

DecompositionSystem DecompositionSystem::explicit_list(GroundSet ground, std::vector<Collection> collections) {
  if (collections.empty()) throw PreconditionError("a decomposition system must contain at least one collection");
  for (const auto& c : collections) {
    require_same_ground(ground, c.ground(), "decomposition system");
    if (c.size() == 0) throw MalformedInput("collections in a system must be nonempty");
  }
  return DecompositionSystem(ground, std::nullopt, std::nullopt, std::move(collections));
}

void DecompositionSystem::for_each(const CollectionVisitor& visit) const {
  if (!tag_) {
    for (const auto& c : collections_) visit(c);
    return;
  }
  switch (*tag_) {
    case SystemTag::one: {
      std::vector<Subset> all;
      for (std::uint32_t d = 1; d < ground_.subset_count(); ++d) all.emplace_back(d);
      visit(Collection(ground_, std::move(all)));
      return;
    }
    case SystemTag::singletons:
      for (std::uint32_t d = 1; d < ground_.subset_count(); ++d) visit(Collection(ground_, {Subset(d)}));
      return;
    case SystemTag::part:
      for_each_partition(ground_, visit);
      return;
    case SystemTag::chain:
      for_each_chain(ground_, max_chain_len_, visit);
      return;
  }
}

std::vector<Collection> DecompositionSystem::expand() const {
  std::vector<Collection> out;
  for_each([&](const Collection& c) { out.push_back(c); });
  return out;
}

RelationKind default_relation(SystemTag tag) {
  return tag == SystemTag::chain ? RelationKind::rplus : RelationKind::diagonal;
}

}  // namespace csl
