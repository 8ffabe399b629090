#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "csl/setfn.hpp"

namespace csl {

/// A collection of distinct nonempty subsets. Order is kept as given: for chains the
/// first member is the outermost set D_1 and the last is the innermost D_l.
class Collection {
 public:
  Collection(GroundSet ground, std::vector<Subset> members);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Subset s) const;

  /// Strictly nested in the stored order (outermost first).
  bool is_chain() const;
  /// Pairwise disjoint with union equal to the ground set.
  bool is_partition() const;

  friend bool operator==(const Collection&, const Collection&) = default;

 private:
  GroundSet ground_;
  std::vector<Subset> members_;
};

using SubsetPair = std::pair<Subset, Subset>;

/// Pairs over members and the empty set. Pairs hold raw subsets, so the complement
/// relation may point outside the collection.
struct Relation {
  std::vector<SubsetPair> pairs;
};

enum class RelationKind { diagonal, complement, rplus, rminus, consecutive, custom };

/// Relation choice applied to each collection of a system.
struct RelationSpec {
  RelationKind kind = RelationKind::diagonal;
  std::vector<SubsetPair> custom_pairs;  ///< used when kind == custom
};

/// diagonal: (D, D). complement: (D, D^c). rplus: (D_i, D_{i+1}) with D_{l+1} = {}.
/// rminus: (D_i, D_{i-1}) with D_0 = {}. consecutive: (M_k, M_{k+1}) in stored order.
Relation make_relation(const Collection& base, RelationKind kind);
/// Custom pairs; each coordinate must be a member or the empty set.
Relation make_relation(const Collection& base, const std::vector<SubsetPair>& pairs);
Relation make_relation(const Collection& base, const RelationSpec& spec);

enum class SystemTag { one, part, chain, singletons };

/// Largest n accepted by the partition enumerator (Bell number guard).
inline constexpr int kMaxPartitionPoints = 9;
/// Largest n accepted by the unrestricted chain enumerator.
inline constexpr int kMaxChainPoints = 5;
/// Enumeration cap for length-restricted chain systems.
inline constexpr std::size_t kMaxChainCount = 2'000'000;

using CollectionVisitor = std::function<void(const Collection&)>;

/// Every set partition of [n] exactly once, in restricted-growth-string order.
void for_each_partition(GroundSet ground, const CollectionVisitor& visit);
std::vector<Collection> enumerate_partitions(GroundSet ground);

/// Every strictly nested chain of nonempty subsets, outermost member first. Chains are
/// produced depth first with members in increasing subset index.
void for_each_chain(GroundSet ground, std::optional<int> max_len, const CollectionVisitor& visit);
std::vector<Collection> enumerate_chains(GroundSet ground, std::optional<int> max_len = std::nullopt);

/// Number of chains, counted without enumerating them.
std::size_t count_chains(GroundSet ground, std::optional<int> max_len = std::nullopt);

/// A finite decomposition system: an explicit list or one of the symbolic families.
class DecompositionSystem {
 public:
  static DecompositionSystem symbolic(GroundSet ground, SystemTag tag, std::optional<int> max_chain_len = std::nullopt);
  static DecompositionSystem explicit_list(GroundSet ground, std::vector<Collection> collections);

  const GroundSet& ground() const { return ground_; }
  std::optional<SystemTag> tag() const { return tag_; }
  std::optional<int> max_chain_len() const { return max_chain_len_; }
  const std::vector<Collection>& collections() const { return collections_; }

  /// Visits the expanded collections in canonical order; throws CapacityError past a guard.
  void for_each(const CollectionVisitor& visit) const;
  std::vector<Collection> expand() const;

 private:
  DecompositionSystem(GroundSet ground, std::optional<SystemTag> tag, std::optional<int> max_len,
                      std::vector<Collection> collections);

  GroundSet ground_;
  std::optional<SystemTag> tag_;
  std::optional<int> max_chain_len_;
  std::vector<Collection> collections_;
};

/// The relation each symbolic family is normally paired with.
RelationKind default_relation(SystemTag tag);

}  // namespace csl
