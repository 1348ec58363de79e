#pragma once

#include <optional>
#include <string>

#include "sammy/core.hpp"

namespace sammy {

/// Relabeling-minimal table plus the relabeling that produced it. Two
/// categories are isomorphic exactly when their canonical tables are equal.
struct CanonicalForm {
  FinCat table;
  std::vector<ObjId> obj_perm;  // original object id -> canonical id
  std::vector<MorId> mor_perm;
  std::string key;              // exact_key(table)
};

CanonicalForm canonical(const FinCat& c);

/// Canonical key for any value: the value after canonically relabeling every
/// category appearing in it. Equal keys iff the values are isomorphic in the
/// table-transport sense used for search deduplication.
std::string canonical_key(const Value& v);

/// Backtracking search for an isomorphism, pruned by per-object hom-set
/// degree profiles. Independent of canonical(); the agreement of the two
/// routes is a tested invariant.
std::optional<FunctorData> isomorphic(const FinCat& a, const FinCat& b);

/// Number of invertible functors c -> c.
long automorphisms(const FinCat& c);

/// log2(automorphisms(c)).
double entropy(const FinCat& c);

/// Equivalence of categories, decided as canonical(skeleton(a)) ==
/// canonical(skeleton(b)).
bool equivalent(const FinCat& a, const FinCat& b);

}  // namespace sammy
