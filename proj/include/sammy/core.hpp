#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "sammy/errors.hpp"

namespace sammy {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr MorId kNoMor = -1;

/// A finite category as explicit tables. Objects and morphisms are dense
/// integer ids; `comp` is a full n_mor x n_mor matrix with kNoMor on
/// non-composable pairs. Table layout (including the order of morphisms) is
/// part of the value: two values are equal only when the tables are equal.
struct FinCat {
  std::int32_t n_objects = 0;
  std::vector<ObjId> src;       // per morphism
  std::vector<ObjId> tgt;       // per morphism
  std::vector<MorId> identity;  // per object
  std::vector<MorId> comp;      // comp[g * n_mor + f] = g∘f, kNoMor if src(g) != tgt(f)

  std::int32_t n_morphisms() const { return static_cast<std::int32_t>(src.size()); }

  MorId compose(MorId g, MorId f) const { return comp[static_cast<size_t>(g) * src.size() + f]; }

  bool composable(MorId g, MorId f) const { return src[g] == tgt[f]; }

  bool is_identity(MorId m) const { return identity[src[m]] == m && src[m] == tgt[m]; }

  bool operator==(const FinCat&) const = default;
};

/// Object map + morphism map between two explicit categories.
struct FunctorData {
  FinCat dom;
  FinCat cod;
  std::vector<ObjId> obj_map;  // per dom object
  std::vector<MorId> mor_map;  // per dom morphism

  bool operator==(const FunctorData&) const = default;
};

/// Component family between two parallel functors.
struct NatTransData {
  FunctorData src_fun;
  FunctorData tgt_fun;
  std::vector<MorId> components;  // per dom object, a cod morphism F(x) -> G(x)

  bool operator==(const NatTransData&) const = default;
};

/// An object of a specific category; the home tables travel with the id.
struct ObjRef {
  FinCat home;
  ObjId id = 0;
  bool operator==(const ObjRef&) const = default;
};

struct MorRef {
  FinCat home;
  MorId id = 0;
  bool operator==(const MorRef&) const = default;
};

using Value = std::variant<FinCat, FunctorData, NatTransData, ObjRef, MorRef>;

enum class ValueKind { Cat, Functor, NatTrans, Obj, Mor };

ValueKind kind_of(const Value& v);
const char* kind_name(ValueKind k);

// ---------------------------------------------------------------------------
// Validation. Violations are data, not exceptions.

struct Violation {
  std::string law;     // e.g. "left-identity", "associativity"
  std::string detail;  // the witnessing ids
};

std::vector<Violation> validate_category(const FinCat& c);

/// True when obj_map/mor_map preserve src, tgt, identities and composition.
bool check_functor(const FunctorData& f, std::string* why = nullptr);

/// True when src_fun/tgt_fun are parallel, components are typed correctly and
/// every naturality square commutes.
bool check_nat_trans(const NatTransData& t, std::string* why = nullptr);

/// Throws ErrKind::Internal when a freshly built value fails its validator.
void require_valid(const FinCat& c, const char* where);
void require_valid(const FunctorData& f, const char* where);
void require_valid(const NatTransData& t, const char* where);

// ---------------------------------------------------------------------------
// Constants.

enum class ConstantCat { Zero, One, Two, IsoTwo };
enum class ConstantFun { S, T, Bang01, Bang02, Bang21, SrcOf, TgtOf };

FinCat constant(ConstantCat name);
FunctorData constant_functor(ConstantFun name);

FinCat make_zero();
FinCat make_one();
FinCat make_two();
FinCat make_iso_two();

/// The n-object total order 0 -> 1 -> ... -> n-1 (n(n+1)/2 morphisms).
FinCat make_chain(int n);

/// Discrete category on n objects.
FinCat make_discrete(int n);

// ---------------------------------------------------------------------------
// Elementary operations.

FunctorData identity_functor(const FinCat& c);
FinCat source(const FunctorData& f);
FinCat target(const FunctorData& f);

FinCat opposite(const FinCat& c);
FunctorData opposite(const FunctorData& f);

/// The unique functor a -> b; defined when a is empty or b is terminal
/// (one object, one morphism). Type error otherwise.
FunctorData bang(const FinCat& a, const FinCat& b);

/// pick: functor from One yields the picked object, functor from Two the
/// picked morphism. determine: the inverse direction.
Value pick(const FunctorData& f);
FunctorData determine(const FinCat& c, const Value& x);
FunctorData determine_obj(const FinCat& c, ObjId o);
FunctorData determine_mor(const FinCat& c, MorId m);

std::vector<MorId> hom_set(const FinCat& c, ObjId a, ObjId b);

FunctorData compose_functors(const FunctorData& outer, const FunctorData& inner);

/// Relabel objects and morphisms by the given permutations (obj_perm[i] is the
/// new id of object i). Returns the relabeled category together with the
/// witnessing isomorphism from c.
std::pair<FinCat, FunctorData> relabel(const FinCat& c, const std::vector<ObjId>& obj_perm,
                                       const std::vector<MorId>& mor_perm);

/// Random relabeling, for invariance tests.
std::pair<FinCat, FunctorData> shuffle(const FinCat& c, std::mt19937& rng);

// ---------------------------------------------------------------------------
// Exact serialization keys (one line, table order preserved). Equal keys iff
// equal tables.

std::string exact_key(const FinCat& c);
std::string exact_key(const FunctorData& f);
std::string exact_key(const NatTransData& t);
std::string exact_key(const Value& v);

}  // namespace sammy
