#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "sammy/core.hpp"

namespace sammy {

/// Bounds on constructed tables. Operations that can blow up take these
/// explicitly; exceeding a bound raises ErrKind::SizeBound.
struct SizeLimits {
  int max_objects = 1'000'000;
  int max_morphisms = 1'000'000;
};

// ---------------------------------------------------------------------------
// Colimit-style builders

struct CoproductResult {
  FinCat cat;
  FunctorData inl;
  FunctorData inr;
};
CoproductResult coproduct(const FinCat& a, const FinCat& b);

struct ProductResult {
  FinCat cat;
  FunctorData proj_l;
  FunctorData proj_r;
};
ProductResult product(const FinCat& a, const FinCat& b, const SizeLimits& lim = {});

struct PullbackResult {
  FinCat cat;
  FunctorData to_l;  // projection into dom(f)
  FunctorData to_r;  // projection into dom(g)
};
/// Strict pullback of cospan f : A -> C <- B : g. Objects are pairs agreeing
/// in C, morphisms are pairs agreeing in C.
PullbackResult pullback(const FunctorData& f, const FunctorData& g);

struct CoeqResult {
  FinCat cat;
  FunctorData proj;  // cod(f) -> cat
};
/// Coequalizer of a parallel pair f, g : A ⇉ B. Objects of B are quotiented
/// by the relation generated by f(x) ~ g(x); morphisms are congruence classes
/// of edge words over the quotient graph. The closure is bounded: exceeding
/// max_morphisms classes signals a (possibly infinite) result via SizeBound.
CoeqResult coequalizer_cat(const FunctorData& f, const FunctorData& g, int max_morphisms = 512);

/// Checks couniversality of a computed coequalizer against one competitor
/// target: functors h : B -> x with h∘f = h∘g must correspond one-to-one to
/// functors u : Q -> x via u ↦ u∘proj.
bool verify_coequalizer_against(const FunctorData& f, const FunctorData& g, const CoeqResult& ce,
                                const FinCat& x, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Functor categories

std::vector<FunctorData> enumerate_functors(const FinCat& a, const FinCat& b, long cap = -1);
std::vector<NatTransData> enumerate_nat_trans(const FunctorData& f, const FunctorData& g);

/// The functor category together with decodings of its objects (functors) and
/// morphisms (natural transformations). pow(One, b) is represented by b
/// itself and pow(Zero, b) by One; the decodings stay aligned either way.
struct PowModel {
  FinCat dom_cat;  // the exponent
  FinCat cod_cat;
  FinCat cat;
  std::vector<FunctorData> objects;
  std::vector<NatTransData> morphisms;

  int object_index(const FunctorData& f) const;
  int morphism_index(const NatTransData& t) const;

  // keyed by the maps only; dom/cod agreement is checked on lookup
  std::unordered_map<std::string, int> obj_idx;
  std::unordered_map<std::string, int> mor_idx;
};

PowModel build_pow_model(const FinCat& a, const FinCat& b, const SizeLimits& lim = {});
FinCat pow(const FinCat& a, const FinCat& b, const SizeLimits& lim = {});

/// Contravariant action on the exponent: for f : A -> B, the precomposition
/// functor pow(B, c) -> pow(A, c).
FunctorData pow_on_functor(const FunctorData& f, const FinCat& c, const SizeLimits& lim = {});

// ---------------------------------------------------------------------------
// Comma categories via the two-stage pullback over the arrow category

struct CommaResult {
  FinCat cat;
  FunctorData to_l;      // -> dom(l)
  FunctorData to_r;      // -> dom(r)
  FunctorData to_arrow;  // -> arrow_model.cat, picks the connecting morphism
  PowModel arrow_model;  // pow(Two, cod)
};
CommaResult comma(const FunctorData& l, const FunctorData& r, const SizeLimits& lim = {});

// ---------------------------------------------------------------------------
// Limits and colimits by exhaustive cone search

struct DiagramBound {
  ObjId apex = 0;
  std::vector<MorId> legs;  // per object of the diagram's source
};

/// Terminal cone over the diagram; throws NoUniversal when absent.
DiagramBound limit(const FunctorData& diagram, const SizeLimits& lim = {});
/// Initial cocone under the diagram.
DiagramBound colimit(const FunctorData& diagram, const SizeLimits& lim = {});

// ---------------------------------------------------------------------------
// Kan extensions and liftings

enum class KanSide { Left, Right };

struct KanResult {
  FunctorData extension;   // R : B -> C
  NatTransData transform;  // right: R∘G -> F, left: F -> R∘G
};

/// Pointwise Kan extension of f along g (shared domain). Built per object of
/// cod(g) as a (co)limit over the comma category; the universal property is
/// then checked exhaustively when the competitor count is at most verify_cap
/// (verify_cap < 0 skips the check).
KanResult kan_extension(KanSide side, const FunctorData& g, const FunctorData& f,
                        const SizeLimits& lim = {}, long verify_cap = 2000);

/// The unique comparison transformation induced by a Kan extension: right
/// case γ : H -> R with α · γ_G = β for β : H∘G -> F. Fails with
/// InternalError when the candidate is not unique (kr is then not a Kan
/// extension).
NatTransData kan_induced(const FunctorData& g, const FunctorData& f, const KanResult& kr,
                         const FunctorData& h, const NatTransData& beta);

/// Right Kan lifting of f through g (shared codomain), found by exhaustive
/// search over candidate pairs and direct verification of the lifting
/// universal property.
KanResult kan_lifting(const FunctorData& g, const FunctorData& f, const SizeLimits& lim = {});

bool verify_kan_universal(KanSide side, const FunctorData& g, const FunctorData& f,
                          const KanResult& kr, long competitor_cap = 100000,
                          std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Composability functor and skeleton

/// The composition map (arrows ×_objects arrows) -> arrows of c, assembled
/// from pow, the source/target evaluations and a pullback.
struct ComposableResult {
  FunctorData functor;   // pairs category -> arrow category
  PowModel arrow_model;  // decodes the arrow category
  PullbackResult pairs;  // the composable-pairs pullback
};
ComposableResult composable_functor(const FinCat& c, const SizeLimits& lim = {});

/// One representative object per isomorphism class with full hom-sets, plus
/// the retraction functor.
std::pair<FinCat, FunctorData> skeleton(const FinCat& c);

// ---------------------------------------------------------------------------
// Transformation algebra

NatTransData identity_nat(const FunctorData& f);
/// Vertical composite: second argument first, i.e. vcomp(b, a) is b after a.
NatTransData vcomp(const NatTransData& b, const NatTransData& a);
/// Horizontal composite of b : H -> K (at the codomain level) with
/// a : F -> G; the result runs H∘F -> K∘G.
NatTransData hcomp(const NatTransData& b, const NatTransData& a);

}  // namespace sammy
