#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "folkcat/enumerate.hpp"
#include "folkcat/fincat.hpp"

namespace folkcat {

struct ProductResult {
  FinCat cat;
  FinFunctor proj1, proj2;
  std::vector<std::pair<ObjId, ObjId>> obj_pairs;
  std::vector<std::pair<MorId, MorId>> mor_pairs;
  int object_index(ObjId a, ObjId b) const;
  int morphism_index(MorId m, MorId n) const;
};
ProductResult product(const FinCat& a, const FinCat& b);

struct CoproductResult {
  FinCat cat;
  FinFunctor inj1, inj2;
};
CoproductResult coproduct(const FinCat& a, const FinCat& b);

struct PullbackResult {
  FinCat cat;
  FinFunctor to_a, to_b;  // projections to dom(f) and dom(g)
  std::vector<std::pair<ObjId, ObjId>> obj_pairs;
  std::vector<std::pair<MorId, MorId>> mor_pairs;
  int object_index(ObjId a, ObjId b) const;
  int morphism_index(MorId m, MorId n) const;
};
/// Pullback of f : A -> C along g : B -> C (strict, objectwise equality).
PullbackResult pullback(const FinFunctor& f, const FinFunctor& g);

struct EqualizerResult {
  FinCat cat;
  FinFunctor include;
};
EqualizerResult equalizer(const FinFunctor& f, const FinFunctor& g);

/// The category of all functors a -> b and all natural transformations,
/// with vertical composition. Carries the enumerated functors and
/// transforms so callers can translate between indices and values.
struct FunctorCategory {
  FinCat cat;
  std::vector<FinFunctor> objects;
  std::vector<NatTransform> transforms;  // indexed by morphisms of cat
  int object_index(const FinFunctor& f) const;
  int morphism_index(int src_idx, int tgt_idx,
                     const std::vector<MorId>& components) const;
};
FunctorCategory functor_category(const FinCat& a, const FinCat& b,
                                 std::uint64_t guard = kDefaultGuard);

FunctorCategory cotensor_arrow(const FinCat& b, std::uint64_t guard = kDefaultGuard);
ProductResult tensor_arrow(const FinCat& a);

/// Pseudolimit of an arrow f : A -> B. Objects of L are triples (a, b, beta)
/// with beta : b ~ f(a) an isomorphism of B; morphisms are commuting squares.
struct ArrowPseudolimit {
  FinCat L;
  FinFunctor u;  // L -> A
  FinFunctor v;  // L -> B
  FinFunctor d;  // A -> L, a |-> (a, f a, id)
  NatTransform lambda;  // v => f.u, invertible
  NatTransform zeta;    // d.u => id_L, invertible
  std::vector<std::tuple<ObjId, ObjId, MorId>> objects;  // (a, b, beta)
  int object_index(ObjId a, ObjId b, MorId beta) const;
};
ArrowPseudolimit pseudolimit_of_arrow(const FinFunctor& f);

/// Pseudocolimit of an arrow f : A -> B. Objects are ob A + ob B; the hom
/// from x to y is hom_B(x^, y^) where a^ = f(a) on the left summand.
struct ArrowPseudocolimit {
  FinCat C;
  FinFunctor i;  // A -> C
  FinFunctor j;  // B -> C
  FinFunctor e;  // C -> B, collapse
  NatTransform lambda;   // i => j.f, invertible
  NatTransform epsilon;  // j.e => id_C, invertible
};
ArrowPseudocolimit pseudocolimit_of_arrow(const FinFunctor& f);

/// Quotient of a category by the composition-stable congruence generated by
/// the given pairs of parallel morphisms. Used by coequifiers and by the
/// coinserter's saturation fallback.
struct QuotientResult {
  FinCat cat;
  FinFunctor p;                 // projection, identity on objects
  std::vector<int> mor_class;   // original morphism -> class representative id
};
QuotientResult quotient_by_pairs(const FinCat& b,
                                 const std::vector<std::pair<MorId, MorId>>& pairs);

struct CoequifierWitness {
  FinCat quotient;
  FinFunctor p;  // B -> quotient, identity on objects
  std::vector<int> mor_class;
};
/// Universal p with p.alpha = p.beta, for parallel 2-cells alpha, beta.
CoequifierWitness coequifier(const NatTransform& alpha, const NatTransform& beta);

/// One letter of a coinserter word: either a morphism of B or the freely
/// added generator at an object of A.
struct CoinsLetter {
  bool is_sigma;
  int id;  // B morphism id, or A object id when is_sigma
  bool operator==(const CoinsLetter&) const = default;
};

struct CoinserterResult {
  bool diverged = false;
  int frontier = 0;  // pending new morphisms when the budget ran out
  FinCat cat;
  FinFunctor p;               // B -> cat
  std::vector<MorId> sigma;   // per object of A: the generator f(a) -> g(a)
  std::vector<std::vector<CoinsLetter>> words;  // normal form per morphism
};
/// Freely adjoins a 2-cell p.f => p.g and saturates composites breadth-first.
/// Returns diverged=true when closure does not complete within the budget
/// (counted in newly created morphisms).
CoinserterResult coinserter_bounded(const FinFunctor& f, const FinFunctor& g,
                                    int budget);

/// Universal property of the coinserter: induce cat -> X from h : B -> X and
/// components tau_a : h(f a) -> h(g a). Returns nullopt when tau is not
/// natural enough for the evaluation to be well defined.
std::optional<FinFunctor> coinserter_induce(const CoinserterResult& r,
                                            const FinFunctor& h,
                                            const std::vector<MorId>& tau);

struct SplitResult {
  FinCat S;
  FinFunctor retraction;  // X -> S
  FinFunctor section;     // S -> X
};
/// Splits a strictly idempotent endofunctor through its fixed subcategory.
SplitResult split_idempotent(const FinFunctor& e);

}  // namespace folkcat
