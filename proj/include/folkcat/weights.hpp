#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folkcat/catlim.hpp"
#include "folkcat/fincat.hpp"
#include "folkcat/model.hpp"

namespace folkcat {

/// A presheaf of categories over a finite base: one category per object,
/// one functor per morphism, contravariantly.
struct Weight {
  FinCat base;
  std::vector<FinCat> at;        // per object of base
  std::vector<FinFunctor> on;    // per morphism m: at[tgt m] -> at[src m]
};
ValidationReport validate(const Weight& w);
bool same_weight(const Weight& a, const Weight& b);

/// A covariant diagram of categories over the same kind of base.
struct Diagram {
  FinCat base;
  std::vector<FinCat> at;
  std::vector<FinFunctor> on;    // per morphism m: at[src m] -> at[tgt m]
};
ValidationReport validate(const Diagram& d);

struct WeightMap {
  Weight source, target;
  std::vector<FinFunctor> components;  // per base object
};
ValidationReport validate(const WeightMap& m);
WeightMap identity_weight_map(const Weight& w);
WeightMap compose_weight_maps(const WeightMap& g, const WeightMap& f);

/// A modification between parallel weight maps: one natural transformation
/// per base object, compatible with the restriction functors.
struct WeightTwoCell {
  WeightMap source, target;
  std::vector<NatTransform> components;
};
ValidationReport validate(const WeightTwoCell& c);

struct WeightClassReport {
  std::vector<ClassReport> at;  // one full report per base object
  bool is_weak_equivalence = false;
  bool is_fibration = false;
  bool is_cofibration = false;
  bool is_trivial_fibration = false;
  bool is_trivial_cofibration = false;
};
/// Pointwise classification: each flag is the conjunction over the base.
WeightClassReport classify_weight_map(const WeightMap& m,
                                      std::uint64_t guard = kDefaultGuard);

/// Construction tree witnessing flexibility: leaves are representables,
/// internal nodes apply the pointwise flexible-colimit constructors. The
/// auxiliary maps and 2-cells are stored against the evaluated child weights.
struct FlexibilityCertificate {
  enum class Kind { Representable, Coproduct, Coequifier, SplitIdempotent, Coinserter };
  Kind kind = Kind::Representable;
  FinCat base;
  ObjId object = -1;  // Representable
  std::vector<FlexibilityCertificate> children;
  std::vector<WeightTwoCell> cells;  // Coequifier: the two parallel 2-cells
  std::vector<WeightMap> maps;       // Coinserter: parallel pair; Split: the idempotent
  int budget = 0;                    // Coinserter
};

struct CertifiedWeight {
  Weight weight;
  FlexibilityCertificate certificate;
};

/// The discrete presheaf hom(-, c), with its leaf certificate.
CertifiedWeight representable(const FinCat& base, ObjId c);
Weight initial_weight(const FinCat& base);
Weight constant_weight(const FinCat& base, const FinCat& value);
/// The unique map from the initial weight.
WeightMap initial_weight_map(const Weight& w);

struct WeightedLimitResult {
  FinCat cat;
  std::vector<std::vector<FinFunctor>> families;        // per object of cat
  std::vector<std::vector<NatTransform>> modifications; // per morphism of cat
  int family_index(const std::vector<FinFunctor>& fam) const;
  int modification_index(int src_idx, int tgt_idx,
                         const std::vector<std::vector<MorId>>& components) const;
};
/// {J,S}: objects are families theta_c : J(c) -> S(c) with
/// theta_d = S(m) . theta_c . J(m) for every m : c -> d; morphisms are
/// modifications.
WeightedLimitResult weighted_limit(const Weight& J, const Diagram& S,
                                   std::uint64_t guard = kDefaultGuard);

/// Checks the defining isomorphism K(A,{J,S}) = [C,Cat](J, K(A,S-)) on the
/// probe A by building both sides and an explicit transpose bijection.
bool weighted_limit_probe_agrees(const Weight& J, const Diagram& S,
                                 const FinCat& A,
                                 std::uint64_t guard = kDefaultGuard);

struct WeightCoproduct {
  Weight w;
  WeightMap in1, in2;
  FlexibilityCertificate cert;
};
WeightCoproduct weight_coproduct(const CertifiedWeight& a, const CertifiedWeight& b);

struct WeightCoequifier {
  Weight w;
  WeightMap p;  // quotient projection from the target of the 2-cells
  FlexibilityCertificate cert;
};
WeightCoequifier weight_coequifier(const WeightTwoCell& alpha,
                                   const WeightTwoCell& beta,
                                   const FlexibilityCertificate& source_cert,
                                   const FlexibilityCertificate& target_cert);

struct WeightSplit {
  Weight w;
  WeightMap retraction, section;
  FlexibilityCertificate cert;
};
WeightSplit weight_split_idempotent(const WeightMap& e,
                                    const FlexibilityCertificate& cert);

struct WeightCoinserter {
  bool diverged = false;
  Weight w;
  WeightMap p;                         // from the target of the parallel pair
  std::vector<std::vector<MorId>> sigma;  // per base object: catlim sigma
  FlexibilityCertificate cert;
};
WeightCoinserter weight_coinserter_bounded(const WeightMap& f, const WeightMap& g,
                                           int budget,
                                           const FlexibilityCertificate& source_cert,
                                           const FlexibilityCertificate& target_cert);

/// Re-evaluates a certificate tree to the weight it constructs.
Weight evaluate(const FlexibilityCertificate& cert);

/// Isomorphism of weights: compatible pointwise table isomorphisms.
bool weights_isomorphic(const Weight& a, const Weight& b,
                        std::uint64_t guard = kDefaultGuard);

struct CertifyOutcome {
  bool ok = false;
  std::string detail;  // first mismatch on failure
};
CertifyOutcome certify_flexible(const Weight& w, const FlexibilityCertificate& cert);

/// Componentwise lift: l with p . l = bottom, natural over the base. This is
/// the lift of the square (0 -> source(bottom)) against p.
std::optional<std::vector<FinFunctor>> solve_weight_lift(
    const WeightMap& p, const WeightMap& bottom, std::uint64_t guard = kDefaultGuard);

struct RefuteOutcome {
  bool found = false;
  std::vector<int> twist;  // per base morphism: endofunctor index of the witness
};
/// Searches twisted-interval trivial fibrations over w for a square with no
/// lift against 0 -> w; finding one refutes cofibrancy, otherwise Unknown.
RefuteOutcome refute_cofibrant(const Weight& w, int budget,
                               std::uint64_t guard = kDefaultGuard);

}  // namespace folkcat
