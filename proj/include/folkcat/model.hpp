#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folkcat/catlim.hpp"
#include "folkcat/enumerate.hpp"
#include "folkcat/fincat.hpp"

namespace folkcat {

/// Pseudo-inverse g with invertible gf => 1 and fg => 1, chosen
/// deterministically (smallest ids first).
struct EquivalenceWitness {
  FinFunctor inverse;
  NatTransform unit;    // g.f => id_dom, invertible
  NatTransform counit;  // f.g => id_cod, invertible
};

struct IsoLift {
  ObjId e;        // object upstairs
  MorId beta;     // iso downstairs with target f(e)
  ObjId e_prime;  // lifted source, f(e_prime) = src(beta)
  MorId eps;      // iso e_prime => e upstairs with f(eps) = beta
};

struct IsofibrationWitness {
  std::vector<IsoLift> lifts;  // the full lift table
};

struct ClassReport {
  FinFunctor subject;
  bool is_weak_equivalence = false;
  bool is_fibration = false;
  bool is_cofibration = false;
  bool is_trivial_fibration = false;
  bool is_trivial_cofibration = false;
  std::optional<EquivalenceWitness> equivalence;
  std::optional<IsofibrationWitness> lift_table;
  std::optional<FinFunctor> section;  // for trivial fibrations: f.section = id
  std::optional<std::pair<ObjId, ObjId>> object_collision;  // cofibration failure
};

std::optional<EquivalenceWitness> is_equivalence(const FinFunctor& f);
std::optional<IsofibrationWitness> is_isofibration(const FinFunctor& f);
bool is_cofibration(const FinFunctor& f);

/// Route (b) for trivial fibrations: g with f.g = id exactly and g.f
/// naturally isomorphic to the identity.
std::optional<FinFunctor> retract_equivalence_section(
    const FinFunctor& f, std::uint64_t guard = kDefaultGuard);

/// Runs every decision procedure on f. Always computes the trivial-fibration
/// flag by both routes (fibration-and-equivalence, and section search) and
/// throws InternalFault if they disagree.
ClassReport classify(const FinFunctor& f, std::uint64_t guard = kDefaultGuard);

struct LiftingProblem {
  FinFunctor i;       // A -> B
  FinFunctor p;       // C -> D
  FinFunctor top;     // A -> C
  FinFunctor bottom;  // B -> D
};

ValidationReport validate(const LiftingProblem& sq);

/// Exhaustive search for w : B -> C with w.i = top and p.w = bottom; the
/// first solution in deterministic order, or nullopt (a successful negative
/// answer, distinct from errors).
std::optional<FinFunctor> solve_lift(const LiftingProblem& sq,
                                     std::uint64_t guard = kDefaultGuard);

/// True iff every commuting square from i to p has a lift.
bool has_lifting_property(const FinFunctor& i, const FinFunctor& p,
                          std::uint64_t guard = kDefaultGuard,
                          LiftingProblem* counterexample = nullptr);

enum class FactorMode { WeThenFib, CofThenTrivFib, TrivCofThenFib };

struct FactorizationWitness {
  FinFunctor left;
  FinFunctor right;
  FactorMode mode;
  ClassReport left_report;
  ClassReport right_report;
};

/// Constructive factorizations through the pseudolimit (WeThenFib), the
/// pseudocolimit (CofThenTrivFib) or both (TrivCofThenFib).
FactorizationWitness factor(const FinFunctor& f, FactorMode mode);

struct CornerReport {
  FinFunctor corner;  // hom(B,C) -> hom(A,C) x_{hom(A,D)} hom(B,D)
  bool corner_is_isofibration = false;
  bool corner_is_equivalence = false;
  bool i_trivial = false;  // i was a trivial cofibration
  bool p_trivial = false;  // p was a trivial fibration
};

/// Builds the four hom categories, the pullback and the comparison functor,
/// then classifies it.
CornerReport corner_map(const FinFunctor& i, const FinFunctor& p,
                        std::uint64_t guard = kDefaultGuard);

/// Both sides of the pseudolimit criterion for isofibrations: the direct
/// lifting definition, and existence of (v', lambda') over the pseudolimit
/// with f.v' = v and f.lambda' = lambda. Returns whether they agree.
bool check_pseudolimit_fibration_criterion(const FinFunctor& f,
                                           std::uint64_t guard = kDefaultGuard);

}  // namespace folkcat
