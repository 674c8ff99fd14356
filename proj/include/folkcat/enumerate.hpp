#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "folkcat/fincat.hpp"

namespace folkcat {

/// Per-object / per-morphism image constraints for functor enumeration.
/// An empty candidate list means "unconstrained".
struct FunctorConstraints {
  std::vector<std::vector<ObjId>> obj;  // allowed images per domain object
  std::vector<std::vector<MorId>> mor;  // allowed images per domain morphism

  static FunctorConstraints none(const FinCat& dom);
  void fix_object(ObjId a, ObjId image);
  void fix_morphism(MorId m, MorId image);
};

/// Enumerates every functor dom -> cod satisfying the constraints, in a fixed
/// deterministic order, calling visit for each. Stops early when visit
/// returns false. Throws SizeGuardError once the search tree exceeds guard
/// nodes. Returns false when the visitor stopped the enumeration.
bool for_each_functor(const FinCat& dom, const FinCat& cod,
                      const FunctorConstraints& cons,
                      const std::function<bool(const FinFunctor&)>& visit,
                      std::uint64_t guard = kDefaultGuard);

std::vector<FinFunctor> all_functors(const FinCat& dom, const FinCat& cod,
                                     std::uint64_t guard = kDefaultGuard);

/// First functor in enumeration order, if any.
std::optional<FinFunctor> first_functor(const FinCat& dom, const FinCat& cod,
                                        const FunctorConstraints& cons,
                                        std::uint64_t guard = kDefaultGuard);

/// Enumerates natural transformations F => G. Component constraints follow
/// the same convention as FunctorConstraints.
bool for_each_transform(const FinFunctor& F, const FinFunctor& G,
                        const std::function<bool(const NatTransform&)>& visit,
                        std::uint64_t guard = kDefaultGuard,
                        bool isos_only = false);

std::vector<NatTransform> all_transforms(const FinFunctor& F, const FinFunctor& G,
                                         std::uint64_t guard = kDefaultGuard);

/// True iff there is an invertible natural transformation F => G.
bool naturally_isomorphic(const FinFunctor& F, const FinFunctor& G,
                          std::uint64_t guard = kDefaultGuard);

/// Enumerates all commuting squares (top, bottom) with p . top = bottom . i.
bool for_each_commuting_square(
    const FinFunctor& i, const FinFunctor& p,
    const std::function<bool(const FinFunctor& top, const FinFunctor& bottom)>&
        visit,
    std::uint64_t guard = kDefaultGuard);

}  // namespace folkcat
