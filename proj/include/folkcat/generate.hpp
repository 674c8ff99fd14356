#pragma once

#include <random>
#include <vector>

#include "folkcat/fincat.hpp"

namespace folkcat {

struct GenConfig {
  int max_objects = 5;
  int max_morphisms = 15;
  int max_duplicates = 3;   // parallel copies freely added to preorder arrows
  bool allow_quotient = true;
};

/// Draws a valid category: a random preorder, up to max_duplicates parallel
/// duplicates with delegated composition, then optionally a coequifier
/// quotient. Always within the configured size caps.
FinCat random_category(std::mt19937_64& rng, const GenConfig& cfg = {});

/// Uniform draw from the functor space when it fits under the guard, else a
/// constant functor at a random object. Returns nullopt when no functor
/// exists (empty codomain under a nonempty domain).
std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const FinCat& dom,
                                         const FinCat& cod,
                                         std::uint64_t guard = 200'000);

std::vector<FinCat> random_corpus(std::uint64_t seed, int count,
                                  const GenConfig& cfg = {});

}  // namespace folkcat
