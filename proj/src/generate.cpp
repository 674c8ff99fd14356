#include "folkcat/generate.hpp"

#include <algorithm>

#include "folkcat/catlim.hpp"
#include "folkcat/enumerate.hpp"

namespace folkcat {

namespace {

// reflexive-transitive closure of a random relation, resampled with falling
// density until the morphism cap is met
std::vector<std::vector<bool>> random_preorder(std::mt19937_64& rng, int n,
                                               int max_morphisms) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  double density = 0.35;
  for (int attempt = 0; attempt < 24; ++attempt, density *= 0.7) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && coin(rng) < density) le[i][j] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (le[i][k] && le[k][j]) le[i][j] = true;
    int arrows = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) arrows += le[i][j];
    if (arrows <= max_morphisms) return le;
  }
  std::vector<std::vector<bool>> disc(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) disc[i][i] = true;
  return disc;
}

}  // namespace

FinCat random_category(std::mt19937_64& rng, const GenConfig& cfg) {
  std::uniform_int_distribution<int> nobj(0, std::max(0, cfg.max_objects));
  int n = std::min(nobj(rng), cfg.max_morphisms);  // every object costs an identity
  auto le = random_preorder(rng, n, cfg.max_morphisms);

  FinCat c;
  for (int i = 0; i < n; ++i) c.add_object("x" + std::to_string(i));
  // canonical[i][j]: the preorder arrow i -> j, identity on the diagonal
  std::vector<std::vector<MorId>> canonical(n, std::vector<MorId>(n, -1));
  for (int i = 0; i < n; ++i) canonical[i][i] = c.identity(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j])
        canonical[i][j] = c.add_morphism(i, j, "a" + std::to_string(i) + std::to_string(j));

  // parallel duplicates delegate their composites to the canonical arrow, so
  // g.f = canonical(src f, tgt g) whenever neither factor is an identity;
  // this is associative because any such composite only depends on endpoints
  // delegation is associative only when no composite of non-identities can
  // land on an identity, so duplicates are restricted to acyclic preorders
  // and to arrows with distinct endpoints
  bool has_cycle = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) has_cycle |= le[i][j] && le[j][i];
  std::uniform_int_distribution<int> ndup(0, std::max(0, cfg.max_duplicates));
  int dups = has_cycle ? 0 : ndup(rng);
  std::vector<std::pair<int, int>> pool;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j]) pool.emplace_back(i, j);
  for (int k = 0; k < dups && !pool.empty(); ++k) {
    if (c.morphism_count() >= cfg.max_morphisms) break;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    auto [i, j] = pool[pick(rng)];
    c.add_morphism(i, j, "d" + std::to_string(k));
  }
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (!c.composable(g, f)) continue;
      MorId gf = c.is_identity(g)   ? f
                 : c.is_identity(f) ? g
                                    : canonical[c.src(f)][c.tgt(g)];
      c.set_composite(g, f, gf);
    }

  if (cfg.allow_quotient) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < 0.3) {
      std::vector<std::pair<MorId, MorId>> parallel;
      for (MorId x = 0; x < c.morphism_count(); ++x)
        for (MorId y = x + 1; y < c.morphism_count(); ++y)
          if (c.src(x) == c.src(y) && c.tgt(x) == c.tgt(y) && !c.is_identity(x) &&
              !c.is_identity(y))
            parallel.emplace_back(x, y);
      if (!parallel.empty()) {
        std::uniform_int_distribution<size_t> pick(0, parallel.size() - 1);
        c = quotient_by_pairs(c, {parallel[pick(rng)]}).cat;
      }
    }
  }
  if (auto v = validate(c); !v.ok)
    throw InternalFault("random_category produced an invalid table: " +
                        v.violation->detail);
  return c;
}

std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const FinCat& dom,
                                         const FinCat& cod, std::uint64_t guard) {
  if (dom.object_count() > 0 && cod.object_count() == 0) return std::nullopt;
  try {
    // two passes over the same enumeration: count, then stop at a uniform
    // index; avoids materializing the whole functor space
    std::uint64_t count = 0;
    for_each_functor(dom, cod, FunctorConstraints::none(dom), [&](const FinFunctor&) {
      ++count;
      return true;
    }, guard);
    if (count == 0) return std::nullopt;
    std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
    std::uint64_t want = pick(rng), seen = 0;
    std::optional<FinFunctor> out;
    for_each_functor(dom, cod, FunctorConstraints::none(dom), [&](const FinFunctor& f) {
      if (seen++ == want) {
        out = f;
        return false;
      }
      return true;
    }, guard);
    return out;
  } catch (const SizeGuardError&) {
    std::uniform_int_distribution<int> pick(0, cod.object_count() - 1);
    return constant_functor(dom, cod, pick(rng));
  }
}

std::vector<FinCat> random_corpus(std::uint64_t seed, int count, const GenConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::vector<FinCat> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_category(rng, cfg));
  return out;
}

}  // namespace folkcat
