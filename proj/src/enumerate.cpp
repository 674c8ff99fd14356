#include "folkcat/enumerate.hpp"

#include <algorithm>
#include <array>

namespace folkcat {

FunctorConstraints FunctorConstraints::none(const FinCat& dom) {
  FunctorConstraints c;
  c.obj.resize(dom.object_count());
  c.mor.resize(dom.morphism_count());
  return c;
}

namespace {

// Intersects an "empty means unconstrained" candidate list with {image}.
void fix_in(std::vector<int>& slot, int image) {
  if (slot.empty()) {
    slot.push_back(image);
  } else if (std::find(slot.begin(), slot.end(), image) == slot.end()) {
    slot.assign(1, -1);  // unsatisfiable
  } else {
    slot.assign(1, image);
  }
}

}  // namespace

void FunctorConstraints::fix_object(ObjId a, ObjId image) { fix_in(obj[a], image); }
void FunctorConstraints::fix_morphism(MorId m, MorId image) { fix_in(mor[m], image); }

namespace {

struct FunctorSearch {
  const FinCat& A;
  const FinCat& B;
  const FunctorConstraints& cons;
  const std::function<bool(const FinFunctor&)>& visit;
  std::uint64_t guard;
  std::uint64_t nodes = 0;

  std::vector<MorId> order;                         // non-identity morphisms
  std::vector<std::vector<std::array<int, 3>>> checks;  // per order position
  FinFunctor cur;
  bool stopped = false;

  FunctorSearch(const FinCat& a, const FinCat& b, const FunctorConstraints& c,
                const std::function<bool(const FinFunctor&)>& v, std::uint64_t g)
      : A(a), B(b), cons(c), visit(v), guard(g) {
    cur.dom = A;
    cur.cod = B;
    cur.omap.assign(A.object_count(), -1);
    cur.mmap.assign(A.morphism_count(), -1);
    for (MorId m = 0; m < A.morphism_count(); ++m)
      if (!A.is_identity(m)) order.push_back(m);
    // composition triples checked at the latest assignment position involved
    std::vector<int> pos(A.morphism_count(), -1);
    for (size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
    checks.resize(order.size());
    for (MorId g2 = 0; g2 < A.morphism_count(); ++g2)
      for (MorId f = 0; f < A.morphism_count(); ++f) {
        if (!A.composable(g2, f)) continue;
        MorId gf = A.compose(g2, f);
        int last = std::max({pos[g2], pos[f], pos[gf]});
        if (last >= 0) checks[last].push_back({g2, f, gf});
      }
  }

  void tick() {
    if (++nodes > guard)
      throw SizeGuardError("functor enumeration exceeded size guard");
  }

  bool allowed(const std::vector<int>& slot, int v) const {
    return slot.empty() || std::find(slot.begin(), slot.end(), v) != slot.end();
  }

  // returns false to abort the whole enumeration
  bool assign_morphisms(size_t k) {
    if (k == order.size()) {
      if (!visit(cur)) {
        stopped = true;
        return false;
      }
      return true;
    }
    MorId m = order[k];
    ObjId s = cur.omap[A.src(m)], t = cur.omap[A.tgt(m)];
    for (MorId c : B.hom(s, t)) {
      if (!allowed(cons.mor[m], c)) continue;
      tick();
      cur.mmap[m] = c;
      bool ok = true;
      for (const auto& tr : checks[k])
        if (cur.mmap[tr[2]] != B.compose_raw(cur.mmap[tr[0]], cur.mmap[tr[1]])) {
          ok = false;
          break;
        }
      if (ok && !assign_morphisms(k + 1)) return false;
    }
    cur.mmap[m] = -1;
    return true;
  }

  bool assign_objects(ObjId a) {
    if (a == A.object_count()) {
      // identities are forced
      for (ObjId x = 0; x < A.object_count(); ++x) {
        MorId im = B.identity(cur.omap[x]);
        if (!allowed(cons.mor[A.identity(x)], im)) return true;
        cur.mmap[A.identity(x)] = im;
      }
      return assign_morphisms(0);
    }
    for (ObjId b = 0; b < B.object_count(); ++b) {
      if (!allowed(cons.obj[a], b)) continue;
      tick();
      cur.omap[a] = b;
      if (!assign_objects(a + 1)) return false;
    }
    cur.omap[a] = -1;
    return true;
  }
};

}  // namespace

bool for_each_functor(const FinCat& dom, const FinCat& cod,
                      const FunctorConstraints& cons,
                      const std::function<bool(const FinFunctor&)>& visit,
                      std::uint64_t guard) {
  FunctorSearch s(dom, cod, cons, visit, guard);
  s.assign_objects(0);
  return !s.stopped;
}

std::vector<FinFunctor> all_functors(const FinCat& dom, const FinCat& cod,
                                     std::uint64_t guard) {
  std::vector<FinFunctor> out;
  for_each_functor(dom, cod, FunctorConstraints::none(dom),
                   [&](const FinFunctor& f) {
                     out.push_back(f);
                     return true;
                   },
                   guard);
  return out;
}

std::optional<FinFunctor> first_functor(const FinCat& dom, const FinCat& cod,
                                        const FunctorConstraints& cons,
                                        std::uint64_t guard) {
  std::optional<FinFunctor> out;
  for_each_functor(dom, cod, cons,
                   [&](const FinFunctor& f) {
                     out = f;
                     return false;
                   },
                   guard);
  return out;
}

bool for_each_transform(const FinFunctor& F, const FinFunctor& G,
                        const std::function<bool(const NatTransform&)>& visit,
                        std::uint64_t guard, bool isos_only) {
  if (!F.dom.same_table(G.dom) || !F.cod.same_table(G.cod))
    throw ShapeError("for_each_transform: functors not parallel");
  const FinCat& A = F.dom;
  const FinCat& B = F.cod;
  int n = A.object_count();
  // naturality squares checked once both endpoint components are assigned
  std::vector<std::vector<MorId>> checks(n);
  for (MorId m = 0; m < A.morphism_count(); ++m)
    checks[std::max(A.src(m), A.tgt(m))].push_back(m);

  NatTransform t;
  t.source = F;
  t.target = G;
  t.components.assign(n, -1);
  std::uint64_t nodes = 0;
  bool stopped = false;

  std::function<bool(ObjId)> go = [&](ObjId a) -> bool {
    if (a == n) {
      if (!visit(t)) {
        stopped = true;
        return false;
      }
      return true;
    }
    for (MorId c : B.hom(F.omap[a], G.omap[a])) {
      if (isos_only && !B.is_iso(c)) continue;
      if (++nodes > guard)
        throw SizeGuardError("transform enumeration exceeded size guard");
      t.components[a] = c;
      bool ok = true;
      for (MorId m : checks[a])
        if (B.compose(G.mmap[m], t.components[A.src(m)]) !=
            B.compose(t.components[A.tgt(m)], F.mmap[m])) {
          ok = false;
          break;
        }
      if (ok && !go(a + 1)) return false;
    }
    t.components[a] = -1;
    return true;
  };
  go(0);
  return !stopped;
}

std::vector<NatTransform> all_transforms(const FinFunctor& F, const FinFunctor& G,
                                         std::uint64_t guard) {
  std::vector<NatTransform> out;
  for_each_transform(F, G,
                     [&](const NatTransform& t) {
                       out.push_back(t);
                       return true;
                     },
                     guard);
  return out;
}

bool naturally_isomorphic(const FinFunctor& F, const FinFunctor& G,
                          std::uint64_t guard) {
  bool found = false;
  for_each_transform(F, G,
                     [&](const NatTransform&) {
                       found = true;
                       return false;
                     },
                     guard, /*isos_only=*/true);
  return found;
}

bool for_each_commuting_square(
    const FinFunctor& i, const FinFunctor& p,
    const std::function<bool(const FinFunctor&, const FinFunctor&)>& visit,
    std::uint64_t guard) {
  const FinCat& A = i.dom;
  const FinCat& B = i.cod;
  const FinCat& C = p.dom;
  const FinCat& D = p.cod;
  bool keep = true;
  for_each_functor(
      A, C, FunctorConstraints::none(A),
      [&](const FinFunctor& top) {
        // bottom is constrained on the image of i
        FunctorConstraints cons = FunctorConstraints::none(B);
        for (ObjId a = 0; a < A.object_count(); ++a)
          cons.fix_object(i.omap[a], p.omap[top.omap[a]]);
        for (MorId m = 0; m < A.morphism_count(); ++m)
          cons.fix_morphism(i.mmap[m], p.mmap[top.mmap[m]]);
        return for_each_functor(
            B, D, cons,
            [&](const FinFunctor& bottom) {
              if (!visit(top, bottom)) {
                keep = false;
                return false;
              }
              return true;
            },
            guard);
      },
      guard);
  return keep;
}

}  // namespace folkcat
