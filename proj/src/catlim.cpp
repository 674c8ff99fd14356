#include "folkcat/catlim.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <string>

namespace folkcat {

namespace {

int pair_lookup(const std::vector<std::pair<int, int>>& v, int a, int b) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i].first == a && v[i].second == b) return static_cast<int>(i);
  throw InternalFault("pair_lookup: pair not present");
}

}  // namespace

int ProductResult::object_index(ObjId a, ObjId b) const {
  return pair_lookup(obj_pairs, a, b);
}
int ProductResult::morphism_index(MorId m, MorId n) const {
  return pair_lookup(mor_pairs, m, n);
}
int PullbackResult::object_index(ObjId a, ObjId b) const {
  return pair_lookup(obj_pairs, a, b);
}
int PullbackResult::morphism_index(MorId m, MorId n) const {
  return pair_lookup(mor_pairs, m, n);
}

namespace {

// Shared construction for product (no filter) and pullback (matching images).
template <typename ObjOk, typename MorOk>
void build_pair_category(const FinCat& A, const FinCat& B, ObjOk obj_ok,
                         MorOk mor_ok, FinCat& cat,
                         std::vector<std::pair<ObjId, ObjId>>& obj_pairs,
                         std::vector<std::pair<MorId, MorId>>& mor_pairs,
                         FinFunctor& proj1, FinFunctor& proj2) {
  std::map<std::pair<int, int>, int> oidx, midx;
  for (ObjId x = 0; x < A.object_count(); ++x)
    for (ObjId y = 0; y < B.object_count(); ++y) {
      if (!obj_ok(x, y)) continue;
      int o = cat.add_object("(" + A.object_name(x) + "," + B.object_name(y) + ")");
      oidx[{x, y}] = o;
      obj_pairs.emplace_back(x, y);
      midx[{A.identity(x), B.identity(y)}] = cat.identity(o);
    }
  // mor_pairs indexed by morphism id of cat
  mor_pairs.resize(cat.morphism_count());
  for (auto& [k, v] : midx) mor_pairs[v] = k;
  for (MorId m = 0; m < A.morphism_count(); ++m)
    for (MorId n = 0; n < B.morphism_count(); ++n) {
      if (A.is_identity(m) && B.is_identity(n)) continue;
      if (!mor_ok(m, n)) continue;
      auto s = oidx.find({A.src(m), B.src(n)});
      auto t = oidx.find({A.tgt(m), B.tgt(n)});
      if (s == oidx.end() || t == oidx.end()) continue;
      int id = cat.add_morphism(s->second, t->second,
                                "(" + A.morphism_name(m) + "," + B.morphism_name(n) + ")");
      midx[{m, n}] = id;
      mor_pairs.emplace_back(m, n);
    }
  for (const auto& [gp, gid] : midx)
    for (const auto& [fp, fid] : midx) {
      if (!cat.composable(gid, fid)) continue;
      cat.set_composite(gid, fid,
                        midx.at({A.compose(gp.first, fp.first),
                                 B.compose(gp.second, fp.second)}));
    }
  proj1.dom = cat;
  proj2.dom = cat;
  proj1.cod = A;
  proj2.cod = B;
  for (auto& [x, y] : obj_pairs) {
    proj1.omap.push_back(x);
    proj2.omap.push_back(y);
  }
  for (auto& [m, n] : mor_pairs) {
    proj1.mmap.push_back(m);
    proj2.mmap.push_back(n);
  }
}

}  // namespace

ProductResult product(const FinCat& a, const FinCat& b) {
  ProductResult r;
  build_pair_category(
      a, b, [](ObjId, ObjId) { return true; }, [](MorId, MorId) { return true; },
      r.cat, r.obj_pairs, r.mor_pairs, r.proj1, r.proj2);
  r.proj1.dom = r.cat;
  r.proj2.dom = r.cat;
  return r;
}

PullbackResult pullback(const FinFunctor& f, const FinFunctor& g) {
  if (!f.cod.same_table(g.cod))
    throw ShapeError("pullback: functors have different codomains");
  PullbackResult r;
  build_pair_category(
      f.dom, g.dom,
      [&](ObjId x, ObjId y) { return f.omap[x] == g.omap[y]; },
      [&](MorId m, MorId n) { return f.mmap[m] == g.mmap[n]; }, r.cat,
      r.obj_pairs, r.mor_pairs, r.to_a, r.to_b);
  r.to_a.dom = r.cat;
  r.to_b.dom = r.cat;
  return r;
}

CoproductResult coproduct(const FinCat& a, const FinCat& b) {
  CoproductResult r;
  std::vector<ObjId> oa(a.object_count()), ob(b.object_count());
  for (ObjId x = 0; x < a.object_count(); ++x)
    oa[x] = r.cat.add_object(a.object_name(x));
  for (ObjId y = 0; y < b.object_count(); ++y)
    ob[y] = r.cat.add_object(b.object_name(y));
  std::vector<MorId> ma(a.morphism_count()), mb(b.morphism_count());
  for (MorId m = 0; m < a.morphism_count(); ++m)
    ma[m] = a.is_identity(m)
                ? r.cat.identity(oa[a.src(m)])
                : r.cat.add_morphism(oa[a.src(m)], oa[a.tgt(m)], a.morphism_name(m));
  for (MorId m = 0; m < b.morphism_count(); ++m)
    mb[m] = b.is_identity(m)
                ? r.cat.identity(ob[b.src(m)])
                : r.cat.add_morphism(ob[b.src(m)], ob[b.tgt(m)], b.morphism_name(m));
  for (MorId g2 = 0; g2 < a.morphism_count(); ++g2)
    for (MorId f = 0; f < a.morphism_count(); ++f)
      if (a.composable(g2, f))
        r.cat.set_composite(ma[g2], ma[f], ma[a.compose(g2, f)]);
  for (MorId g2 = 0; g2 < b.morphism_count(); ++g2)
    for (MorId f = 0; f < b.morphism_count(); ++f)
      if (b.composable(g2, f))
        r.cat.set_composite(mb[g2], mb[f], mb[b.compose(g2, f)]);
  r.inj1 = FinFunctor{a, r.cat, oa, ma};
  r.inj2 = FinFunctor{b, r.cat, ob, mb};
  return r;
}

EqualizerResult equalizer(const FinFunctor& f, const FinFunctor& g) {
  if (!f.dom.same_table(g.dom) || !f.cod.same_table(g.cod))
    throw ShapeError("equalizer: functors not parallel");
  const FinCat& A = f.dom;
  EqualizerResult r;
  std::vector<int> oidx(A.object_count(), -1), midx(A.morphism_count(), -1);
  for (ObjId x = 0; x < A.object_count(); ++x)
    if (f.omap[x] == g.omap[x]) {
      oidx[x] = r.cat.add_object(A.object_name(x));
      midx[A.identity(x)] = r.cat.identity(oidx[x]);
    }
  for (MorId m = 0; m < A.morphism_count(); ++m) {
    if (A.is_identity(m) || f.mmap[m] != g.mmap[m]) continue;
    if (oidx[A.src(m)] < 0 || oidx[A.tgt(m)] < 0) continue;
    midx[m] = r.cat.add_morphism(oidx[A.src(m)], oidx[A.tgt(m)], A.morphism_name(m));
  }
  for (MorId g2 = 0; g2 < A.morphism_count(); ++g2)
    for (MorId m = 0; m < A.morphism_count(); ++m)
      if (A.composable(g2, m) && midx[g2] >= 0 && midx[m] >= 0)
        r.cat.set_composite(midx[g2], midx[m], midx[A.compose(g2, m)]);
  r.include.dom = r.cat;
  r.include.cod = A;
  for (ObjId x = 0; x < A.object_count(); ++x)
    if (oidx[x] >= 0) r.include.omap.push_back(x);
  for (MorId m = 0; m < A.morphism_count(); ++m)
    if (midx[m] >= 0) r.include.mmap.push_back(m);
  // equalized morphisms between equalized objects are closed under
  // composition, so every composite slot above was filled
  return r;
}

int FunctorCategory::object_index(const FinFunctor& f) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i].omap == f.omap && objects[i].mmap == f.mmap)
      return static_cast<int>(i);
  throw InternalFault("FunctorCategory::object_index: functor not present");
}

int FunctorCategory::morphism_index(int src_idx, int tgt_idx,
                                    const std::vector<MorId>& components) const {
  for (size_t i = 0; i < transforms.size(); ++i) {
    if (transforms[i].components != components) continue;
    if (cat.src(static_cast<MorId>(i)) == src_idx &&
        cat.tgt(static_cast<MorId>(i)) == tgt_idx)
      return static_cast<int>(i);
  }
  throw InternalFault("FunctorCategory::morphism_index: transform not present");
}

FunctorCategory functor_category(const FinCat& a, const FinCat& b,
                                 std::uint64_t guard) {
  FunctorCategory r;
  r.objects = all_functors(a, b, guard);
  int n = static_cast<int>(r.objects.size());
  // the composition table is quadratic in the morphism count, so the guard
  // also bounds table cells: without this a large hom category exhausts
  // memory long before the morphism counter reaches the guard
  if (static_cast<std::uint64_t>(n) * n > guard)
    throw SizeGuardError("functor_category exceeded size guard");
  for (int i = 0; i < n; ++i) r.cat.add_object("F" + std::to_string(i));
  r.transforms.resize(r.cat.morphism_count());
  for (int i = 0; i < n; ++i)
    r.transforms[r.cat.identity(i)] = identity_transform(r.objects[i]);
  std::uint64_t total = 0;
  // keyed by (source index, target index, components)
  std::map<std::tuple<int, int, std::vector<MorId>>, MorId> midx;
  for (int i = 0; i < n; ++i)
    midx[{i, i, identity_transform(r.objects[i]).components}] = r.cat.identity(i);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (const NatTransform& tr : all_transforms(r.objects[s], r.objects[t], guard)) {
        if (s == t && tr.components == r.transforms[r.cat.identity(s)].components)
          continue;
        ++total;
        std::uint64_t m = r.cat.morphism_count() + 1;
        if (total > guard || m * m > guard)
          throw SizeGuardError("functor_category exceeded size guard");
        MorId id = r.cat.add_morphism(s, t);
        r.transforms.push_back(tr);
        midx[{s, t, tr.components}] = id;
      }
  for (MorId g = 0; g < r.cat.morphism_count(); ++g)
    for (MorId f = 0; f < r.cat.morphism_count(); ++f) {
      if (!r.cat.composable(g, f)) continue;
      NatTransform c = vertical_compose(r.transforms[g], r.transforms[f]);
      r.cat.set_composite(g, f, midx.at({r.cat.src(f), r.cat.tgt(g), c.components}));
    }
  return r;
}

FunctorCategory cotensor_arrow(const FinCat& b, std::uint64_t guard) {
  return functor_category(named(NamedCat::Arrow), b, guard);
}

ProductResult tensor_arrow(const FinCat& a) {
  return product(named(NamedCat::Arrow), a);
}

int ArrowPseudolimit::object_index(ObjId a, ObjId b, MorId beta) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == std::make_tuple(a, b, beta)) return static_cast<int>(i);
  throw InternalFault("ArrowPseudolimit::object_index: triple not present");
}

ArrowPseudolimit pseudolimit_of_arrow(const FinFunctor& f) {
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  ArrowPseudolimit r;
  for (ObjId a = 0; a < A.object_count(); ++a)
    for (MorId beta = 0; beta < B.morphism_count(); ++beta)
      if (B.tgt(beta) == f.omap[a] && B.is_iso(beta)) {
        r.objects.emplace_back(a, B.src(beta), beta);
        r.L.add_object("(" + A.object_name(a) + "," + B.object_name(B.src(beta)) +
                       "," + B.morphism_name(beta) + ")");
      }
  int n = static_cast<int>(r.objects.size());
  // morphisms are pairs (p, q) making the comparison square commute
  std::map<std::tuple<int, int, MorId, MorId>, MorId> midx;
  std::vector<std::pair<MorId, MorId>> mor_pairs(r.L.morphism_count());
  for (int x = 0; x < n; ++x) {
    auto [a, b, beta] = r.objects[x];
    midx[{x, x, A.identity(a), B.identity(b)}] = r.L.identity(x);
    mor_pairs[r.L.identity(x)] = {A.identity(a), B.identity(b)};
  }
  for (int x = 0; x < n; ++x) {
    auto [a, b, beta] = r.objects[x];
    for (int y = 0; y < n; ++y) {
      auto [a2, b2, beta2] = r.objects[y];
      for (MorId p : A.hom(a, a2))
        for (MorId q : B.hom(b, b2)) {
          if (B.compose(f.mmap[p], beta) != B.compose(beta2, q)) continue;
          if (x == y && A.is_identity(p) && B.is_identity(q)) continue;
          MorId id = r.L.add_morphism(x, y, "(" + A.morphism_name(p) + "," +
                                                B.morphism_name(q) + ")");
          midx[{x, y, p, q}] = id;
          mor_pairs.emplace_back(p, q);
        }
    }
  }
  for (MorId g = 0; g < r.L.morphism_count(); ++g)
    for (MorId m = 0; m < r.L.morphism_count(); ++m) {
      if (!r.L.composable(g, m)) continue;
      auto [pg, qg] = mor_pairs[g];
      auto [pm, qm] = mor_pairs[m];
      r.L.set_composite(g, m, midx.at({r.L.src(m), r.L.tgt(g), A.compose(pg, pm),
                                       B.compose(qg, qm)}));
    }
  r.u.dom = r.L;
  r.u.cod = A;
  r.v.dom = r.L;
  r.v.cod = B;
  for (auto& [a, b, beta] : r.objects) {
    r.u.omap.push_back(a);
    r.v.omap.push_back(b);
  }
  for (auto& [p, q] : mor_pairs) {
    r.u.mmap.push_back(p);
    r.v.mmap.push_back(q);
  }
  r.lambda.source = r.v;
  r.lambda.target = compose_functors(f, r.u);
  for (auto& [a, b, beta] : r.objects) r.lambda.components.push_back(beta);
  r.d.dom = A;
  r.d.cod = r.L;
  for (ObjId a = 0; a < A.object_count(); ++a)
    r.d.omap.push_back(r.object_index(a, f.omap[a], B.identity(f.omap[a])));
  for (MorId p = 0; p < A.morphism_count(); ++p)
    r.d.mmap.push_back(midx.at({r.d.omap[A.src(p)], r.d.omap[A.tgt(p)], p, f.mmap[p]}));
  r.zeta.source = compose_functors(r.d, r.u);
  r.zeta.target = identity_functor(r.L);
  for (int x = 0; x < n; ++x) {
    auto [a, b, beta] = r.objects[x];
    r.zeta.components.push_back(
        midx.at({r.d.omap[a], x, A.identity(a), *B.inverse(beta)}));
  }
  return r;
}

ArrowPseudocolimit pseudocolimit_of_arrow(const FinFunctor& f) {
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  ArrowPseudocolimit r;
  int nA = A.object_count();
  int n = nA + B.object_count();
  auto hat = [&](int x) { return x < nA ? f.omap[x] : x - nA; };
  for (ObjId a = 0; a < nA; ++a) r.C.add_object("l:" + A.object_name(a));
  for (ObjId b = 0; b < B.object_count(); ++b) r.C.add_object("r:" + B.object_name(b));
  // pc[x][y][m]: the copy of m in hom_C(x, y)
  std::map<std::tuple<int, int, MorId>, MorId> pc;
  std::vector<std::tuple<int, int, MorId>> back(r.C.morphism_count());
  for (int x = 0; x < n; ++x) {
    pc[{x, x, B.identity(hat(x))}] = r.C.identity(x);
    back[r.C.identity(x)] = {x, x, B.identity(hat(x))};
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (MorId m : B.hom(hat(x), hat(y))) {
        if (x == y && B.is_identity(m)) continue;
        MorId id = r.C.add_morphism(x, y, B.morphism_name(m));
        pc[{x, y, m}] = id;
        back.emplace_back(x, y, m);
      }
  for (MorId g = 0; g < r.C.morphism_count(); ++g)
    for (MorId m = 0; m < r.C.morphism_count(); ++m) {
      if (!r.C.composable(g, m)) continue;
      auto [y, z, bg] = back[g];
      auto [x, y2, bm] = back[m];
      r.C.set_composite(g, m, pc.at({x, z, B.compose(bg, bm)}));
    }
  r.i.dom = A;
  r.i.cod = r.C;
  for (ObjId a = 0; a < nA; ++a) r.i.omap.push_back(a);
  for (MorId p = 0; p < A.morphism_count(); ++p)
    r.i.mmap.push_back(pc.at({A.src(p), A.tgt(p), f.mmap[p]}));
  r.j.dom = B;
  r.j.cod = r.C;
  for (ObjId b = 0; b < B.object_count(); ++b) r.j.omap.push_back(nA + b);
  for (MorId m = 0; m < B.morphism_count(); ++m)
    r.j.mmap.push_back(pc.at({nA + B.src(m), nA + B.tgt(m), m}));
  r.e.dom = r.C;
  r.e.cod = B;
  for (int x = 0; x < n; ++x) r.e.omap.push_back(hat(x));
  for (MorId m = 0; m < r.C.morphism_count(); ++m)
    r.e.mmap.push_back(std::get<2>(back[m]));
  r.lambda.source = r.i;
  r.lambda.target = compose_functors(r.j, f);
  for (ObjId a = 0; a < nA; ++a)
    r.lambda.components.push_back(pc.at({a, nA + f.omap[a], B.identity(f.omap[a])}));
  r.epsilon.source = compose_functors(r.j, r.e);
  r.epsilon.target = identity_functor(r.C);
  for (int x = 0; x < n; ++x)
    r.epsilon.components.push_back(pc.at({nA + hat(x), x, B.identity(hat(x))}));
  return r;
}

QuotientResult quotient_by_pairs(const FinCat& b,
                                 const std::vector<std::pair<MorId, MorId>>& pairs) {
  int m = b.morphism_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;  // smallest id is the representative
    return true;
  };
  for (auto [x, y] : pairs) {
    if (b.src(x) != b.src(y) || b.tgt(x) != b.tgt(y))
      throw ShapeError("quotient_by_pairs: generating pair is not parallel");
    unite(x, y);
  }
  // pre/post-composition saturation until fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (MorId x = 0; x < m; ++x)
      for (MorId y = x + 1; y < m; ++y) {
        if (find(x) != find(y)) continue;
        for (MorId w = 0; w < m; ++w) {
          if (b.composable(w, x) && unite(b.compose(w, x), b.compose(w, y)))
            changed = true;
          if (b.composable(x, w) && unite(b.compose(x, w), b.compose(y, w)))
            changed = true;
        }
      }
  }
  QuotientResult r;
  for (ObjId a = 0; a < b.object_count(); ++a) r.cat.add_object(b.object_name(a));
  std::vector<MorId> newid(m, -1);
  for (MorId x = 0; x < m; ++x) {
    if (find(x) != x) continue;
    bool has_identity = false;
    for (MorId y = 0; y < m; ++y)
      if (find(y) == x && b.is_identity(y)) has_identity = true;
    newid[x] = has_identity ? r.cat.identity(b.src(x))
                            : r.cat.add_morphism(b.src(x), b.tgt(x), b.morphism_name(x));
  }
  for (MorId x = 0; x < m; ++x) newid[x] = newid[find(x)];
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (b.composable(g, f))
        r.cat.set_composite(newid[g], newid[f], newid[b.compose(g, f)]);
  r.mor_class = newid;
  r.p.dom = b;
  r.p.cod = r.cat;
  r.p.omap.resize(b.object_count());
  std::iota(r.p.omap.begin(), r.p.omap.end(), 0);
  r.p.mmap = newid;
  if (auto v = validate(r.cat); !v.ok)
    throw InternalFault("quotient_by_pairs produced an invalid category: " +
                        v.violation->detail);
  return r;
}

CoequifierWitness coequifier(const NatTransform& alpha, const NatTransform& beta) {
  if (!same_functor(alpha.source, beta.source) ||
      !same_functor(alpha.target, beta.target))
    throw ShapeError("coequifier: 2-cells are not parallel");
  std::vector<std::pair<MorId, MorId>> pairs;
  for (size_t a = 0; a < alpha.components.size(); ++a)
    pairs.emplace_back(alpha.components[a], beta.components[a]);
  QuotientResult q = quotient_by_pairs(alpha.source.cod, pairs);
  return CoequifierWitness{q.cat, q.p, q.mor_class};
}

namespace {

struct CoinsBuilder {
  const FinFunctor& f;
  const FinFunctor& g;
  const FinCat& A;
  const FinCat& B;

  CoinsBuilder(const FinFunctor& f_, const FinFunctor& g_)
      : f(f_), g(g_), A(f_.dom), B(f_.cod) {}

  ObjId letter_src(const CoinsLetter& l) const {
    return l.is_sigma ? f.omap[l.id] : B.src(l.id);
  }
  ObjId letter_tgt(const CoinsLetter& l) const {
    return l.is_sigma ? g.omap[l.id] : B.tgt(l.id);
  }

  // word[0] applied last; returns false when the step cap is hit
  bool normalize(std::vector<CoinsLetter>& w) const {
    for (int steps = 0; steps < 10000; ++steps) {
      bool changed = false;
      for (size_t i = 0; i + 1 < w.size() && !changed; ++i) {
        CoinsLetter& x = w[i];      // applied after y
        CoinsLetter& y = w[i + 1];
        if (!x.is_sigma && !y.is_sigma) {
          MorId c = B.compose(x.id, y.id);
          if (B.is_identity(c))
            w.erase(w.begin() + i, w.begin() + i + 2);
          else {
            x.id = c;
            w.erase(w.begin() + i + 1);
          }
          changed = true;
        } else if (x.is_sigma && !y.is_sigma) {
          // sigma_{a'} . f(p) -> g(p) . sigma_{src p}, smallest such p
          for (MorId p = 0; p < A.morphism_count(); ++p) {
            if (A.is_identity(p)) continue;
            if (f.mmap[p] != y.id || A.tgt(p) != x.id) continue;
            CoinsLetter gs{false, g.mmap[p]};
            CoinsLetter sa{true, A.src(p)};
            w.erase(w.begin() + i, w.begin() + i + 2);
            w.insert(w.begin() + i, sa);
            if (!B.is_identity(gs.id)) w.insert(w.begin() + i, gs);
            changed = true;
            break;
          }
        }
      }
      if (!changed) return true;
    }
    return false;
  }
};

std::string word_key(ObjId src, const std::vector<CoinsLetter>& w) {
  std::string k = std::to_string(src) + "|";
  for (const auto& l : w)
    k += (l.is_sigma ? "s" : "b") + std::to_string(l.id) + ".";
  return k;
}

}  // namespace

CoinserterResult coinserter_bounded(const FinFunctor& f, const FinFunctor& g,
                                    int budget) {
  if (!f.dom.same_table(g.dom) || !f.cod.same_table(g.cod))
    throw ShapeError("coinserter_bounded: functors not parallel");
  CoinsBuilder cb(f, g);
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;

  struct Entry {
    ObjId src, tgt;
    std::vector<CoinsLetter> word;  // empty = identity at src
  };
  std::vector<Entry> entries;
  std::map<std::string, int> index;
  auto word_src = [&](const std::vector<CoinsLetter>& w, ObjId fallback) {
    return w.empty() ? fallback : cb.letter_src(w.back());
  };
  auto word_tgt = [&](const std::vector<CoinsLetter>& w, ObjId fallback) {
    return w.empty() ? fallback : cb.letter_tgt(w.front());
  };
  auto intern = [&](std::vector<CoinsLetter> w, ObjId fallback_obj) -> int {
    ObjId s = word_src(w, fallback_obj);
    ObjId t = word_tgt(w, fallback_obj);
    std::string k = word_key(s, w);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(entries.size());
    entries.push_back({s, t, std::move(w)});
    index[k] = id;
    return id;
  };

  for (ObjId b = 0; b < B.object_count(); ++b) intern({}, b);
  for (MorId m = 0; m < B.morphism_count(); ++m)
    if (!B.is_identity(m)) intern({{false, m}}, -1);
  std::vector<int> sigma_entry(A.object_count());
  for (ObjId a = 0; a < A.object_count(); ++a) {
    std::vector<CoinsLetter> w{{true, a}};
    if (!cb.normalize(w)) throw InternalFault("coinserter: normalization stuck");
    sigma_entry[a] = intern(std::move(w), f.omap[a]);
  }

  int seed = static_cast<int>(entries.size());
  std::map<std::pair<int, int>, int> comp;  // (x, y) -> x.y
  std::queue<int> fresh;
  for (int i = 0; i < seed; ++i) fresh.push(i);
  int created = 0;
  CoinserterResult r;

  std::vector<int> done;  // entries whose pair-closure has been processed
  while (!fresh.empty()) {
    int x = fresh.front();
    fresh.pop();
    // compose x with everything currently known (both sides)
    int known = static_cast<int>(entries.size());
    for (int y = 0; y < known; ++y) {
      for (auto [l, rgt] : {std::pair<int, int>{x, y}, {y, x}}) {
        if (comp.count({l, rgt})) continue;
        if (entries[rgt].tgt != entries[l].src) continue;
        std::vector<CoinsLetter> w = entries[l].word;
        w.insert(w.end(), entries[rgt].word.begin(), entries[rgt].word.end());
        if (!cb.normalize(w)) {
          r.diverged = true;
          r.frontier = static_cast<int>(fresh.size()) + 1;
          return r;
        }
        int before = static_cast<int>(entries.size());
        int id = intern(std::move(w), entries[rgt].src);
        comp[{l, rgt}] = id;
        if (static_cast<int>(entries.size()) > before) {
          fresh.push(id);
          if (++created > budget) {
            r.diverged = true;
            r.frontier = static_cast<int>(fresh.size());
            return r;
          }
        }
      }
    }
  }

  // assemble the category; identities are the empty words
  FinCat cat;
  std::vector<MorId> entry_mor(entries.size());
  for (ObjId b = 0; b < B.object_count(); ++b) {
    ObjId o = cat.add_object(B.object_name(b));
    entry_mor[b] = cat.identity(o);  // entry b is the empty word at object b
  }
  for (size_t i = B.object_count(); i < entries.size(); ++i)
    entry_mor[i] = cat.add_morphism(entries[i].src, entries[i].tgt);
  for (auto& [k, v] : comp) cat.set_composite(entry_mor[k.first], entry_mor[k.second], entry_mor[v]);
  cat.close_identities();

  FinFunctor p;
  p.dom = B;
  p.cod = cat;
  p.omap.resize(B.object_count());
  std::iota(p.omap.begin(), p.omap.end(), 0);
  p.mmap.resize(B.morphism_count());
  for (MorId m = 0; m < B.morphism_count(); ++m)
    p.mmap[m] = B.is_identity(m)
                    ? cat.identity(B.src(m))
                    : entry_mor[index.at(word_key(B.src(m), {{false, m}}))];
  std::vector<MorId> sigma(A.object_count());
  for (ObjId a = 0; a < A.object_count(); ++a)
    sigma[a] = entry_mor[sigma_entry[a]];

  std::vector<std::vector<CoinsLetter>> words(cat.morphism_count());
  for (size_t i = 0; i < entries.size(); ++i) words[entry_mor[i]] = entries[i].word;

  // impose any naturality relations the oriented rewriting missed (including
  // those whose left side involves an identity image, which the word pattern
  // cannot see)
  auto eval_word = [&](std::vector<CoinsLetter> w, ObjId at) -> MorId {
    if (!cb.normalize(w)) throw InternalFault("coinserter: normalization stuck");
    ObjId s = w.empty() ? at : cb.letter_src(w.back());
    return entry_mor[index.at(word_key(s, w))];
  };
  std::vector<std::pair<MorId, MorId>> missing;
  for (MorId pmor = 0; pmor < A.morphism_count(); ++pmor) {
    std::vector<CoinsLetter> lhs{{true, A.tgt(pmor)}};
    if (!B.is_identity(f.mmap[pmor])) lhs.push_back({false, f.mmap[pmor]});
    std::vector<CoinsLetter> rhs;
    if (!B.is_identity(g.mmap[pmor])) rhs.push_back({false, g.mmap[pmor]});
    rhs.push_back({true, A.src(pmor)});
    MorId l = eval_word(lhs, f.omap[A.src(pmor)]);
    MorId rr = eval_word(rhs, f.omap[A.src(pmor)]);
    if (l != rr) missing.emplace_back(l, rr);
  }
  if (!missing.empty()) {
    QuotientResult q = quotient_by_pairs(cat, missing);
    r.cat = q.cat;
    r.p = compose_functors(q.p, p);
    for (ObjId a = 0; a < A.object_count(); ++a)
      sigma[a] = q.mor_class[sigma[a]];
    r.words.assign(q.cat.morphism_count(), {});
    for (MorId m = cat.morphism_count() - 1; m >= 0; --m)
      r.words[q.mor_class[m]] = words[m];  // smallest original id wins
    for (ObjId o = 0; o < q.cat.object_count(); ++o)
      r.words[q.cat.identity(o)] = {};
  } else {
    r.cat = cat;
    r.p = p;
    r.words = words;
  }
  r.sigma = sigma;
  if (auto v = validate(r.cat); !v.ok)
    throw InternalFault("coinserter produced an invalid category: " +
                        v.violation->detail);
  if (auto v = validate(r.p); !v.ok)
    throw InternalFault("coinserter projection fails to validate");
  return r;
}

std::optional<FinFunctor> coinserter_induce(const CoinserterResult& r,
                                            const FinFunctor& h,
                                            const std::vector<MorId>& tau) {
  if (r.diverged) throw ShapeError("coinserter_induce: diverged result");
  const FinCat& X = h.cod;
  FinFunctor q;
  q.dom = r.cat;
  q.cod = X;
  q.omap = h.omap;  // objects of the coinserter are the objects of B
  q.mmap.resize(r.cat.morphism_count());
  for (MorId m = 0; m < r.cat.morphism_count(); ++m) {
    const auto& w = r.words[m];
    MorId acc = X.identity(h.omap[r.cat.src(m)]);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      MorId step = it->is_sigma ? tau[it->id] : h.mmap[it->id];
      acc = X.compose_raw(step, acc);
      if (acc < 0) return std::nullopt;
    }
    q.mmap[m] = acc;
  }
  if (auto v = validate(q); !v.ok) return std::nullopt;
  if (!same_functor(compose_functors(q, r.p), h)) return std::nullopt;
  return q;
}

SplitResult split_idempotent(const FinFunctor& e) {
  if (!e.dom.same_table(e.cod))
    throw ShapeError("split_idempotent: not an endofunctor");
  if (!same_functor(compose_functors(e, e), e))
    throw ShapeError("split_idempotent: functor is not strictly idempotent");
  const FinCat& X = e.dom;
  SplitResult r;
  std::vector<int> oidx(X.object_count(), -1), midx(X.morphism_count(), -1);
  for (ObjId x = 0; x < X.object_count(); ++x)
    if (e.omap[x] == x) {
      oidx[x] = r.S.add_object(X.object_name(x));
      midx[X.identity(x)] = r.S.identity(oidx[x]);
    }
  for (MorId m = 0; m < X.morphism_count(); ++m) {
    if (X.is_identity(m) || e.mmap[m] != m) continue;
    midx[m] = r.S.add_morphism(oidx[X.src(m)], oidx[X.tgt(m)], X.morphism_name(m));
  }
  for (MorId g2 = 0; g2 < X.morphism_count(); ++g2)
    for (MorId m = 0; m < X.morphism_count(); ++m)
      if (X.composable(g2, m) && midx[g2] >= 0 && midx[m] >= 0)
        r.S.set_composite(midx[g2], midx[m], midx[X.compose(g2, m)]);
  r.section.dom = r.S;
  r.section.cod = X;
  for (ObjId x = 0; x < X.object_count(); ++x)
    if (oidx[x] >= 0) r.section.omap.push_back(x);
  for (MorId m = 0; m < X.morphism_count(); ++m)
    if (midx[m] >= 0) r.section.mmap.push_back(m);
  r.retraction.dom = X;
  r.retraction.cod = r.S;
  for (ObjId x = 0; x < X.object_count(); ++x)
    r.retraction.omap.push_back(oidx[e.omap[x]]);
  for (MorId m = 0; m < X.morphism_count(); ++m)
    r.retraction.mmap.push_back(midx[e.mmap[m]]);
  return r;
}

}  // namespace folkcat
