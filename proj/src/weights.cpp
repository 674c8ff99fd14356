#include "folkcat/weights.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace folkcat {

namespace {

ValidationReport fail(std::string law, std::string detail) {
  return ValidationReport{false, LawViolation{std::move(law), {}, std::move(detail)}};
}

bool maps_equal(const FinFunctor& a, const FinFunctor& b) {
  return a.omap == b.omap && a.mmap == b.mmap;
}

}  // namespace

ValidationReport validate(const Weight& w) {
  if (auto r = validate(w.base); !r.ok) return r;
  if (static_cast<int>(w.at.size()) != w.base.object_count() ||
      static_cast<int>(w.on.size()) != w.base.morphism_count())
    return fail("weight-shape", "per-object or per-morphism data has wrong length");
  for (const FinCat& c : w.at)
    if (auto r = validate(c); !r.ok) return r;
  for (MorId m = 0; m < w.base.morphism_count(); ++m) {
    const FinFunctor& f = w.on[m];
    if (!f.dom.same_table(w.at[w.base.tgt(m)]) ||
        !f.cod.same_table(w.at[w.base.src(m)]))
      return fail("weight-variance", "restriction functor has wrong endpoints at " +
                                         w.base.morphism_name(m));
    if (auto r = validate(f); !r.ok) return r;
    if (w.base.is_identity(m) && !maps_equal(f, identity_functor(f.dom)))
      return fail("weight-identity", "restriction along an identity is not the identity");
  }
  for (MorId g = 0; g < w.base.morphism_count(); ++g)
    for (MorId f = 0; f < w.base.morphism_count(); ++f) {
      if (!w.base.composable(g, f)) continue;
      // contravariance: restriction along g.f is on[f] after on[g]
      if (!maps_equal(w.on[w.base.compose(g, f)],
                      compose_functors(w.on[f], w.on[g])))
        return fail("weight-functoriality", "restriction along " +
                                                w.base.morphism_name(g) + "." +
                                                w.base.morphism_name(f));
    }
  return {};
}

bool same_weight(const Weight& a, const Weight& b) {
  if (!a.base.same_table(b.base)) return false;
  for (size_t c = 0; c < a.at.size(); ++c)
    if (!a.at[c].same_table(b.at[c])) return false;
  for (size_t m = 0; m < a.on.size(); ++m)
    if (!maps_equal(a.on[m], b.on[m])) return false;
  return true;
}

ValidationReport validate(const Diagram& d) {
  if (auto r = validate(d.base); !r.ok) return r;
  if (static_cast<int>(d.at.size()) != d.base.object_count() ||
      static_cast<int>(d.on.size()) != d.base.morphism_count())
    return fail("diagram-shape", "per-object or per-morphism data has wrong length");
  for (MorId m = 0; m < d.base.morphism_count(); ++m) {
    const FinFunctor& f = d.on[m];
    if (!f.dom.same_table(d.at[d.base.src(m)]) ||
        !f.cod.same_table(d.at[d.base.tgt(m)]))
      return fail("diagram-variance", "action functor has wrong endpoints at " +
                                          d.base.morphism_name(m));
    if (auto r = validate(f); !r.ok) return r;
    if (d.base.is_identity(m) && !maps_equal(f, identity_functor(f.dom)))
      return fail("diagram-identity", "action along an identity is not the identity");
  }
  for (MorId g = 0; g < d.base.morphism_count(); ++g)
    for (MorId f = 0; f < d.base.morphism_count(); ++f) {
      if (!d.base.composable(g, f)) continue;
      if (!maps_equal(d.on[d.base.compose(g, f)],
                      compose_functors(d.on[g], d.on[f])))
        return fail("diagram-functoriality", "action along " +
                                                 d.base.morphism_name(g) + "." +
                                                 d.base.morphism_name(f));
    }
  return {};
}

ValidationReport validate(const WeightMap& m) {
  if (!m.source.base.same_table(m.target.base))
    return fail("weight-map-base", "source and target weights have different bases");
  const FinCat& base = m.source.base;
  if (static_cast<int>(m.components.size()) != base.object_count())
    return fail("weight-map-shape", "one component per base object required");
  for (ObjId c = 0; c < base.object_count(); ++c) {
    const FinFunctor& f = m.components[c];
    if (!f.dom.same_table(m.source.at[c]) || !f.cod.same_table(m.target.at[c]))
      return fail("weight-map-component", "component has wrong endpoints at " +
                                              base.object_name(c));
    if (auto r = validate(f); !r.ok) return r;
  }
  for (MorId b = 0; b < base.morphism_count(); ++b) {
    // restriction squares commute exactly
    if (!maps_equal(compose_functors(m.components[base.src(b)], m.source.on[b]),
                    compose_functors(m.target.on[b], m.components[base.tgt(b)])))
      return fail("weight-map-naturality", "square at " + base.morphism_name(b));
  }
  return {};
}

WeightMap identity_weight_map(const Weight& w) {
  WeightMap m{w, w, {}};
  for (const FinCat& c : w.at) m.components.push_back(identity_functor(c));
  return m;
}

WeightMap compose_weight_maps(const WeightMap& g, const WeightMap& f) {
  if (!same_weight(g.source, f.target))
    throw ShapeError("compose_weight_maps: middle weights differ");
  WeightMap m{f.source, g.target, {}};
  for (size_t c = 0; c < f.components.size(); ++c)
    m.components.push_back(compose_functors(g.components[c], f.components[c]));
  return m;
}

ValidationReport validate(const WeightTwoCell& cell) {
  if (!same_weight(cell.source.source, cell.target.source) ||
      !same_weight(cell.source.target, cell.target.target))
    return fail("weight-2cell", "underlying weight maps are not parallel");
  const Weight& J = cell.source.source;
  const Weight& K = cell.source.target;
  const FinCat& base = J.base;
  if (static_cast<int>(cell.components.size()) != base.object_count())
    return fail("weight-2cell-shape", "one component per base object required");
  for (ObjId c = 0; c < base.object_count(); ++c) {
    const NatTransform& t = cell.components[c];
    if (!maps_equal(t.source, cell.source.components[c]) ||
        !maps_equal(t.target, cell.target.components[c]))
      return fail("weight-2cell-component", "endpoints wrong at " + base.object_name(c));
    if (auto r = validate(t); !r.ok) return r;
  }
  for (MorId b = 0; b < base.morphism_count(); ++b) {
    // the modification condition over each base morphism
    NatTransform lhs = whisker_left(K.on[b], cell.components[base.tgt(b)]);
    NatTransform rhs = whisker_right(cell.components[base.src(b)], J.on[b]);
    if (lhs.components != rhs.components)
      return fail("weight-2cell-modification", "condition at " + base.morphism_name(b));
  }
  return {};
}

WeightClassReport classify_weight_map(const WeightMap& m, std::uint64_t guard) {
  if (auto r = validate(m); !r.ok)
    throw ShapeError("classify_weight_map: " + r.violation->detail);
  WeightClassReport out;
  out.is_weak_equivalence = out.is_fibration = out.is_cofibration = true;
  for (const FinFunctor& f : m.components) {
    ClassReport r = classify(f, guard);
    out.is_weak_equivalence &= r.is_weak_equivalence;
    out.is_fibration &= r.is_fibration;
    out.is_cofibration &= r.is_cofibration;
    out.at.push_back(std::move(r));
  }
  out.is_trivial_fibration = out.is_fibration && out.is_weak_equivalence;
  out.is_trivial_cofibration = out.is_cofibration && out.is_weak_equivalence;
  return out;
}

CertifiedWeight representable(const FinCat& base, ObjId c) {
  if (c < 0 || c >= base.object_count())
    throw ShapeError("representable: object not in the base");
  CertifiedWeight r;
  r.weight.base = base;
  std::vector<std::vector<MorId>> homs(base.object_count());
  for (ObjId d = 0; d < base.object_count(); ++d) {
    homs[d] = base.hom(d, c);
    FinCat disc;
    for (MorId h : homs[d]) disc.add_object(base.morphism_name(h));
    disc.close_identities();
    r.weight.at.push_back(std::move(disc));
  }
  auto pos = [&](ObjId d, MorId h) {
    auto it = std::find(homs[d].begin(), homs[d].end(), h);
    return static_cast<int>(it - homs[d].begin());
  };
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId d = base.src(m), d2 = base.tgt(m);
    FinFunctor f;
    f.dom = r.weight.at[d2];
    f.cod = r.weight.at[d];
    for (MorId h : homs[d2]) f.omap.push_back(pos(d, base.compose(h, m)));
    for (ObjId x = 0; x < f.dom.object_count(); ++x)
      f.mmap.push_back(f.cod.identity(f.omap[x]));
    r.weight.on.push_back(std::move(f));
  }
  r.certificate.kind = FlexibilityCertificate::Kind::Representable;
  r.certificate.base = base;
  r.certificate.object = c;
  return r;
}

Weight initial_weight(const FinCat& base) {
  Weight w;
  w.base = base;
  w.at.assign(base.object_count(), named(NamedCat::Zero));
  FinFunctor empty{named(NamedCat::Zero), named(NamedCat::Zero), {}, {}};
  w.on.assign(base.morphism_count(), empty);
  return w;
}

Weight constant_weight(const FinCat& base, const FinCat& value) {
  Weight w;
  w.base = base;
  w.at.assign(base.object_count(), value);
  w.on.assign(base.morphism_count(), identity_functor(value));
  return w;
}

WeightMap initial_weight_map(const Weight& w) {
  WeightMap m{initial_weight(w.base), w, {}};
  for (const FinCat& c : w.at)
    m.components.push_back(FinFunctor{named(NamedCat::Zero), c, {}, {}});
  return m;
}

int WeightedLimitResult::family_index(const std::vector<FinFunctor>& fam) const {
  for (size_t i = 0; i < families.size(); ++i) {
    bool same = true;
    for (size_t c = 0; c < fam.size() && same; ++c)
      same = maps_equal(families[i][c], fam[c]);
    if (same) return static_cast<int>(i);
  }
  throw InternalFault("WeightedLimitResult::family_index: family not present");
}

int WeightedLimitResult::modification_index(
    int src_idx, int tgt_idx,
    const std::vector<std::vector<MorId>>& components) const {
  for (MorId m = 0; m < cat.morphism_count(); ++m) {
    if (cat.src(m) != src_idx || cat.tgt(m) != tgt_idx) continue;
    bool same = true;
    for (size_t c = 0; c < components.size() && same; ++c)
      same = modifications[m][c].components == components[c];
    if (same) return m;
  }
  throw InternalFault("WeightedLimitResult::modification_index: not present");
}

WeightedLimitResult weighted_limit(const Weight& J, const Diagram& S,
                                   std::uint64_t guard) {
  if (!J.base.same_table(S.base))
    throw ShapeError("weighted_limit: weight and diagram have different bases");
  const FinCat& base = J.base;
  int n = base.object_count();
  WeightedLimitResult r;

  // end condition: theta_d = S(m) . theta_c . J(m) for m : c -> d; checked
  // once both endpoints are assigned
  std::vector<std::vector<MorId>> checks(n);
  for (MorId m = 0; m < base.morphism_count(); ++m)
    if (!base.is_identity(m))
      checks[std::max(base.src(m), base.tgt(m))].push_back(m);

  std::uint64_t nodes = 0;
  auto tick = [&] {
    if (++nodes > guard) throw SizeGuardError("weighted_limit exceeded size guard");
  };

  std::vector<std::vector<FinFunctor>> choices(n);
  for (ObjId c = 0; c < n; ++c) choices[c] = all_functors(J.at[c], S.at[c], guard);

  std::vector<FinFunctor> fam(n);
  std::function<void(ObjId)> build = [&](ObjId c) {
    if (c == n) {
      r.families.push_back(fam);
      return;
    }
    for (const FinFunctor& theta : choices[c]) {
      tick();
      fam[c] = theta;
      bool ok = true;
      for (MorId m : checks[c]) {
        const FinFunctor& at_tgt = fam[base.tgt(m)];
        FinFunctor composite = compose_functors(
            S.on[m], compose_functors(fam[base.src(m)], J.on[m]));
        if (!maps_equal(at_tgt, composite)) {
          ok = false;
          break;
        }
      }
      if (ok) build(c + 1);
    }
  };
  build(0);

  int nobj = static_cast<int>(r.families.size());
  for (int i = 0; i < nobj; ++i) r.cat.add_object("T" + std::to_string(i));
  r.modifications.resize(r.cat.morphism_count());
  for (int i = 0; i < nobj; ++i) {
    std::vector<NatTransform> id;
    for (ObjId c = 0; c < n; ++c) id.push_back(identity_transform(r.families[i][c]));
    r.modifications[r.cat.identity(i)] = std::move(id);
  }

  // modifications: componentwise transforms compatible over base morphisms
  std::map<std::tuple<int, int, std::vector<std::vector<MorId>>>, MorId> midx;
  auto key_of = [&](int s, int t, const std::vector<NatTransform>& mu) {
    std::vector<std::vector<MorId>> comps;
    for (const NatTransform& x : mu) comps.push_back(x.components);
    return std::make_tuple(s, t, std::move(comps));
  };
  for (int i = 0; i < nobj; ++i)
    midx[key_of(i, i, r.modifications[r.cat.identity(i)])] = r.cat.identity(i);

  for (int s = 0; s < nobj; ++s)
    for (int t = 0; t < nobj; ++t) {
      std::vector<std::vector<NatTransform>> comp_choices(n);
      for (ObjId c = 0; c < n; ++c)
        comp_choices[c] = all_transforms(r.families[s][c], r.families[t][c], guard);
      std::vector<NatTransform> mu(n);
      std::function<void(ObjId)> build_mod = [&](ObjId c) {
        if (c == n) {
          auto k = key_of(s, t, mu);
          if (midx.count(k)) return;  // the identity, already present
          MorId id = r.cat.add_morphism(s, t);
          r.modifications.push_back(mu);
          midx[k] = id;
          return;
        }
        for (const NatTransform& x : comp_choices[c]) {
          tick();
          mu[c] = x;
          bool ok = true;
          for (MorId m : checks[c]) {
            NatTransform expect = whisker_left(
                S.on[m], whisker_right(mu[base.src(m)], J.on[m]));
            if (mu[base.tgt(m)].components != expect.components) {
              ok = false;
              break;
            }
          }
          if (ok) build_mod(c + 1);
        }
      };
      build_mod(0);
    }

  for (MorId g = 0; g < r.cat.morphism_count(); ++g)
    for (MorId f = 0; f < r.cat.morphism_count(); ++f) {
      if (!r.cat.composable(g, f)) continue;
      std::vector<NatTransform> comp;
      for (ObjId c = 0; c < n; ++c)
        comp.push_back(vertical_compose(r.modifications[g][c], r.modifications[f][c]));
      r.cat.set_composite(g, f,
                          midx.at(key_of(r.cat.src(f), r.cat.tgt(g), comp)));
    }
  if (auto v = validate(r.cat); !v.ok)
    throw InternalFault("weighted_limit produced an invalid category: " +
                        v.violation->detail);
  return r;
}

bool weighted_limit_probe_agrees(const Weight& J, const Diagram& S,
                                 const FinCat& A, std::uint64_t guard) {
  WeightedLimitResult L = weighted_limit(J, S, guard);
  FunctorCategory lhs = functor_category(A, L.cat, guard);

  const FinCat& base = J.base;
  int n = base.object_count();
  std::vector<FunctorCategory> homs;
  for (ObjId c = 0; c < n; ++c) homs.push_back(functor_category(A, S.at[c], guard));
  Diagram Sp;
  Sp.base = base;
  for (ObjId c = 0; c < n; ++c) Sp.at.push_back(homs[c].cat);
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId c = base.src(m), d = base.tgt(m);
    FinFunctor post;  // postcomposition with S(m)
    post.dom = homs[c].cat;
    post.cod = homs[d].cat;
    for (const FinFunctor& x : homs[c].objects)
      post.omap.push_back(homs[d].object_index(compose_functors(S.on[m], x)));
    for (MorId t = 0; t < homs[c].cat.morphism_count(); ++t) {
      NatTransform w = whisker_left(S.on[m], homs[c].transforms[t]);
      post.mmap.push_back(homs[d].morphism_index(post.omap[homs[c].cat.src(t)],
                                                 post.omap[homs[c].cat.tgt(t)],
                                                 w.components));
    }
    Sp.on.push_back(std::move(post));
  }
  WeightedLimitResult rhs = weighted_limit(J, Sp, guard);

  if (lhs.cat.object_count() != rhs.cat.object_count() ||
      lhs.cat.morphism_count() != rhs.cat.morphism_count())
    return false;

  // transpose F : A -> {J,S} to a family J(c) -> K(A, S(c))
  auto transpose_obj = [&](const FinFunctor& F) {
    std::vector<FinFunctor> fam(n);
    for (ObjId c = 0; c < n; ++c) {
      FinFunctor& phi = fam[c];
      phi.dom = J.at[c];
      phi.cod = homs[c].cat;
      for (ObjId x = 0; x < J.at[c].object_count(); ++x) {
        FinFunctor G;
        G.dom = A;
        G.cod = S.at[c];
        for (ObjId a = 0; a < A.object_count(); ++a)
          G.omap.push_back(L.families[F.omap[a]][c].omap[x]);
        for (MorId mu = 0; mu < A.morphism_count(); ++mu)
          G.mmap.push_back(L.modifications[F.mmap[mu]][c].components[x]);
        phi.omap.push_back(homs[c].object_index(G));
      }
      for (MorId xi = 0; xi < J.at[c].morphism_count(); ++xi) {
        std::vector<MorId> comps;
        for (ObjId a = 0; a < A.object_count(); ++a)
          comps.push_back(L.families[F.omap[a]][c].mmap[xi]);
        phi.mmap.push_back(homs[c].morphism_index(phi.omap[J.at[c].src(xi)],
                                                  phi.omap[J.at[c].tgt(xi)], comps));
      }
    }
    return fam;
  };

  std::vector<int> obj_map(lhs.cat.object_count());
  std::vector<bool> obj_hit(rhs.cat.object_count(), false);
  for (int i = 0; i < lhs.cat.object_count(); ++i) {
    obj_map[i] = rhs.family_index(transpose_obj(lhs.objects[i]));
    if (obj_hit[obj_map[i]]) return false;
    obj_hit[obj_map[i]] = true;
  }

  std::vector<bool> mor_hit(rhs.cat.morphism_count(), false);
  for (MorId m = 0; m < lhs.cat.morphism_count(); ++m) {
    const NatTransform& t = lhs.transforms[m];
    int s = lhs.cat.src(m), tt = lhs.cat.tgt(m);
    std::vector<std::vector<MorId>> comps(n);
    const std::vector<FinFunctor> src_fam = transpose_obj(lhs.objects[s]);
    const std::vector<FinFunctor> tgt_fam = transpose_obj(lhs.objects[tt]);
    for (ObjId c = 0; c < n; ++c)
      for (ObjId x = 0; x < J.at[c].object_count(); ++x) {
        std::vector<MorId> cell;
        for (ObjId a = 0; a < A.object_count(); ++a)
          cell.push_back(L.modifications[t.components[a]][c].components[x]);
        comps[c].push_back(homs[c].morphism_index(src_fam[c].omap[x],
                                                  tgt_fam[c].omap[x], cell));
      }
    int img = rhs.modification_index(obj_map[s], obj_map[tt], comps);
    if (mor_hit[img]) return false;
    mor_hit[img] = true;
  }
  return true;
}

WeightCoproduct weight_coproduct(const CertifiedWeight& a, const CertifiedWeight& b) {
  if (!a.weight.base.same_table(b.weight.base))
    throw ShapeError("weight_coproduct: different bases");
  const FinCat& base = a.weight.base;
  WeightCoproduct r;
  r.w.base = base;
  std::vector<CoproductResult> cps;
  for (ObjId c = 0; c < base.object_count(); ++c) {
    cps.push_back(coproduct(a.weight.at[c], b.weight.at[c]));
    r.w.at.push_back(cps.back().cat);
  }
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId c = base.src(m), d = base.tgt(m);
    FinFunctor h;
    h.dom = cps[d].cat;
    h.cod = cps[c].cat;
    h.omap.assign(h.dom.object_count(), -1);
    h.mmap.assign(h.dom.morphism_count(), -1);
    auto fill = [&](const FinFunctor& inj_d, const FinFunctor& inj_c,
                    const FinFunctor& act) {
      for (size_t x = 0; x < inj_d.omap.size(); ++x)
        h.omap[inj_d.omap[x]] = inj_c.omap[act.omap[x]];
      for (size_t x = 0; x < inj_d.mmap.size(); ++x)
        h.mmap[inj_d.mmap[x]] = inj_c.mmap[act.mmap[x]];
    };
    fill(cps[d].inj1, cps[c].inj1, a.weight.on[m]);
    fill(cps[d].inj2, cps[c].inj2, b.weight.on[m]);
    if (auto v = validate(h); !v.ok)
      throw InternalFault("weight_coproduct: induced restriction invalid");
    r.w.on.push_back(std::move(h));
  }
  r.in1 = WeightMap{a.weight, r.w, {}};
  r.in2 = WeightMap{b.weight, r.w, {}};
  for (ObjId c = 0; c < base.object_count(); ++c) {
    r.in1.components.push_back(cps[c].inj1);
    r.in2.components.push_back(cps[c].inj2);
  }
  r.cert.kind = FlexibilityCertificate::Kind::Coproduct;
  r.cert.base = base;
  r.cert.children = {a.certificate, b.certificate};
  return r;
}

WeightCoequifier weight_coequifier(const WeightTwoCell& alpha,
                                   const WeightTwoCell& beta,
                                   const FlexibilityCertificate& source_cert,
                                   const FlexibilityCertificate& target_cert) {
  if (auto v = validate(alpha); !v.ok)
    throw ShapeError("weight_coequifier: alpha: " + v.violation->detail);
  if (auto v = validate(beta); !v.ok)
    throw ShapeError("weight_coequifier: beta: " + v.violation->detail);
  if (!same_weight(alpha.source.source, beta.source.source) ||
      !same_weight(alpha.source.target, beta.source.target))
    throw ShapeError("weight_coequifier: 2-cells not over the same maps' endpoints");
  const Weight& K = alpha.source.target;
  const FinCat& base = K.base;
  WeightCoequifier r;
  r.w.base = base;
  std::vector<CoequifierWitness> qs;
  for (ObjId c = 0; c < base.object_count(); ++c) {
    qs.push_back(coequifier(alpha.components[c], beta.components[c]));
    r.w.at.push_back(qs[c].quotient);
  }
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId c = base.src(m), d = base.tgt(m);
    FinFunctor h;
    h.dom = qs[d].quotient;
    h.cod = qs[c].quotient;
    h.omap = K.on[m].omap;  // quotients are identity on objects
    h.mmap.assign(h.dom.morphism_count(), -1);
    for (MorId n = 0; n < K.at[d].morphism_count(); ++n) {
      MorId q = qs[d].p.mmap[n];
      MorId img = qs[c].p.mmap[K.on[m].mmap[n]];
      if (h.mmap[q] >= 0 && h.mmap[q] != img)
        throw ShapeError(
            "weight_coequifier: restriction does not respect the congruence at " +
            base.morphism_name(m));
      h.mmap[q] = img;
    }
    if (auto v = validate(h); !v.ok)
      throw InternalFault("weight_coequifier: induced restriction invalid");
    r.w.on.push_back(std::move(h));
  }
  r.p = WeightMap{K, r.w, {}};
  for (ObjId c = 0; c < base.object_count(); ++c) r.p.components.push_back(qs[c].p);
  if (auto v = validate(r.w); !v.ok)
    throw InternalFault("weight_coequifier: quotient weight invalid: " +
                        v.violation->detail);
  r.cert.kind = FlexibilityCertificate::Kind::Coequifier;
  r.cert.base = base;
  r.cert.children = {source_cert, target_cert};
  r.cert.cells = {alpha, beta};
  return r;
}

WeightSplit weight_split_idempotent(const WeightMap& e,
                                    const FlexibilityCertificate& cert) {
  if (auto v = validate(e); !v.ok)
    throw ShapeError("weight_split_idempotent: " + v.violation->detail);
  if (!same_weight(e.source, e.target))
    throw ShapeError("weight_split_idempotent: not an endomorphism");
  const FinCat& base = e.source.base;
  WeightSplit r;
  r.w.base = base;
  std::vector<SplitResult> sps;
  for (ObjId c = 0; c < base.object_count(); ++c) {
    sps.push_back(split_idempotent(e.components[c]));
    r.w.at.push_back(sps[c].S);
  }
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId c = base.src(m), d = base.tgt(m);
    FinFunctor h = compose_functors(
        sps[c].retraction, compose_functors(e.source.on[m], sps[d].section));
    r.w.on.push_back(std::move(h));
  }
  if (auto v = validate(r.w); !v.ok)
    throw InternalFault("weight_split_idempotent: split weight invalid: " +
                        v.violation->detail);
  r.retraction = WeightMap{e.source, r.w, {}};
  r.section = WeightMap{r.w, e.source, {}};
  for (ObjId c = 0; c < base.object_count(); ++c) {
    r.retraction.components.push_back(sps[c].retraction);
    r.section.components.push_back(sps[c].section);
  }
  r.cert.kind = FlexibilityCertificate::Kind::SplitIdempotent;
  r.cert.base = base;
  r.cert.children = {cert};
  r.cert.maps = {e};
  return r;
}

WeightCoinserter weight_coinserter_bounded(const WeightMap& f, const WeightMap& g,
                                           int budget,
                                           const FlexibilityCertificate& source_cert,
                                           const FlexibilityCertificate& target_cert) {
  if (auto v = validate(f); !v.ok)
    throw ShapeError("weight_coinserter: f: " + v.violation->detail);
  if (auto v = validate(g); !v.ok)
    throw ShapeError("weight_coinserter: g: " + v.violation->detail);
  if (!same_weight(f.source, g.source) || !same_weight(f.target, g.target))
    throw ShapeError("weight_coinserter: maps not parallel");
  const Weight& J = f.source;
  const Weight& K = f.target;
  const FinCat& base = K.base;
  WeightCoinserter r;
  r.w.base = base;
  std::vector<CoinserterResult> cs;
  for (ObjId c = 0; c < base.object_count(); ++c) {
    cs.push_back(coinserter_bounded(f.components[c], g.components[c], budget));
    if (cs[c].diverged) {
      r.diverged = true;
      return r;
    }
    r.w.at.push_back(cs[c].cat);
    r.sigma.push_back(cs[c].sigma);
  }
  for (MorId m = 0; m < base.morphism_count(); ++m) {
    ObjId c = base.src(m), d = base.tgt(m);
    // induced restriction via the universal property at d
    FinFunctor h = compose_functors(cs[c].p, K.on[m]);
    std::vector<MorId> tau;
    for (ObjId a = 0; a < J.at[d].object_count(); ++a)
      tau.push_back(cs[c].sigma[J.on[m].omap[a]]);
    auto q = coinserter_induce(cs[d], h, tau);
    if (!q)
      throw InternalFault("weight_coinserter: induced restriction undefined at " +
                          base.morphism_name(m));
    r.w.on.push_back(*q);
  }
  if (auto v = validate(r.w); !v.ok)
    throw InternalFault("weight_coinserter: result weight invalid: " +
                        v.violation->detail);
  r.p = WeightMap{K, r.w, {}};
  for (ObjId c = 0; c < base.object_count(); ++c) r.p.components.push_back(cs[c].p);
  r.cert.kind = FlexibilityCertificate::Kind::Coinserter;
  r.cert.base = base;
  r.cert.children = {source_cert, target_cert};
  r.cert.maps = {f, g};
  r.cert.budget = budget;
  return r;
}

Weight evaluate(const FlexibilityCertificate& cert) {
  using Kind = FlexibilityCertificate::Kind;
  switch (cert.kind) {
    case Kind::Representable:
      return representable(cert.base, cert.object).weight;
    case Kind::Coproduct: {
      if (cert.children.size() != 2)
        throw ShapeError("certificate: coproduct needs two children");
      CertifiedWeight a{evaluate(cert.children[0]), cert.children[0]};
      CertifiedWeight b{evaluate(cert.children[1]), cert.children[1]};
      return weight_coproduct(a, b).w;
    }
    case Kind::Coequifier: {
      if (cert.children.size() != 2 || cert.cells.size() != 2)
        throw ShapeError("certificate: coequifier needs two children and two cells");
      if (!same_weight(evaluate(cert.children[0]), cert.cells[0].source.source))
        throw ShapeError("certificate: coequifier source child does not re-evaluate");
      if (!same_weight(evaluate(cert.children[1]), cert.cells[0].source.target))
        throw ShapeError("certificate: coequifier target child does not re-evaluate");
      return weight_coequifier(cert.cells[0], cert.cells[1], cert.children[0],
                               cert.children[1])
          .w;
    }
    case Kind::SplitIdempotent: {
      if (cert.children.size() != 1 || cert.maps.size() != 1)
        throw ShapeError("certificate: splitting needs one child and the idempotent");
      if (!same_weight(evaluate(cert.children[0]), cert.maps[0].source))
        throw ShapeError("certificate: splitting child does not re-evaluate");
      return weight_split_idempotent(cert.maps[0], cert.children[0]).w;
    }
    case Kind::Coinserter: {
      if (cert.children.size() != 2 || cert.maps.size() != 2)
        throw ShapeError("certificate: coinserter needs two children and two maps");
      if (!same_weight(evaluate(cert.children[0]), cert.maps[0].source))
        throw ShapeError("certificate: coinserter source child does not re-evaluate");
      if (!same_weight(evaluate(cert.children[1]), cert.maps[0].target))
        throw ShapeError("certificate: coinserter target child does not re-evaluate");
      WeightCoinserter r = weight_coinserter_bounded(
          cert.maps[0], cert.maps[1], cert.budget, cert.children[0], cert.children[1]);
      if (r.diverged)
        throw ShapeError("certificate: coinserter diverged within its budget");
      return r.w;
    }
  }
  throw InternalFault("certificate: unknown node kind");
}

bool weights_isomorphic(const Weight& a, const Weight& b, std::uint64_t guard) {
  if (!a.base.same_table(b.base)) return false;
  const FinCat& base = a.base;
  int n = base.object_count();
  std::vector<std::vector<FinFunctor>> isos(n);
  for (ObjId c = 0; c < n; ++c) {
    if (a.at[c].object_count() != b.at[c].object_count() ||
        a.at[c].morphism_count() != b.at[c].morphism_count())
      return false;
    for (const FinFunctor& f : all_functors(a.at[c], b.at[c], guard)) {
      std::vector<bool> ohit(b.at[c].object_count(), false);
      std::vector<bool> mhit(b.at[c].morphism_count(), false);
      bool bij = true;
      for (ObjId x : f.omap) {
        bij &= !ohit[x];
        ohit[x] = true;
      }
      for (MorId m : f.mmap) {
        bij &= !mhit[m];
        mhit[m] = true;
      }
      if (bij) isos[c].push_back(f);
    }
    if (isos[c].empty()) return false;
  }
  std::vector<std::vector<MorId>> checks(n);
  for (MorId m = 0; m < base.morphism_count(); ++m)
    if (!base.is_identity(m))
      checks[std::max(base.src(m), base.tgt(m))].push_back(m);
  std::vector<FinFunctor> phi(n);
  std::function<bool(ObjId)> go = [&](ObjId c) -> bool {
    if (c == n) return true;
    for (const FinFunctor& f : isos[c]) {
      phi[c] = f;
      bool ok = true;
      for (MorId m : checks[c])
        if (!maps_equal(compose_functors(phi[base.src(m)], a.on[m]),
                        compose_functors(b.on[m], phi[base.tgt(m)]))) {
          ok = false;
          break;
        }
      if (ok && go(c + 1)) return true;
    }
    return false;
  };
  return go(0);
}

CertifyOutcome certify_flexible(const Weight& w, const FlexibilityCertificate& cert) {
  Weight built;
  try {
    built = evaluate(cert);
  } catch (const ShapeError& e) {
    return {false, e.what()};
  }
  if (!w.base.same_table(built.base))
    return {false, "certificate evaluates over a different base"};
  for (ObjId c = 0; c < w.base.object_count(); ++c)
    if (w.at[c].object_count() != built.at[c].object_count() ||
        w.at[c].morphism_count() != built.at[c].morphism_count())
      return {false, "component size mismatch at " + w.base.object_name(c)};
  if (!weights_isomorphic(built, w))
    return {false, "evaluated weight is not isomorphic to the certified one"};
  return {true, ""};
}

std::optional<std::vector<FinFunctor>> solve_weight_lift(const WeightMap& p,
                                                         const WeightMap& bottom,
                                                         std::uint64_t guard) {
  if (!same_weight(p.target, bottom.target))
    throw ShapeError("solve_weight_lift: maps have different targets");
  const Weight& W = bottom.source;
  const Weight& E = p.source;
  const FinCat& base = W.base;
  int n = base.object_count();
  std::vector<std::vector<FinFunctor>> choices(n);
  for (ObjId c = 0; c < n; ++c) {
    FunctorConstraints cons = FunctorConstraints::none(W.at[c]);
    for (ObjId x = 0; x < W.at[c].object_count(); ++x) {
      for (ObjId y = 0; y < E.at[c].object_count(); ++y)
        if (p.components[c].omap[y] == bottom.components[c].omap[x])
          cons.obj[x].push_back(y);
      if (cons.obj[x].empty()) return std::nullopt;
    }
    for (MorId m = 0; m < W.at[c].morphism_count(); ++m) {
      for (MorId e = 0; e < E.at[c].morphism_count(); ++e)
        if (p.components[c].mmap[e] == bottom.components[c].mmap[m])
          cons.mor[m].push_back(e);
      if (cons.mor[m].empty()) return std::nullopt;
    }
    for_each_functor(W.at[c], E.at[c], cons,
                     [&](const FinFunctor& l) {
                       choices[c].push_back(l);
                       return true;
                     },
                     guard);
    if (choices[c].empty()) return std::nullopt;
  }
  std::vector<std::vector<MorId>> checks(n);
  for (MorId m = 0; m < base.morphism_count(); ++m)
    if (!base.is_identity(m))
      checks[std::max(base.src(m), base.tgt(m))].push_back(m);
  std::vector<FinFunctor> l(n);
  std::function<bool(ObjId)> go = [&](ObjId c) -> bool {
    if (c == n) return true;
    for (const FinFunctor& cand : choices[c]) {
      l[c] = cand;
      bool ok = true;
      for (MorId m : checks[c])
        if (!maps_equal(compose_functors(l[base.src(m)], W.on[m]),
                        compose_functors(E.on[m], l[base.tgt(m)]))) {
          ok = false;
          break;
        }
      if (ok && go(c + 1)) return true;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return l;
}

namespace {

// Builds c^op and fills to_op with the morphism-id translation.
FinCat opposite(const FinCat& c, std::vector<MorId>& to_op) {
  FinCat op;
  for (ObjId x = 0; x < c.object_count(); ++x) op.add_object(c.object_name(x));
  to_op.assign(c.morphism_count(), -1);
  for (MorId m = 0; m < c.morphism_count(); ++m)
    to_op[m] = c.is_identity(m)
                   ? op.identity(c.src(m))
                   : op.add_morphism(c.tgt(m), c.src(m), c.morphism_name(m));
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (MorId f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f))
        op.set_composite(to_op[f], to_op[g], to_op[c.compose(g, f)]);
  return op;
}

}  // namespace

RefuteOutcome refute_cofibrant(const Weight& w, int budget, std::uint64_t guard) {
  RefuteOutcome out;
  if (budget <= 0) return out;
  const FinCat& base = w.base;
  FinCat iso = named(NamedCat::FreeIso);
  std::vector<FinFunctor> endos = all_functors(iso, iso, guard);

  // the endomorphism monoid of the interval, as a one-object category
  FinCat M;
  M.add_object("*");
  std::vector<int> endo_mor(endos.size(), -1);
  int id_pos = -1;
  for (size_t i = 0; i < endos.size(); ++i)
    if (maps_equal(endos[i], identity_functor(iso))) id_pos = static_cast<int>(i);
  endo_mor[id_pos] = M.identity(0);
  for (size_t i = 0; i < endos.size(); ++i)
    if (static_cast<int>(i) != id_pos) endo_mor[i] = M.add_morphism(0, 0);
  auto endo_index = [&](const FinFunctor& f) {
    for (size_t i = 0; i < endos.size(); ++i)
      if (maps_equal(endos[i], f)) return static_cast<int>(i);
    throw InternalFault("refute_cofibrant: unclosed endomorphism monoid");
  };
  for (size_t i = 0; i < endos.size(); ++i)
    for (size_t j = 0; j < endos.size(); ++j)
      M.set_composite(endo_mor[i], endo_mor[j],
                      endo_mor[endo_index(compose_functors(endos[i], endos[j]))]);

  std::vector<MorId> to_op;
  FinCat op = opposite(base, to_op);
  std::vector<int> mor_of_endo(M.morphism_count());
  for (size_t i = 0; i < endos.size(); ++i) mor_of_endo[endo_mor[i]] = static_cast<int>(i);

  int tried = 0;
  for_each_functor(
      op, M, FunctorConstraints::none(op),
      [&](const FinFunctor& T) {
        if (++tried > budget) return false;
        // twisted interval bundle E = w x I with contravariant twist T
        Weight E;
        E.base = base;
        std::vector<ProductResult> prods;
        for (ObjId c = 0; c < base.object_count(); ++c) {
          prods.push_back(product(w.at[c], iso));
          E.at.push_back(prods.back().cat);
        }
        for (MorId m = 0; m < base.morphism_count(); ++m) {
          ObjId c = base.src(m), d = base.tgt(m);
          const FinFunctor& tw = endos[mor_of_endo[T.mmap[to_op[m]]]];
          FinFunctor h;
          h.dom = prods[d].cat;
          h.cod = prods[c].cat;
          for (int o = 0; o < prods[d].cat.object_count(); ++o) {
            auto [x, y] = prods[d].obj_pairs[o];
            h.omap.push_back(prods[c].object_index(w.on[m].omap[x], tw.omap[y]));
          }
          for (MorId mm = 0; mm < prods[d].cat.morphism_count(); ++mm) {
            auto [x, y] = prods[d].mor_pairs[mm];
            h.mmap.push_back(prods[c].morphism_index(w.on[m].mmap[x], tw.mmap[y]));
          }
          E.on.push_back(std::move(h));
        }
        WeightMap p{E, w, {}};
        for (ObjId c = 0; c < base.object_count(); ++c)
          p.components.push_back(prods[c].proj1);
        if (auto v = validate(E); !v.ok)
          throw InternalFault("refute_cofibrant: twisted bundle invalid: " +
                              v.violation->detail);
        if (!solve_weight_lift(p, identity_weight_map(w), guard)) {
          out.found = true;
          out.twist.resize(base.morphism_count());
          for (MorId m = 0; m < base.morphism_count(); ++m)
            out.twist[m] = mor_of_endo[T.mmap[to_op[m]]];
          return false;
        }
        return true;
      },
      guard);
  return out;
}

}  // namespace folkcat
