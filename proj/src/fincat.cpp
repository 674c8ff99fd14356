#include "folkcat/fincat.hpp"

#include <algorithm>
#include <functional>

namespace folkcat {

ObjId FinCat::add_object(std::string name) {
  ObjId a = object_count();
  if (name.empty()) name = "o" + std::to_string(a);
  onames_.push_back(std::move(name));
  MorId id = add_morphism(a, a, "1_" + onames_.back());
  idn_.push_back(id);
  return a;
}

MorId FinCat::add_morphism(ObjId src, ObjId tgt, std::string name) {
  MorId m = morphism_count();
  if (name.empty()) name = "m" + std::to_string(m);
  mors_.push_back({src, tgt});
  mnames_.push_back(std::move(name));
  for (auto& row : comp_) row.push_back(-1);
  comp_.emplace_back(mors_.size(), -1);
  return m;
}

void FinCat::set_composite(MorId g, MorId f, MorId gf) {
  comp_[g][f] = gf;
}

void FinCat::close_identities() {
  for (MorId m = 0; m < morphism_count(); ++m) {
    comp_[m][idn_[src(m)]] = m;
    comp_[idn_[tgt(m)]][m] = m;
  }
}

bool FinCat::is_identity(MorId m) const {
  return idn_[mors_[m].src] == m;
}

MorId FinCat::compose(MorId g, MorId f) const {
  MorId r = compose_raw(g, f);
  if (r < 0)
    throw InternalFault("compose: no table entry for (" + mnames_[g] + ", " +
                        mnames_[f] + ")");
  return r;
}

MorId FinCat::compose_raw(MorId g, MorId f) const {
  if (!composable(g, f)) return -1;
  return comp_[g][f];
}

std::vector<MorId> FinCat::hom(ObjId a, ObjId b) const {
  std::vector<MorId> out;
  for (MorId m = 0; m < morphism_count(); ++m)
    if (src(m) == a && tgt(m) == b) out.push_back(m);
  return out;
}

std::optional<MorId> FinCat::inverse(MorId f) const {
  ObjId a = src(f), b = tgt(f);
  for (MorId g : hom(b, a))
    if (compose_raw(g, f) == idn_[a] && compose_raw(f, g) == idn_[b]) return g;
  return std::nullopt;
}

std::vector<MorId> FinCat::isos_into(ObjId b) const {
  std::vector<MorId> out;
  for (MorId m = 0; m < morphism_count(); ++m)
    if (tgt(m) == b && is_iso(m)) out.push_back(m);
  return out;
}

bool FinCat::same_table(const FinCat& other) const {
  if (idn_ != other.idn_) return false;
  if (mors_.size() != other.mors_.size()) return false;
  for (size_t i = 0; i < mors_.size(); ++i)
    if (mors_[i].src != other.mors_[i].src || mors_[i].tgt != other.mors_[i].tgt)
      return false;
  return comp_ == other.comp_;
}

ValidationReport validate(const FinCat& c) {
  auto fail = [](std::string law, std::vector<int> ids, std::string detail) {
    return ValidationReport{false, LawViolation{std::move(law), std::move(ids),
                                                std::move(detail)}};
  };
  for (ObjId a = 0; a < c.object_count(); ++a) {
    MorId e = c.identity(a);
    if (e < 0 || e >= c.morphism_count() || c.src(e) != a || c.tgt(e) != a)
      return fail("identity-endpoints", {a, e}, "identity of object " +
                  c.object_name(a) + " is not an endomorphism");
  }
  int n = c.morphism_count();
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      MorId gf = c.compose_raw(g, f);
      if (c.composable(g, f)) {
        if (gf < 0)
          return fail("missing-composite", {g, f},
                      "no composite for " + c.morphism_name(g) + " . " +
                          c.morphism_name(f));
        if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
          return fail("composite-endpoints", {g, f, gf},
                      "composite has wrong source or target");
      } else if (gf >= 0) {
        return fail("spurious-composite", {g, f},
                    "table entry for a non-composable pair");
      }
    }
  }
  for (MorId f = 0; f < n; ++f) {
    if (c.compose_raw(f, c.identity(c.src(f))) != f)
      return fail("right-identity", {f}, c.morphism_name(f) + " . id != " +
                  c.morphism_name(f));
    if (c.compose_raw(c.identity(c.tgt(f)), f) != f)
      return fail("left-identity", {f}, "id . " + c.morphism_name(f) + " != " +
                  c.morphism_name(f));
  }
  for (MorId h = 0; h < n; ++h)
    for (MorId g = 0; g < n; ++g) {
      if (!c.composable(h, g)) continue;
      for (MorId f = 0; f < n; ++f) {
        if (!c.composable(g, f)) continue;
        if (c.compose_raw(c.compose_raw(h, g), f) !=
            c.compose_raw(h, c.compose_raw(g, f)))
          return fail("associativity", {h, g, f},
                      "h.(g.f) != (h.g).f for (" + c.morphism_name(h) + ", " +
                          c.morphism_name(g) + ", " + c.morphism_name(f) + ")");
      }
    }
  return {};
}

ValidationReport validate(const FinFunctor& f) {
  auto fail = [](std::string law, std::vector<int> ids, std::string detail) {
    return ValidationReport{false, LawViolation{std::move(law), std::move(ids),
                                                std::move(detail)}};
  };
  const FinCat& A = f.dom;
  const FinCat& B = f.cod;
  if (static_cast<int>(f.omap.size()) != A.object_count() ||
      static_cast<int>(f.mmap.size()) != A.morphism_count())
    return fail("functor-shape", {}, "map sizes do not match the domain");
  for (ObjId a : f.omap)
    if (a < 0 || a >= B.object_count())
      return fail("functor-object-range", {a}, "object image out of range");
  for (MorId m = 0; m < A.morphism_count(); ++m) {
    MorId fm = f.mmap[m];
    if (fm < 0 || fm >= B.morphism_count())
      return fail("functor-morphism-range", {m, fm}, "morphism image out of range");
    if (B.src(fm) != f.omap[A.src(m)] || B.tgt(fm) != f.omap[A.tgt(m)])
      return fail("functor-endpoints", {m, fm},
                  "image of " + A.morphism_name(m) + " has wrong endpoints");
  }
  for (ObjId a = 0; a < A.object_count(); ++a)
    if (f.mmap[A.identity(a)] != B.identity(f.omap[a]))
      return fail("functor-identity", {a}, "identity of " + A.object_name(a) +
                  " is not sent to an identity");
  for (MorId g = 0; g < A.morphism_count(); ++g)
    for (MorId m = 0; m < A.morphism_count(); ++m) {
      if (!A.composable(g, m)) continue;
      if (f.mmap[A.compose(g, m)] != B.compose(f.mmap[g], f.mmap[m]))
        return fail("functor-composition", {g, m},
                    "composite of " + A.morphism_name(g) + " . " +
                        A.morphism_name(m) + " is not preserved");
    }
  return {};
}

FinFunctor identity_functor(const FinCat& a) {
  FinFunctor f;
  f.dom = a;
  f.cod = a;
  f.omap.resize(a.object_count());
  f.mmap.resize(a.morphism_count());
  for (ObjId x = 0; x < a.object_count(); ++x) f.omap[x] = x;
  for (MorId m = 0; m < a.morphism_count(); ++m) f.mmap[m] = m;
  return f;
}

FinFunctor constant_functor(const FinCat& a, const FinCat& b, ObjId at) {
  FinFunctor f;
  f.dom = a;
  f.cod = b;
  f.omap.assign(a.object_count(), at);
  f.mmap.assign(a.morphism_count(), b.identity(at));
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (!f.cod.same_table(g.dom))
    throw ShapeError("compose_functors: codomain of f is not the domain of g");
  FinFunctor h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.omap.resize(f.omap.size());
  h.mmap.resize(f.mmap.size());
  for (size_t a = 0; a < f.omap.size(); ++a) h.omap[a] = g.omap[f.omap[a]];
  for (size_t m = 0; m < f.mmap.size(); ++m) h.mmap[m] = g.mmap[f.mmap[m]];
  if (auto r = validate(h); !r.ok)
    throw InternalFault("compose_functors: composite fails to validate: " +
                        r.violation->detail);
  return h;
}

bool same_functor(const FinFunctor& a, const FinFunctor& b) {
  return a.omap == b.omap && a.mmap == b.mmap && a.dom.same_table(b.dom) &&
         a.cod.same_table(b.cod);
}

ValidationReport validate(const NatTransform& t) {
  auto fail = [](std::string law, std::vector<int> ids, std::string detail) {
    return ValidationReport{false, LawViolation{std::move(law), std::move(ids),
                                                std::move(detail)}};
  };
  const FinFunctor& F = t.source;
  const FinFunctor& G = t.target;
  if (!F.dom.same_table(G.dom) || !F.cod.same_table(G.cod))
    return fail("transform-shape", {}, "source and target functors not parallel");
  const FinCat& A = F.dom;
  const FinCat& B = F.cod;
  if (static_cast<int>(t.components.size()) != A.object_count())
    return fail("transform-shape", {}, "wrong number of components");
  for (ObjId a = 0; a < A.object_count(); ++a) {
    MorId c = t.components[a];
    if (c < 0 || c >= B.morphism_count() || B.src(c) != F.omap[a] ||
        B.tgt(c) != G.omap[a])
      return fail("component-endpoints", {a, c},
                  "component at " + A.object_name(a) + " has wrong endpoints");
  }
  for (MorId m = 0; m < A.morphism_count(); ++m) {
    ObjId a = A.src(m), b = A.tgt(m);
    if (B.compose(G.mmap[m], t.components[a]) !=
        B.compose(t.components[b], F.mmap[m]))
      return fail("naturality", {m}, "naturality fails at " + A.morphism_name(m));
  }
  return {};
}

NatTransform identity_transform(const FinFunctor& f) {
  NatTransform t;
  t.source = f;
  t.target = f;
  t.components.resize(f.omap.size());
  for (size_t a = 0; a < f.omap.size(); ++a)
    t.components[a] = f.cod.identity(f.omap[a]);
  return t;
}

NatTransform vertical_compose(const NatTransform& beta, const NatTransform& alpha) {
  if (!same_functor(alpha.target, beta.source))
    throw ShapeError("vertical_compose: target of alpha is not the source of beta");
  NatTransform t;
  t.source = alpha.source;
  t.target = beta.target;
  t.components.resize(alpha.components.size());
  const FinCat& B = alpha.source.cod;
  for (size_t a = 0; a < alpha.components.size(); ++a)
    t.components[a] = B.compose(beta.components[a], alpha.components[a]);
  return t;
}

NatTransform whisker_left(const FinFunctor& h, const NatTransform& alpha) {
  if (!alpha.source.cod.same_table(h.dom))
    throw ShapeError("whisker_left: shapes do not match");
  NatTransform t;
  t.source = compose_functors(h, alpha.source);
  t.target = compose_functors(h, alpha.target);
  t.components.resize(alpha.components.size());
  for (size_t a = 0; a < alpha.components.size(); ++a)
    t.components[a] = h.mmap[alpha.components[a]];
  return t;
}

NatTransform whisker_right(const NatTransform& alpha, const FinFunctor& h) {
  if (!h.cod.same_table(alpha.source.dom))
    throw ShapeError("whisker_right: shapes do not match");
  NatTransform t;
  t.source = compose_functors(alpha.source, h);
  t.target = compose_functors(alpha.target, h);
  t.components.resize(h.omap.size());
  for (size_t a = 0; a < h.omap.size(); ++a)
    t.components[a] = alpha.components[h.omap[a]];
  return t;
}

bool is_invertible(const NatTransform& alpha) {
  const FinCat& B = alpha.source.cod;
  return std::all_of(alpha.components.begin(), alpha.components.end(),
                     [&](MorId c) { return B.is_iso(c); });
}

NatTransform invert(const NatTransform& alpha) {
  if (!is_invertible(alpha)) throw ShapeError("invert: transform not invertible");
  NatTransform t;
  t.source = alpha.target;
  t.target = alpha.source;
  t.components.resize(alpha.components.size());
  const FinCat& B = alpha.source.cod;
  for (size_t a = 0; a < alpha.components.size(); ++a)
    t.components[a] = *B.inverse(alpha.components[a]);
  return t;
}

bool same_transform(const NatTransform& a, const NatTransform& b) {
  return a.components == b.components && same_functor(a.source, b.source) &&
         same_functor(a.target, b.target);
}

FinCat named(NamedCat tag) {
  FinCat c;
  switch (tag) {
    case NamedCat::Zero:
      break;
    case NamedCat::One:
      c.add_object("*");
      break;
    case NamedCat::TwoDiscrete:
      c.add_object("x");
      c.add_object("y");
      break;
    case NamedCat::Arrow: {
      ObjId s = c.add_object("s");
      ObjId t = c.add_object("t");
      c.add_morphism(s, t, "f");
      break;
    }
    case NamedCat::ParallelPair: {
      ObjId s = c.add_object("s");
      ObjId t = c.add_object("t");
      c.add_morphism(s, t, "u");
      c.add_morphism(s, t, "v");
      break;
    }
    case NamedCat::FreeIso: {
      ObjId a = c.add_object("0");
      ObjId b = c.add_object("1");
      MorId u = c.add_morphism(a, b, "u");
      MorId v = c.add_morphism(b, a, "v");
      c.set_composite(v, u, c.identity(a));
      c.set_composite(u, v, c.identity(b));
      break;
    }
  }
  c.close_identities();
  return c;
}

FinCat chaotic(int n) {
  FinCat c;
  for (int i = 0; i < n; ++i) c.add_object("c" + std::to_string(i));
  // one morphism between each ordered pair of distinct objects
  std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      arrow[a][b] = (a == b) ? c.identity(a) : c.add_morphism(a, b);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) c.set_composite(arrow[b][d], arrow[a][b], arrow[a][d]);
  return c;
}

std::vector<FinFunctor> generating_cofibrations() {
  std::vector<FinFunctor> out;
  {
    FinFunctor f;  // 0 -> 1
    f.dom = named(NamedCat::Zero);
    f.cod = named(NamedCat::One);
    out.push_back(f);
  }
  {
    FinFunctor f;  // 2 -> arrow, endpoints
    f.dom = named(NamedCat::TwoDiscrete);
    f.cod = named(NamedCat::Arrow);
    f.omap = {0, 1};
    f.mmap = {f.cod.identity(0), f.cod.identity(1)};
    out.push_back(f);
  }
  {
    FinFunctor f;  // parallel pair -> arrow, identify the pair
    f.dom = named(NamedCat::ParallelPair);
    f.cod = named(NamedCat::Arrow);
    f.omap = {0, 1};
    MorId arrow = 2;  // the unique non-identity of the arrow category
    f.mmap = {f.cod.identity(0), f.cod.identity(1), arrow, arrow};
    out.push_back(f);
  }
  for (const auto& f : out)
    if (auto r = validate(f); !r.ok)
      throw InternalFault("generating cofibration fails to validate");
  return out;
}

FinFunctor generating_trivial_cofibration() {
  FinFunctor f;  // 1 -> FreeIso at object 0
  f.dom = named(NamedCat::One);
  f.cod = named(NamedCat::FreeIso);
  f.omap = {0};
  f.mmap = {f.cod.identity(0)};
  if (auto r = validate(f); !r.ok)
    throw InternalFault("generating trivial cofibration fails to validate");
  return f;
}

std::vector<FinFunctor> generating_maps() {
  auto out = generating_cofibrations();
  out.push_back(generating_trivial_cofibration());
  return out;
}

namespace {

bool extend_isomorphism(const FinCat& a, const FinCat& b, std::vector<ObjId>& ob,
                        std::vector<MorId>& mm, std::vector<bool>& obj_used,
                        ObjId next) {
  int n = a.object_count();
  if (next == n) {
    // objects matched; match morphisms hom-set by hom-set with backtracking
    int m = a.morphism_count();
    std::vector<bool> mor_used(b.morphism_count(), false);
    mm.assign(m, -1);
    for (ObjId x = 0; x < n; ++x) {
      mm[a.identity(x)] = b.identity(ob[x]);
      mor_used[b.identity(ob[x])] = true;
    }
    std::vector<MorId> todo;
    for (MorId f = 0; f < m; ++f)
      if (!a.is_identity(f)) todo.push_back(f);
    // backtracking over non-identity morphisms
    std::function<bool(size_t)> go = [&](size_t k) -> bool {
      if (k == todo.size()) {
        for (MorId g = 0; g < m; ++g)
          for (MorId f = 0; f < m; ++f)
            if (a.composable(g, f) && mm[a.compose(g, f)] != b.compose_raw(mm[g], mm[f]))
              return false;
        return true;
      }
      MorId f = todo[k];
      for (MorId c : b.hom(ob[a.src(f)], ob[a.tgt(f)])) {
        if (mor_used[c]) continue;
        mm[f] = c;
        mor_used[c] = true;
        // partial composition consistency against already-assigned morphisms
        bool ok = true;
        for (size_t j = 0; j <= k && ok; ++j) {
          MorId g = todo[j];
          if (a.composable(g, f) && mm[a.compose(g, f)] >= 0 &&
              mm[a.compose(g, f)] != b.compose_raw(mm[g], mm[f]))
            ok = false;
          if (ok && a.composable(f, g) && mm[a.compose(f, g)] >= 0 &&
              mm[a.compose(f, g)] != b.compose_raw(mm[f], mm[g]))
            ok = false;
        }
        if (ok && go(k + 1)) return true;
        mor_used[c] = false;
        mm[f] = -1;
      }
      return false;
    };
    return go(0);
  }
  for (ObjId y = 0; y < n; ++y) {
    if (obj_used[y]) continue;
    bool ok = true;
    // degree pruning: hom-set sizes with already-placed objects must match
    for (ObjId x = 0; x <= next && ok; ++x) {
      if (x < next || x == next) {
        ObjId xx = (x == next) ? next : x;
        ObjId yy = (x == next) ? y : ob[x];
        if (a.hom(next, xx).size() != b.hom(y, yy).size() ||
            a.hom(xx, next).size() != b.hom(yy, y).size())
          ok = false;
      }
    }
    if (!ok) continue;
    ob[next] = y;
    obj_used[y] = true;
    if (extend_isomorphism(a, b, ob, mm, obj_used, next + 1)) return true;
    obj_used[y] = false;
  }
  return false;
}

}  // namespace

std::optional<FinFunctor> find_isomorphism(const FinCat& a, const FinCat& b) {
  if (a.object_count() != b.object_count() ||
      a.morphism_count() != b.morphism_count())
    return std::nullopt;
  std::vector<ObjId> ob(a.object_count(), -1);
  std::vector<MorId> mm;
  std::vector<bool> used(b.object_count(), false);
  if (!extend_isomorphism(a, b, ob, mm, used, 0)) return std::nullopt;
  FinFunctor f;
  f.dom = a;
  f.cod = b;
  f.omap = ob;
  f.mmap = mm;
  if (auto r = validate(f); !r.ok)
    throw InternalFault("find_isomorphism produced an invalid functor");
  return f;
}

}  // namespace folkcat
