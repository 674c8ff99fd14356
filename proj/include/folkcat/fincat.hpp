#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folkcat {

using ObjId = int;
using MorId = int;

/// Precondition violation: mismatched domains/codomains, ill-shaped input.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its configured size guard.
struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two procedures that must agree disagreed. Indicates a bug, not bad input.
struct InternalFault : std::logic_error {
  using std::logic_error::logic_error;
};

constexpr std::uint64_t kDefaultGuard = 1'000'000;

struct Mor {
  ObjId src;
  ObjId tgt;
};

/// A finite category: object list, morphism list, identity assignment and a
/// fully materialized composition table. Immutable once built (the mutating
/// builder calls are only used during construction).
class FinCat {
 public:
  FinCat() = default;

  ObjId add_object(std::string name = "");
  MorId add_morphism(ObjId src, ObjId tgt, std::string name = "");
  void set_composite(MorId g, MorId f, MorId gf);
  /// Fills every compose-table entry involving an identity.
  void close_identities();

  int object_count() const { return static_cast<int>(idn_.size()); }
  int morphism_count() const { return static_cast<int>(mors_.size()); }

  ObjId src(MorId m) const { return mors_[m].src; }
  ObjId tgt(MorId m) const { return mors_[m].tgt; }
  MorId identity(ObjId a) const { return idn_[a]; }
  bool is_identity(MorId m) const;

  bool composable(MorId g, MorId f) const { return tgt(f) == src(g); }
  /// g after f; throws InternalFault if the table has no entry.
  MorId compose(MorId g, MorId f) const;
  /// g after f, or -1 when the table has no entry (or the pair is not
  /// composable).
  MorId compose_raw(MorId g, MorId f) const;

  std::vector<MorId> hom(ObjId a, ObjId b) const;
  std::optional<MorId> inverse(MorId f) const;
  bool is_iso(MorId f) const { return inverse(f).has_value(); }
  /// All isomorphisms with target b, in id order.
  std::vector<MorId> isos_into(ObjId b) const;

  const std::string& object_name(ObjId a) const { return onames_[a]; }
  const std::string& morphism_name(MorId m) const { return mnames_[m]; }
  void set_object_name(ObjId a, std::string name) { onames_[a] = std::move(name); }
  void set_morphism_name(MorId m, std::string name) { mnames_[m] = std::move(name); }

  /// Exact structural equality of tables; names are ignored.
  bool same_table(const FinCat& other) const;

 private:
  std::vector<Mor> mors_;
  std::vector<MorId> idn_;
  std::vector<std::vector<MorId>> comp_;  // comp_[g][f] = g.f, -1 if absent
  std::vector<std::string> onames_;
  std::vector<std::string> mnames_;
};

struct LawViolation {
  std::string law;
  std::vector<int> ids;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::optional<LawViolation> violation;
};

/// Checks totality of the composition table and the identity, associativity
/// and source/target laws. Returns the first violated law with offending ids.
ValidationReport validate(const FinCat& c);

/// A functor between finite categories, with both endpoint categories stored
/// by value. Categories involved here are tiny, so value semantics is cheap
/// and keeps everything immutable.
class FinFunctor {
 public:
  FinCat dom;
  FinCat cod;
  std::vector<ObjId> omap;
  std::vector<MorId> mmap;

  ObjId on_object(ObjId a) const { return omap[a]; }
  MorId on_morphism(MorId m) const { return mmap[m]; }
};

ValidationReport validate(const FinFunctor& f);

FinFunctor identity_functor(const FinCat& a);
FinFunctor constant_functor(const FinCat& a, const FinCat& b, ObjId at);

/// Pointwise composite g after f; throws ShapeError on domain mismatch and
/// InternalFault if the composite fails to re-validate.
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

/// Exact equality: same endpoint tables and same object/morphism maps.
bool same_functor(const FinFunctor& a, const FinFunctor& b);

class NatTransform {
 public:
  FinFunctor source;
  FinFunctor target;
  std::vector<MorId> components;  // indexed by objects of source.dom

  MorId at(ObjId a) const { return components[a]; }
};

ValidationReport validate(const NatTransform& t);

NatTransform identity_transform(const FinFunctor& f);
NatTransform vertical_compose(const NatTransform& beta, const NatTransform& alpha);
/// h . alpha, components h(alpha_a).
NatTransform whisker_left(const FinFunctor& h, const NatTransform& alpha);
/// alpha . h, components alpha_{h(a)}.
NatTransform whisker_right(const NatTransform& alpha, const FinFunctor& h);
bool is_invertible(const NatTransform& alpha);
NatTransform invert(const NatTransform& alpha);
bool same_transform(const NatTransform& a, const NatTransform& b);

enum class NamedCat { Zero, One, TwoDiscrete, Arrow, ParallelPair, FreeIso };

/// The six standard small categories: 0, 1, 2, the arrow category, the
/// parallel pair and the free-living isomorphism.
FinCat named(NamedCat tag);

/// The chaotic (indiscrete) category on n objects.
FinCat chaotic(int n);

/// The three generating cofibrations 0 -> 1, 2 -> arrow (endpoints) and
/// parallel-pair -> arrow (identify the pair).
std::vector<FinFunctor> generating_cofibrations();
/// The generating trivial cofibration 1 -> FreeIso picking object 0.
FinFunctor generating_trivial_cofibration();
/// All four generators, cofibrations first.
std::vector<FinFunctor> generating_maps();

/// Searches for an isomorphism of categories (bijective on objects and
/// morphisms, strictly compatible with all structure).
std::optional<FinFunctor> find_isomorphism(const FinCat& a, const FinCat& b);

}  // namespace folkcat
