#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "twdesc/bundle.hpp"
#include "twdesc/site.hpp"

namespace twdesc {

// One graded bundle per cover index; bundles[i] lives on U_i.
struct LocalFamily {
  SitePtr site;
  std::vector<GradedBundle> bundles;

  Field field() const { return site->field(); }
  int dim(int index, int point, int degree) const { return bundles[index].dim(point, degree); }
};

using FamilyPtr = std::shared_ptr<const LocalFamily>;

// Checks that there is one bundle per open and that each lives on its open.
FamilyPtr make_family(SitePtr site, std::vector<GradedBundle> bundles);
// Restrictions of a bundle on X to every open.
FamilyPtr restrict_to_cover(SitePtr site, const GradedBundle& global);
bool same_family(const FamilyPtr& a, const FamilyPtr& b);

// Identifies a homogeneous piece: nerve tuple (i_0..i_p) and degree q.
struct CochainKey {
  Tuple tuple;
  int q = 0;

  int p() const { return static_cast<int>(tuple.size()) - 1; }
  int total() const { return p() + q; }
  auto operator<=>(const CochainKey&) const = default;
};

inline bool odd(int n) { return (n & 1) != 0; }

// Element of the bigraded Cech hom complex C(U, Hom(E, F)). The component
// at (i_0..i_p, q) maps E_{i_p} to F_{i_0} on U_{i_0..i_p}, raising degree
// by q. Fibers are keyed by (point, source degree); absent means zero.
class HomCochain {
 public:
  HomCochain() = default;
  HomCochain(FamilyPtr source, FamilyPtr target);

  const FamilyPtr& source() const { return source_; }
  const FamilyPtr& target() const { return target_; }
  Field field() const { return source_->field(); }
  const std::map<CochainKey, FiberMaps>& components() const { return comps_; }

  // Accumulates m into one fiber. Shape and support are checked.
  void add(const Tuple& t, int q, int point, int degree, const Matrix& m);
  void add_unchecked(const CochainKey& key, int point, int degree, const Matrix& m);
  // Fiber at (tuple, q, point, degree), zero of the right shape if absent.
  Matrix at(const Tuple& t, int q, int point, int degree) const;
  const FiberMaps* find(const CochainKey& key) const;

  bool is_zero() const { return comps_.empty(); }
  std::set<int> total_degrees() const;
  HomCochain homogeneous(int total_degree) const;
  // All components of Cech degree p.
  HomCochain cech_piece(int p) const;

  HomCochain& operator+=(const HomCochain& other);
  HomCochain& operator-=(const HomCochain& other);
  HomCochain operator-() const;
  HomCochain& operator*=(const Scalar& s);
  friend HomCochain operator+(HomCochain a, const HomCochain& b) { return a += b; }
  friend HomCochain operator-(HomCochain a, const HomCochain& b) { return a -= b; }
  bool operator==(const HomCochain& other) const;

 private:
  void check_compatible(const HomCochain& other) const;

  FamilyPtr source_;
  FamilyPtr target_;
  std::map<CochainKey, FiberMaps> comps_;
};

// Element of C(U, E): the component at (i_0..i_p, q) is a section of E^q_{i_0}
// over U_{i_0..i_p}, stored as one column vector per point.
class SheafCochain {
 public:
  using Sections = std::map<int, Matrix>;

  SheafCochain() = default;
  explicit SheafCochain(FamilyPtr family);

  const FamilyPtr& family() const { return family_; }
  Field field() const { return family_->field(); }
  const std::map<CochainKey, Sections>& components() const { return comps_; }

  void add(const Tuple& t, int q, int point, const Matrix& v);
  void add_unchecked(const CochainKey& key, int point, const Matrix& v);
  Matrix at(const Tuple& t, int q, int point) const;

  bool is_zero() const { return comps_.empty(); }
  SheafCochain& operator+=(const SheafCochain& other);
  SheafCochain operator-() const;
  friend SheafCochain operator+(SheafCochain a, const SheafCochain& b) { return a += b; }
  bool operator==(const SheafCochain& other) const;

 private:
  FamilyPtr family_;
  std::map<CochainKey, Sections> comps_;
};

// (u.v) at (i_0..i_{p+r}) = (-1)^{qr} u(i_0..i_p) v(i_p..i_{p+r}).
HomCochain compose(const HomCochain& u, const HomCochain& v);
// Same sign rule, evaluating u on sections.
SheafCochain act(const HomCochain& u, const SheafCochain& c);
// Interior faces only: sum over k = 1..p of (-1)^k u(..^i_k..).
HomCochain delta_hom(const HomCochain& u);
// Faces k = 1..p+1 of (-1)^k c(..^i_k..).
SheafCochain delta_sheaf(const SheafCochain& c);

// Identity endomorphism cochain, concentrated in bidegree (0, 0).
HomCochain identity_cochain(const FamilyPtr& family);

}  // namespace twdesc
