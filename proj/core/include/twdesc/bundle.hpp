#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twdesc/matrix.hpp"
#include "twdesc/site.hpp"

namespace twdesc {

// (point, degree) key used for fiber dimensions and fiberwise matrices.
using FiberKey = std::pair<int, int>;
// Fiberwise matrices of a map, keyed by (point, source degree). Absent
// entries are zero.
using FiberMaps = std::map<FiberKey, Matrix>;

// A locally free, finitely generated graded module over an open set, given
// by its fiber dimension at every point and degree. Only nonzero dimensions
// are stored, so the amplitude is bounded by construction.
class GradedBundle {
 public:
  GradedBundle() = default;
  // Throws Error(kInput) if a dimension is negative or lives off `open`.
  GradedBundle(PointSet open, std::map<FiberKey, int> dims);

  const PointSet& open() const { return open_; }
  int dim(int point, int degree) const;
  const std::map<FiberKey, int>& dims() const { return dims_; }
  bool is_zero() const { return dims_.empty(); }
  // [min, max] degree carrying a nonzero fiber, nullopt for the zero bundle.
  std::optional<std::pair<int, int>> window() const;

  bool operator==(const GradedBundle&) const = default;

 private:
  PointSet open_;
  std::map<FiberKey, int> dims_;
};

// Degree-shifted copy: result.dim(x, n) == b.dim(x, n + by).
GradedBundle shift_degrees(const GradedBundle& b, int by);

// An A-module map of fixed degree shift between graded bundles on one open.
class SheafMorphism {
 public:
  SheafMorphism() = default;
  // Shapes are checked: mats[(x, n)] is target.dim(x, n+shift) x source.dim(x, n).
  // Zero matrices are dropped.
  SheafMorphism(GradedBundle source, GradedBundle target, int shift, Field field,
                FiberMaps mats = {});

  static SheafMorphism zero(GradedBundle source, GradedBundle target, int shift, Field field);
  static SheafMorphism identity(const GradedBundle& b, Field field);

  const GradedBundle& source() const { return source_; }
  const GradedBundle& target() const { return target_; }
  int shift() const { return shift_; }
  Field field() const { return field_; }
  const FiberMaps& mats() const { return mats_; }

  // Fiber matrix at (point, source degree); a correctly shaped zero if absent.
  Matrix at(int point, int degree) const;
  bool is_zero() const { return mats_.empty(); }

  SheafMorphism& operator+=(const SheafMorphism& other);
  SheafMorphism operator-() const;
  friend SheafMorphism operator+(SheafMorphism a, const SheafMorphism& b) { return a += b; }
  friend SheafMorphism operator-(SheafMorphism a, const SheafMorphism& b) { return a += -b; }
  bool operator==(const SheafMorphism&) const = default;

 private:
  GradedBundle source_;
  GradedBundle target_;
  int shift_ = 0;
  Field field_ = Field::rationals();
  FiberMaps mats_;
};

// g after f; requires f.target() == g.source(). Shifts add.
SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f);

// Pointwise restriction; throws unless sub is contained in the open.
GradedBundle restrict(const GradedBundle& b, const PointSet& sub);
SheafMorphism restrict(const SheafMorphism& m, const PointSet& sub);

// Same fibers on the open, zero fibers elsewhere on `whole`.
GradedBundle extend_by_zero(const GradedBundle& b, const PointSet& whole);

// Direct sum over a common open, with the block offset of every summand at
// every fiber recorded in summand order.
class DirectSum {
 public:
  explicit DirectSum(std::vector<GradedBundle> summands);

  const GradedBundle& bundle() const { return total_; }
  std::size_t num_summands() const { return summands_.size(); }
  const GradedBundle& summand(std::size_t k) const { return summands_.at(k); }
  // Row offset of summand k inside the fiber at (point, degree).
  int offset(std::size_t k, int point, int degree) const;

  SheafMorphism inclusion(std::size_t k, Field field) const;
  SheafMorphism projection(std::size_t k, Field field) const;

 private:
  std::vector<GradedBundle> summands_;
  GradedBundle total_;
};

DirectSum direct_sum(std::vector<GradedBundle> bs);

struct KernelBundle {
  GradedBundle kernel;
  SheafMorphism inclusion;
};

// Fiberwise null space of m at source degree `degree`; the inclusion has
// kernel_basis matrices as fibers and m after inclusion is zero.
KernelBundle kernel_subbundle(const SheafMorphism& m, int degree);

}  // namespace twdesc
