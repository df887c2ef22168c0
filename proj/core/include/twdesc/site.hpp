#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twdesc/scalar.hpp"

namespace twdesc {

// Sorted, duplicate-free point indices.
using PointSet = std::vector<int>;
// Nerve index tuple (i_0, ..., i_p); repeated indices are allowed.
using Tuple = std::vector<int>;

PointSet intersect(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& sub, const PointSet& super);

struct NerveTuple {
  Tuple indices;
  PointSet support;

  bool operator==(const NerveTuple&) const = default;
};

// rho[i][x]: value of the i-th partition function at point x.
class PartitionOfUnity {
 public:
  PartitionOfUnity() = default;
  explicit PartitionOfUnity(std::vector<std::vector<Scalar>> rho) : rho_(std::move(rho)) {}

  const Scalar& operator()(int index, int point) const { return rho_.at(index).at(point); }
  std::size_t size() const { return rho_.size(); }
  const std::vector<std::vector<Scalar>>& table() const { return rho_; }

 private:
  std::vector<std::vector<Scalar>> rho_;
};

// Least-index partition: rho_i(x) = 1 iff i is the first open containing x.
// Throws Error(kInput) "not a cover" when some point lies in no open.
PartitionOfUnity default_partition(std::size_t num_points, const std::vector<PointSet>& opens,
                                   Field field);

// A finite point set with a finite ordered cover and a partition of unity.
// The structure sheaf is modelled as field-valued functions on points, which
// is soft, so every construction that needs a partition of unity has one.
class Site {
 public:
  // Points are named; opens list point indices. When `pou` is absent the
  // least-index partition is used. Construction does not validate the cover
  // beyond index ranges; see validate_site.
  Site(std::vector<std::string> points, std::vector<PointSet> opens, Field field,
       std::optional<PartitionOfUnity> pou = std::nullopt);

  Field field() const { return field_; }
  std::size_t num_points() const { return points_.size(); }
  std::size_t num_opens() const { return opens_.size(); }
  const std::vector<std::string>& point_names() const { return points_; }
  const std::string& point_name(int x) const { return points_.at(x); }
  // Throws Error(kInput) for unknown names.
  int point_index(const std::string& name) const;

  const std::vector<PointSet>& opens() const { return opens_; }
  const PointSet& open(int i) const { return opens_.at(i); }
  bool contains(int index, int point) const { return member_[index][point]; }
  // Indices of the opens containing x, increasing.
  const std::vector<int>& indices_at(int point) const { return indices_at_.at(point); }
  PointSet all_points() const;

  // U_{i_0} n ... n U_{i_p}.
  PointSet support(const Tuple& t) const;
  bool in_support(const Tuple& t, int point) const;

  const PartitionOfUnity& pou() const { return pou_; }
  const Scalar& rho(int index, int point) const { return pou_(index, point); }

  bool operator==(const Site& other) const;

 private:
  std::vector<std::string> points_;
  std::vector<PointSet> opens_;
  Field field_;
  PartitionOfUnity pou_;
  std::vector<std::vector<bool>> member_;
  std::vector<std::vector<int>> indices_at_;
  std::map<std::string, int> index_of_;
};

using SitePtr = std::shared_ptr<const Site>;

// All tuples of length <= max_length with nonempty support, shortest first
// and lexicographic within a length.
std::vector<NerveTuple> build_nerve(const Site& site, std::size_t max_length);

// Human-readable problems with the cover and the partition of unity; empty
// iff the site is valid.
std::vector<std::string> validate_site(const Site& site);

}  // namespace twdesc
