#include "twdesc/site.hpp"

#include <algorithm>
#include <iterator>

#include "twdesc/error.hpp"

namespace twdesc {

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const PointSet& sub, const PointSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

PartitionOfUnity default_partition(std::size_t num_points, const std::vector<PointSet>& opens,
                                   Field field) {
  std::vector<std::vector<Scalar>> rho(opens.size(),
                                       std::vector<Scalar>(num_points, Scalar::zero(field)));
  for (std::size_t x = 0; x < num_points; ++x) {
    bool covered = false;
    for (std::size_t i = 0; i < opens.size() && !covered; ++i) {
      if (std::binary_search(opens[i].begin(), opens[i].end(), static_cast<int>(x))) {
        rho[i][x] = Scalar::one(field);
        covered = true;
      }
    }
    if (!covered) throw_input("not a cover: point " + std::to_string(x) + " lies in no open");
  }
  return PartitionOfUnity(std::move(rho));
}

Site::Site(std::vector<std::string> points, std::vector<PointSet> opens, Field field,
           std::optional<PartitionOfUnity> pou)
    : points_(std::move(points)), opens_(std::move(opens)), field_(field) {
  for (std::size_t x = 0; x < points_.size(); ++x) {
    if (!index_of_.emplace(points_[x], static_cast<int>(x)).second) {
      throw_input("duplicate point name '" + points_[x] + "'");
    }
  }
  member_.assign(opens_.size(), std::vector<bool>(points_.size(), false));
  indices_at_.assign(points_.size(), {});
  for (std::size_t i = 0; i < opens_.size(); ++i) {
    auto& u = opens_[i];
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (int x : u) {
      if (x < 0 || static_cast<std::size_t>(x) >= points_.size()) {
        throw_input("open " + std::to_string(i) + " refers to unknown point " + std::to_string(x));
      }
      member_[i][x] = true;
      indices_at_[x].push_back(static_cast<int>(i));
    }
  }
  if (pou) {
    if (pou->size() != opens_.size()) throw_input("partition of unity has wrong number of rows");
    for (const auto& row : pou->table()) {
      if (row.size() != points_.size()) throw_input("partition of unity has wrong row length");
      for (const auto& s : row) {
        if (!(s.field() == field_)) throw_input("field mismatch");
      }
    }
    pou_ = std::move(*pou);
  } else {
    pou_ = default_partition(points_.size(), opens_, field_);
  }
}

int Site::point_index(const std::string& name) const {
  auto it = index_of_.find(name);
  if (it == index_of_.end()) throw_input("unknown point '" + name + "'");
  return it->second;
}

PointSet Site::all_points() const {
  PointSet all(points_.size());
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = static_cast<int>(x);
  return all;
}

PointSet Site::support(const Tuple& t) const {
  if (t.empty()) return all_points();
  PointSet out;
  for (std::size_t x = 0; x < points_.size(); ++x) {
    if (in_support(t, static_cast<int>(x))) out.push_back(static_cast<int>(x));
  }
  return out;
}

bool Site::in_support(const Tuple& t, int point) const {
  for (int i : t) {
    if (i < 0 || static_cast<std::size_t>(i) >= opens_.size()) {
      throw_input("nerve index out of range: " + std::to_string(i));
    }
    if (!member_[i][point]) return false;
  }
  return true;
}

bool Site::operator==(const Site& other) const {
  return this == &other || (points_ == other.points_ && opens_ == other.opens_ &&
                            field_ == other.field_ && pou_.table() == other.pou_.table());
}

std::vector<NerveTuple> build_nerve(const Site& site, std::size_t max_length) {
  std::vector<NerveTuple> out;
  std::vector<NerveTuple> layer;
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    NerveTuple t{{static_cast<int>(i)}, site.open(static_cast<int>(i))};
    if (!t.support.empty()) layer.push_back(t);
  }
  for (std::size_t len = 1; len <= max_length && !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<NerveTuple> next;
    for (const auto& t : layer) {
      for (std::size_t i = 0; i < site.num_opens(); ++i) {
        NerveTuple ext{t.indices, intersect(t.support, site.open(static_cast<int>(i)))};
        if (ext.support.empty()) continue;
        ext.indices.push_back(static_cast<int>(i));
        next.push_back(std::move(ext));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<std::string> validate_site(const Site& site) {
  std::vector<std::string> problems;
  const Field f = site.field();
  for (std::size_t x = 0; x < site.num_points(); ++x) {
    const std::string& name = site.point_name(static_cast<int>(x));
    if (site.indices_at(static_cast<int>(x)).empty()) {
      problems.push_back("not a cover: point " + name + " lies in no open");
    }
    Scalar sum = Scalar::zero(f);
    for (std::size_t i = 0; i < site.num_opens(); ++i) {
      const Scalar& r = site.rho(static_cast<int>(i), static_cast<int>(x));
      if (!r.is_zero() && !site.contains(static_cast<int>(i), static_cast<int>(x))) {
        problems.push_back("support violation at point " + name + ", index " + std::to_string(i));
      }
      sum += r;
    }
    if (!sum.is_one()) {
      problems.push_back("partition sum != 1 at " + name + " (sum " + sum.to_string() + ")");
    }
  }
  return problems;
}

}  // namespace twdesc
