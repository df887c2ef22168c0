#include "twdesc/bundle.hpp"

#include <algorithm>

#include "twdesc/error.hpp"
#include "twdesc/linalg.hpp"

namespace twdesc {

namespace {

std::string fiber_name(int point, int degree) {
  return "(point " + std::to_string(point) + ", degree " + std::to_string(degree) + ")";
}

}  // namespace

GradedBundle::GradedBundle(PointSet open, std::map<FiberKey, int> dims) : open_(std::move(open)) {
  std::sort(open_.begin(), open_.end());
  open_.erase(std::unique(open_.begin(), open_.end()), open_.end());
  for (const auto& [key, d] : dims) {
    if (d < 0) throw_input("negative fiber dimension at " + fiber_name(key.first, key.second));
    if (d == 0) continue;
    if (!std::binary_search(open_.begin(), open_.end(), key.first)) {
      throw_input("fiber dimension off the open at " + fiber_name(key.first, key.second));
    }
    dims_.emplace(key, d);
  }
}

int GradedBundle::dim(int point, int degree) const {
  auto it = dims_.find({point, degree});
  return it == dims_.end() ? 0 : it->second;
}

std::optional<std::pair<int, int>> GradedBundle::window() const {
  if (dims_.empty()) return std::nullopt;
  int lo = dims_.begin()->first.second;
  int hi = lo;
  for (const auto& [key, d] : dims_) {
    lo = std::min(lo, key.second);
    hi = std::max(hi, key.second);
  }
  return std::make_pair(lo, hi);
}

GradedBundle shift_degrees(const GradedBundle& b, int by) {
  std::map<FiberKey, int> dims;
  for (const auto& [key, d] : b.dims()) dims[{key.first, key.second - by}] = d;
  return GradedBundle(b.open(), std::move(dims));
}

SheafMorphism::SheafMorphism(GradedBundle source, GradedBundle target, int shift, Field field,
                             FiberMaps mats)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), field_(field) {
  for (auto& [key, m] : mats) {
    const auto [x, n] = key;
    const auto rows = static_cast<std::size_t>(target_.dim(x, n + shift_));
    const auto cols = static_cast<std::size_t>(source_.dim(x, n));
    if (m.rows() != rows || m.cols() != cols) {
      throw_input("matrix shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                  " does not match fiber dims " + std::to_string(rows) + "x" +
                  std::to_string(cols) + " at " + fiber_name(x, n));
    }
    if (!(m.field() == field_)) throw_input("field mismatch");
    if (!m.is_zero()) mats_.emplace(key, std::move(m));
  }
}

SheafMorphism SheafMorphism::zero(GradedBundle source, GradedBundle target, int shift,
                                  Field field) {
  return SheafMorphism(std::move(source), std::move(target), shift, field);
}

SheafMorphism SheafMorphism::identity(const GradedBundle& b, Field field) {
  FiberMaps mats;
  for (const auto& [key, d] : b.dims()) mats.emplace(key, Matrix::identity(field, d));
  return SheafMorphism(b, b, 0, field, std::move(mats));
}

Matrix SheafMorphism::at(int point, int degree) const {
  auto it = mats_.find({point, degree});
  if (it != mats_.end()) return it->second;
  return Matrix(field_, target_.dim(point, degree + shift_), source_.dim(point, degree));
}

SheafMorphism& SheafMorphism::operator+=(const SheafMorphism& other) {
  if (!(source_ == other.source_) || !(target_ == other.target_) || shift_ != other.shift_) {
    throw_input("adding morphisms of different type");
  }
  for (const auto& [key, m] : other.mats_) {
    auto it = mats_.find(key);
    if (it == mats_.end()) {
      mats_.emplace(key, m);
    } else {
      it->second += m;
      if (it->second.is_zero()) mats_.erase(it);
    }
  }
  return *this;
}

SheafMorphism SheafMorphism::operator-() const {
  SheafMorphism out = *this;
  for (auto& [key, m] : out.mats_) m = -m;
  return out;
}

SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f) {
  if (!(f.target() == g.source())) throw_input("compose: target/source mismatch");
  FiberMaps mats;
  for (const auto& [key, fm] : f.mats()) {
    const auto [x, n] = key;
    auto it = g.mats().find({x, n + f.shift()});
    if (it == g.mats().end()) continue;
    mats.emplace(key, it->second * fm);
  }
  return SheafMorphism(f.source(), g.target(), f.shift() + g.shift(), f.field(), std::move(mats));
}

GradedBundle restrict(const GradedBundle& b, const PointSet& sub) {
  if (!is_subset(sub, b.open())) throw_input("restrict: subset not contained in the open");
  std::map<FiberKey, int> dims;
  for (const auto& [key, d] : b.dims()) {
    if (std::binary_search(sub.begin(), sub.end(), key.first)) dims.emplace(key, d);
  }
  return GradedBundle(sub, std::move(dims));
}

SheafMorphism restrict(const SheafMorphism& m, const PointSet& sub) {
  FiberMaps mats;
  for (const auto& [key, mat] : m.mats()) {
    if (std::binary_search(sub.begin(), sub.end(), key.first)) mats.emplace(key, mat);
  }
  return SheafMorphism(restrict(m.source(), sub), restrict(m.target(), sub), m.shift(), m.field(),
                       std::move(mats));
}

GradedBundle extend_by_zero(const GradedBundle& b, const PointSet& whole) {
  if (!is_subset(b.open(), whole)) throw_input("extend_by_zero: open not contained in target");
  return GradedBundle(whole, b.dims());
}

DirectSum::DirectSum(std::vector<GradedBundle> summands) : summands_(std::move(summands)) {
  PointSet open = summands_.empty() ? PointSet{} : summands_.front().open();
  std::map<FiberKey, int> dims;
  for (const auto& s : summands_) {
    if (s.open() != open) throw_input("direct_sum: summands live on different opens");
    for (const auto& [key, d] : s.dims()) dims[key] += d;
  }
  total_ = GradedBundle(std::move(open), std::move(dims));
}

int DirectSum::offset(std::size_t k, int point, int degree) const {
  int at = 0;
  for (std::size_t j = 0; j < k; ++j) at += summands_[j].dim(point, degree);
  return at;
}

SheafMorphism DirectSum::inclusion(std::size_t k, Field field) const {
  FiberMaps mats;
  for (const auto& [key, d] : summands_.at(k).dims()) {
    Matrix m(field, total_.dim(key.first, key.second), d);
    m.set_block(offset(k, key.first, key.second), 0, Matrix::identity(field, d));
    mats.emplace(key, std::move(m));
  }
  return SheafMorphism(summands_[k], total_, 0, field, std::move(mats));
}

SheafMorphism DirectSum::projection(std::size_t k, Field field) const {
  FiberMaps mats;
  for (const auto& [key, d] : summands_.at(k).dims()) {
    Matrix m(field, d, total_.dim(key.first, key.second));
    m.set_block(0, offset(k, key.first, key.second), Matrix::identity(field, d));
    mats.emplace(key, std::move(m));
  }
  return SheafMorphism(total_, summands_[k], 0, field, std::move(mats));
}

DirectSum direct_sum(std::vector<GradedBundle> bs) { return DirectSum(std::move(bs)); }

KernelBundle kernel_subbundle(const SheafMorphism& m, int degree) {
  std::map<FiberKey, int> dims;
  FiberMaps incl;
  for (int x : m.source().open()) {
    const int d = m.source().dim(x, degree);
    if (d == 0) continue;
    Matrix basis = kernel_basis(m.at(x, degree));
    if (basis.cols() == 0) continue;
    dims[{x, degree}] = static_cast<int>(basis.cols());
    incl.emplace(FiberKey{x, degree}, std::move(basis));
  }
  GradedBundle k(m.source().open(), std::move(dims));
  SheafMorphism inclusion(k, m.source(), 0, m.field(), std::move(incl));
  return {std::move(k), std::move(inclusion)};
}

}  // namespace twdesc
