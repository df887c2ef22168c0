#include "twdesc/cochain.hpp"

#include <string>
#include <unordered_map>

#include "twdesc/error.hpp"

namespace twdesc {

namespace {

std::string tuple_name(const Tuple& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(t[k]);
  }
  return s + ")";
}

void accumulate(FiberMaps& fibers, const FiberKey& key, const Matrix& m) {
  if (m.is_zero()) return;
  auto it = fibers.find(key);
  if (it == fibers.end()) {
    fibers.emplace(key, m);
    return;
  }
  it->second += m;
  if (it->second.is_zero()) fibers.erase(it);
}

Tuple insert_at(const Tuple& t, std::size_t pos, int index) {
  Tuple out;
  out.reserve(t.size() + 1);
  out.insert(out.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(pos));
  out.push_back(index);
  out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(pos), t.end());
  return out;
}

}  // namespace

FamilyPtr make_family(SitePtr site, std::vector<GradedBundle> bundles) {
  if (!site) throw_input("family without a site");
  if (bundles.size() != site->num_opens()) {
    throw_input("family has " + std::to_string(bundles.size()) + " bundles for " +
                std::to_string(site->num_opens()) + " opens");
  }
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].open() != site->open(static_cast<int>(i))) {
      throw_input("bundle " + std::to_string(i) + " does not live on its open");
    }
  }
  auto f = std::make_shared<LocalFamily>();
  f->site = std::move(site);
  f->bundles = std::move(bundles);
  return f;
}

FamilyPtr restrict_to_cover(SitePtr site, const GradedBundle& global) {
  std::vector<GradedBundle> bs;
  for (std::size_t i = 0; i < site->num_opens(); ++i) {
    bs.push_back(restrict(global, site->open(static_cast<int>(i))));
  }
  return make_family(std::move(site), std::move(bs));
}

bool same_family(const FamilyPtr& a, const FamilyPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a->site == *b->site && a->bundles == b->bundles;
}

// ---------------------------------------------------------------------------

HomCochain::HomCochain(FamilyPtr source, FamilyPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw_input("cochain without families");
  if (!(*source_->site == *target_->site)) throw_input("cochain families on different sites");
}

void HomCochain::add(const Tuple& t, int q, int point, int degree, const Matrix& m) {
  if (t.empty()) throw_input("empty nerve tuple");
  const Site& site = *source_->site;
  if (point < 0 || static_cast<std::size_t>(point) >= site.num_points()) {
    throw_input("unknown point " + std::to_string(point));
  }
  if (!site.in_support(t, point)) {
    throw_input("point " + site.point_name(point) + " is not in the support of " + tuple_name(t));
  }
  const auto rows = static_cast<std::size_t>(target_->dim(t.front(), point, degree + q));
  const auto cols = static_cast<std::size_t>(source_->dim(t.back(), point, degree));
  if (m.rows() != rows || m.cols() != cols) {
    throw_input("component " + tuple_name(t) + " q=" + std::to_string(q) + " at point " +
                site.point_name(point) + ", degree " + std::to_string(degree) +
                ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!(m.field() == field())) throw_input("field mismatch");
  add_unchecked(CochainKey{t, q}, point, degree, m);
}

void HomCochain::add_unchecked(const CochainKey& key, int point, int degree, const Matrix& m) {
  if (m.is_zero()) return;
  auto it = comps_.find(key);
  if (it == comps_.end()) it = comps_.emplace(key, FiberMaps{}).first;
  accumulate(it->second, {point, degree}, m);
  if (it->second.empty()) comps_.erase(it);
}

Matrix HomCochain::at(const Tuple& t, int q, int point, int degree) const {
  if (const FiberMaps* f = find(CochainKey{t, q})) {
    auto it = f->find({point, degree});
    if (it != f->end()) return it->second;
  }
  return Matrix(field(), target_->dim(t.front(), point, degree + q),
                source_->dim(t.back(), point, degree));
}

const FiberMaps* HomCochain::find(const CochainKey& key) const {
  auto it = comps_.find(key);
  return it == comps_.end() ? nullptr : &it->second;
}

std::set<int> HomCochain::total_degrees() const {
  std::set<int> out;
  for (const auto& [key, f] : comps_) out.insert(key.total());
  return out;
}

HomCochain HomCochain::homogeneous(int total_degree) const {
  HomCochain out(source_, target_);
  for (const auto& [key, f] : comps_) {
    if (key.total() == total_degree) out.comps_.emplace(key, f);
  }
  return out;
}

HomCochain HomCochain::cech_piece(int p) const {
  HomCochain out(source_, target_);
  for (const auto& [key, f] : comps_) {
    if (key.p() == p) out.comps_.emplace(key, f);
  }
  return out;
}

void HomCochain::check_compatible(const HomCochain& other) const {
  if (!same_family(source_, other.source_) || !same_family(target_, other.target_)) {
    throw_input("cochain family mismatch");
  }
}

HomCochain& HomCochain::operator+=(const HomCochain& other) {
  check_compatible(other);
  for (const auto& [key, fibers] : other.comps_) {
    for (const auto& [fk, m] : fibers) add_unchecked(key, fk.first, fk.second, m);
  }
  return *this;
}

HomCochain& HomCochain::operator-=(const HomCochain& other) { return *this += -other; }

HomCochain HomCochain::operator-() const {
  HomCochain out = *this;
  for (auto& [key, fibers] : out.comps_) {
    for (auto& [fk, m] : fibers) m = -m;
  }
  return out;
}

HomCochain& HomCochain::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [key, fibers] : comps_) {
    for (auto& [fk, m] : fibers) m *= s;
  }
  return *this;
}

bool HomCochain::operator==(const HomCochain& other) const {
  return same_family(source_, other.source_) && same_family(target_, other.target_) &&
         comps_ == other.comps_;
}

// ---------------------------------------------------------------------------

SheafCochain::SheafCochain(FamilyPtr family) : family_(std::move(family)) {
  if (!family_) throw_input("cochain without a family");
}

void SheafCochain::add(const Tuple& t, int q, int point, const Matrix& v) {
  if (t.empty()) throw_input("empty nerve tuple");
  const Site& site = *family_->site;
  if (point < 0 || static_cast<std::size_t>(point) >= site.num_points()) {
    throw_input("unknown point " + std::to_string(point));
  }
  if (!site.in_support(t, point)) {
    throw_input("point " + site.point_name(point) + " is not in the support of " + tuple_name(t));
  }
  const auto rows = static_cast<std::size_t>(family_->dim(t.front(), point, q));
  if (v.rows() != rows || v.cols() != 1) throw_input("section has the wrong shape");
  if (!(v.field() == field())) throw_input("field mismatch");
  add_unchecked(CochainKey{t, q}, point, v);
}

void SheafCochain::add_unchecked(const CochainKey& key, int point, const Matrix& v) {
  if (v.is_zero()) return;
  auto& sections = comps_[key];
  auto it = sections.find(point);
  if (it == sections.end()) {
    sections.emplace(point, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) sections.erase(it);
  }
  if (sections.empty()) comps_.erase(key);
}

Matrix SheafCochain::at(const Tuple& t, int q, int point) const {
  auto it = comps_.find(CochainKey{t, q});
  if (it != comps_.end()) {
    auto s = it->second.find(point);
    if (s != it->second.end()) return s->second;
  }
  return Matrix(field(), family_->dim(t.front(), point, q), 1);
}

SheafCochain& SheafCochain::operator+=(const SheafCochain& other) {
  if (!same_family(family_, other.family_)) throw_input("cochain family mismatch");
  for (const auto& [key, sections] : other.comps_) {
    for (const auto& [x, v] : sections) add_unchecked(key, x, v);
  }
  return *this;
}

SheafCochain SheafCochain::operator-() const {
  SheafCochain out = *this;
  for (auto& [key, sections] : out.comps_) {
    for (auto& [x, v] : sections) v = -v;
  }
  return out;
}

bool SheafCochain::operator==(const SheafCochain& other) const {
  return same_family(family_, other.family_) && comps_ == other.comps_;
}

// ---------------------------------------------------------------------------

HomCochain compose(const HomCochain& u, const HomCochain& v) {
  if (!same_family(v.target(), u.source())) throw_input("compose: cochain family mismatch");
  HomCochain out(v.source(), u.target());
  std::unordered_map<int, std::vector<const std::pair<const CochainKey, FiberMaps>*>> by_first;
  for (const auto& entry : v.components()) by_first[entry.first.tuple.front()].push_back(&entry);

  for (const auto& [ukey, ufib] : u.components()) {
    auto bucket = by_first.find(ukey.tuple.back());
    if (bucket == by_first.end()) continue;
    for (const auto* ventry : bucket->second) {
      const CochainKey& vkey = ventry->first;
      CochainKey key{ukey.tuple, ukey.q + vkey.q};
      key.tuple.insert(key.tuple.end(), vkey.tuple.begin() + 1, vkey.tuple.end());
      const bool negate = odd(ukey.q * vkey.p());
      for (const auto& [fk, vm] : ventry->second) {
        auto um = ufib.find({fk.first, fk.second + vkey.q});
        if (um == ufib.end()) continue;
        Matrix prod = um->second * vm;
        out.add_unchecked(key, fk.first, fk.second, negate ? -prod : prod);
      }
    }
  }
  return out;
}

SheafCochain act(const HomCochain& u, const SheafCochain& c) {
  if (!same_family(u.source(), c.family())) throw_input("act: cochain family mismatch");
  SheafCochain out(u.target());
  for (const auto& [ukey, ufib] : u.components()) {
    for (const auto& [ckey, sections] : c.components()) {
      if (ckey.tuple.front() != ukey.tuple.back()) continue;
      CochainKey key{ukey.tuple, ukey.q + ckey.q};
      key.tuple.insert(key.tuple.end(), ckey.tuple.begin() + 1, ckey.tuple.end());
      const bool negate = odd(ukey.q * ckey.p());
      for (const auto& [x, vec] : sections) {
        auto um = ufib.find({x, ckey.q});
        if (um == ufib.end()) continue;
        Matrix img = um->second * vec;
        out.add_unchecked(key, x, negate ? -img : img);
      }
    }
  }
  return out;
}

HomCochain delta_hom(const HomCochain& u) {
  HomCochain out(u.source(), u.target());
  const Site& site = *u.source()->site;
  for (const auto& [key, fibers] : u.components()) {
    const int p = key.p();
    for (int k = 1; k <= p; ++k) {
      for (std::size_t j = 0; j < site.num_opens(); ++j) {
        CochainKey rk{insert_at(key.tuple, static_cast<std::size_t>(k), static_cast<int>(j)), key.q};
        for (const auto& [fk, m] : fibers) {
          if (!site.contains(static_cast<int>(j), fk.first)) continue;
          out.add_unchecked(rk, fk.first, fk.second, odd(k) ? -m : m);
        }
      }
    }
  }
  return out;
}

SheafCochain delta_sheaf(const SheafCochain& c) {
  SheafCochain out(c.family());
  const Site& site = *c.family()->site;
  for (const auto& [key, sections] : c.components()) {
    const int p = key.p();
    for (int k = 1; k <= p + 1; ++k) {
      for (std::size_t j = 0; j < site.num_opens(); ++j) {
        CochainKey rk{insert_at(key.tuple, static_cast<std::size_t>(k), static_cast<int>(j)), key.q};
        for (const auto& [x, v] : sections) {
          if (!site.contains(static_cast<int>(j), x)) continue;
          out.add_unchecked(rk, x, odd(k) ? -v : v);
        }
      }
    }
  }
  return out;
}

HomCochain identity_cochain(const FamilyPtr& family) {
  HomCochain out(family, family);
  for (std::size_t i = 0; i < family->bundles.size(); ++i) {
    for (const auto& [fk, d] : family->bundles[i].dims()) {
      out.add_unchecked(CochainKey{{static_cast<int>(i)}, 0}, fk.first, fk.second,
                        Matrix::identity(family->field(), static_cast<std::size_t>(d)));
    }
  }
  return out;
}

}  // namespace twdesc
