#include "twdesc/twisted.hpp"

#include "twdesc/error.hpp"

namespace twdesc {

TwistedComplex make_twisted(FamilyPtr family, HomCochain a) {
  if (!same_family(a.source(), family) || !same_family(a.target(), family)) {
    throw_input("twist is not an endomorphism cochain of the family");
  }
  for (const auto& [key, fibers] : a.components()) {
    if (key.total() != 1) {
      throw_input("twist component of total degree " + std::to_string(key.total()) +
                  " (expected 1)");
    }
  }
  return TwistedComplex{std::move(family), std::move(a)};
}

TwistedComplex zero_twisted(SitePtr site) {
  std::vector<GradedBundle> bs;
  for (std::size_t i = 0; i < site->num_opens(); ++i) {
    bs.emplace_back(site->open(static_cast<int>(i)), std::map<FiberKey, int>{});
  }
  FamilyPtr fam = make_family(std::move(site), std::move(bs));
  return TwistedComplex{fam, HomCochain(fam, fam)};
}

GlobalComplex make_global(SitePtr site, GradedBundle bundle, SheafMorphism d) {
  if (bundle.open() != site->all_points()) throw_input("global bundle must live on every point");
  if (d.shift() != 1) throw_input("differential must have degree +1");
  if (!(d.source() == bundle) || !(d.target() == bundle)) {
    throw_input("differential is not an endomorphism of the bundle");
  }
  if (!(d.field() == site->field())) throw_input("field mismatch");
  return GlobalComplex{std::move(site), std::move(bundle), std::move(d)};
}

std::optional<FiberKey> square_zero_defect(const GlobalComplex& e) {
  const SheafMorphism dd = compose(e.d, e.d);
  if (dd.is_zero()) return std::nullopt;
  return dd.mats().begin()->first;
}

void require_square_zero(const GlobalComplex& e) {
  if (auto bad = square_zero_defect(e)) {
    throw_math("d o d != 0 at point " + e.site->point_name(bad->first) + ", degree " +
               std::to_string(bad->second));
  }
}

HomCochain mc_residual(const TwistedComplex& t) { return delta_hom(t.a) + compose(t.a, t.a); }

HomCochain hom_diff(const HomCochain& phi, const HomCochain& a, const HomCochain& b) {
  HomCochain out = delta_hom(phi) + compose(b, phi);
  for (int n : phi.total_degrees()) {
    HomCochain right = compose(phi.homogeneous(n), a);
    if (odd(n)) {
      out += right;
    } else {
      out -= right;
    }
  }
  return out;
}

HomCochain hom_diff(const HomCochain& phi, const TwistedComplex& source,
                    const TwistedComplex& target) {
  if (!same_family(phi.source(), source.family) || !same_family(phi.target(), target.family)) {
    throw_input("hom_diff: cochain family mismatch");
  }
  return hom_diff(phi, source.a, target.a);
}

namespace {

FamilyPtr shifted_family(const FamilyPtr& f) {
  std::vector<GradedBundle> bs;
  for (const auto& b : f->bundles) bs.push_back(shift_degrees(b, 1));
  return make_family(f->site, std::move(bs));
}

// Copies every fiber with source degree lowered by one, negating where asked.
template <typename SignFn>
HomCochain relabel_shifted(const HomCochain& u, FamilyPtr source, FamilyPtr target, SignFn sign) {
  HomCochain out(std::move(source), std::move(target));
  for (const auto& [key, fibers] : u.components()) {
    const bool negate = sign(key);
    for (const auto& [fk, m] : fibers) {
      out.add_unchecked(key, fk.first, fk.second - 1, negate ? -m : m);
    }
  }
  return out;
}

}  // namespace

TwistedComplex shift(const TwistedComplex& t) {
  FamilyPtr fam = shifted_family(t.family);
  HomCochain a = relabel_shifted(t.a, fam, fam, [](const CochainKey& k) { return !odd(k.p()); });
  return TwistedComplex{fam, std::move(a)};
}

HomCochain shift_morphism(const HomCochain& phi) {
  return relabel_shifted(phi, shifted_family(phi.source()), shifted_family(phi.target()),
                         [](const CochainKey& k) { return odd(k.q); });
}

TwistedComplex cone(const HomCochain& phi, const TwistedComplex& source,
                    const TwistedComplex& target, ConeSigns signs) {
  if (!same_family(phi.source(), source.family) || !same_family(phi.target(), target.family)) {
    throw_input("cone: morphism does not go between the given objects");
  }
  for (const auto& [key, fibers] : phi.components()) {
    if (key.total() != 0) throw_input("cone: morphism is not of total degree 0");
  }
  const HomCochain dphi = hom_diff(phi, source, target);
  if (!dphi.is_zero()) {
    const auto bad = residual_entries(dphi).front();
    throw_math("cone: morphism is not closed (" + describe(bad, *source.family->site) + ")");
  }

  const LocalFamily& e = *source.family;
  const LocalFamily& f = *target.family;
  std::vector<GradedBundle> gs;
  for (std::size_t i = 0; i < e.bundles.size(); ++i) {
    gs.push_back(DirectSum({shift_degrees(e.bundles[i], 1), f.bundles[i]}).bundle());
  }
  FamilyPtr g = make_family(e.site, std::move(gs));
  const Field field = g->field();

  std::map<CochainKey, FiberMaps> blocks;
  // Adds m at (row, col) of the fiber of key at (x, n) in G-degrees.
  auto place = [&](const CochainKey& key, int x, int n, std::size_t row, std::size_t col,
                   const Matrix& m) {
    FiberMaps& fibers = blocks[key];
    auto it = fibers.find({x, n});
    if (it == fibers.end()) {
      Matrix z(field, static_cast<std::size_t>(g->dim(key.tuple.front(), x, n + key.q)),
               static_cast<std::size_t>(g->dim(key.tuple.back(), x, n)));
      it = fibers.emplace(FiberKey{x, n}, std::move(z)).first;
    }
    it->second.add_block(row, col, m);
  };

  for (const auto& [key, fibers] : source.a.components()) {
    const int k = key.p();
    const bool negate = signs == ConeSigns::kProofTable ? odd(k) : !odd(k);
    for (const auto& [fk, m] : fibers) place(key, fk.first, fk.second - 1, 0, 0, negate ? -m : m);
  }
  for (const auto& [key, fibers] : phi.components()) {
    const int k = key.p();
    const bool negate = signs == ConeSigns::kPrinted && odd(k);
    const CochainKey gkey{key.tuple, 1 - k};
    for (const auto& [fk, m] : fibers) {
      const int x = fk.first;
      const int mdeg = fk.second;
      const auto row = static_cast<std::size_t>(e.dim(key.tuple.front(), x, mdeg - k + 1));
      place(gkey, x, mdeg - 1, row, 0, negate ? -m : m);
    }
  }
  for (const auto& [key, fibers] : target.a.components()) {
    const int k = key.p();
    for (const auto& [fk, m] : fibers) {
      const int x = fk.first;
      const int mdeg = fk.second;
      const auto row = static_cast<std::size_t>(e.dim(key.tuple.front(), x, mdeg + 2 - k));
      const auto col = static_cast<std::size_t>(e.dim(key.tuple.back(), x, mdeg + 1));
      place(key, x, mdeg, row, col, m);
    }
  }

  HomCochain c(g, g);
  for (const auto& [key, fibers] : blocks) {
    for (const auto& [fk, m] : fibers) c.add_unchecked(key, fk.first, fk.second, m);
  }
  return TwistedComplex{g, std::move(c)};
}

TwistedComplex twist_object(const GlobalComplex& e) {
  require_square_zero(e);
  const Site& site = *e.site;
  FamilyPtr fam = restrict_to_cover(e.site, e.bundle);
  HomCochain a(fam, fam);
  const Field field = site.field();
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const int ii = static_cast<int>(i);
    for (const auto& [fk, m] : e.d.mats()) {
      if (site.contains(ii, fk.first)) a.add_unchecked(CochainKey{{ii}, 1}, fk.first, fk.second, m);
    }
    for (std::size_t j = 0; j < site.num_opens(); ++j) {
      const int jj = static_cast<int>(j);
      for (const auto& [fk, dim] : e.bundle.dims()) {
        if (!site.contains(ii, fk.first) || !site.contains(jj, fk.first)) continue;
        a.add_unchecked(CochainKey{{ii, jj}, 0}, fk.first, fk.second,
                        Matrix::identity(field, static_cast<std::size_t>(dim)));
      }
    }
  }
  return TwistedComplex{fam, std::move(a)};
}

HomCochain twist_morphism(const SheafMorphism& f, const TwistedComplex& source,
                          const TwistedComplex& target) {
  const Site& site = *source.family->site;
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const PointSet& u = site.open(static_cast<int>(i));
    if (!(restrict(f.source(), u) == source.family->bundles[i]) ||
        !(restrict(f.target(), u) == target.family->bundles[i])) {
      throw_input("twist_morphism: morphism does not match the given objects");
    }
  }
  HomCochain out(source.family, target.family);
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const int ii = static_cast<int>(i);
    for (const auto& [fk, m] : f.mats()) {
      if (site.contains(ii, fk.first)) {
        out.add_unchecked(CochainKey{{ii}, f.shift()}, fk.first, fk.second, m);
      }
    }
  }
  return out;
}

SheafMorphism global_hom_diff(const SheafMorphism& f, const GlobalComplex& source,
                              const GlobalComplex& target) {
  SheafMorphism left = compose(target.d, f);
  SheafMorphism right = compose(f, source.d);
  return odd(f.shift()) ? left + right : left - right;
}

std::vector<ResidualEntry> residual_entries(const HomCochain& r) {
  std::vector<ResidualEntry> out;
  for (const auto& [key, fibers] : r.components()) {
    for (const auto& [fk, m] : fibers) out.push_back({key.tuple, key.q, fk.first, fk.second});
  }
  return out;
}

std::string describe(const ResidualEntry& e, const Site& site) {
  std::string t = "(";
  for (std::size_t k = 0; k < e.tuple.size(); ++k) {
    if (k) t += ",";
    t += std::to_string(e.tuple[k]);
  }
  t += ")";
  return "tuple " + t + ", q=" + std::to_string(e.q) + ", point " + site.point_name(e.point) +
         ", degree " + std::to_string(e.degree);
}

}  // namespace twdesc
