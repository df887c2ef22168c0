#include "twdesc/morphism_descent.hpp"

#include "twdesc/error.hpp"

namespace twdesc {

namespace {

void add_fiber(FiberMaps& mats, const FiberKey& key, const Matrix& m) {
  if (m.is_zero()) return;
  auto it = mats.find(key);
  if (it == mats.end()) {
    mats.emplace(key, m);
  } else {
    it->second += m;
  }
}

void require_zero(const HomCochain& r, const std::string& what) {
  if (r.is_zero()) return;
  throw_math(what + " (" + describe(residual_entries(r).front(), *r.source()->site) + ")");
}

}  // namespace

DescendedMorphism descend_morphism(const HomCochain& phi, const GlobalComplex& source,
                                   const GlobalComplex& target) {
  const TwistedComplex te = twist_object(source);
  const TwistedComplex tf = twist_object(target);
  if (!same_family(phi.source(), te.family) || !same_family(phi.target(), tf.family)) {
    throw_input("descend_morphism: morphism is not between the given twisted images");
  }
  const auto degrees = phi.total_degrees();
  if (degrees.size() > 1) throw_input("descend_morphism: morphism is not homogeneous");
  const int n = degrees.empty() ? 0 : *degrees.begin();
  require_zero(hom_diff(phi, te, tf), "descend_morphism: morphism is not closed");

  const Site& site = *source.site;
  const Field field = site.field();
  FiberMaps global;
  HomCochain hat(te.family, tf.family);
  for (const auto& [key, fibers] : phi.components()) {
    const int head = key.tuple.front();
    if (key.p() == 0) {
      for (const auto& [fk, m] : fibers) {
        const Scalar& rho = site.rho(head, fk.first);
        if (!rho.is_zero()) add_fiber(global, fk, rho * m);
      }
      continue;
    }
    const CochainKey tail{Tuple(key.tuple.begin() + 1, key.tuple.end()), key.q};
    for (const auto& [fk, m] : fibers) {
      const Scalar& rho = site.rho(head, fk.first);
      if (!rho.is_zero()) hat.add_unchecked(tail, fk.first, fk.second, rho * m);
    }
  }
  DescendedMorphism out{SheafMorphism(source.bundle, target.bundle, n, field, std::move(global)),
                        std::move(hat)};

  const SheafMorphism closed = global_hom_diff(out.global, source, target);
  if (!closed.is_zero()) {
    throw_math("descend_morphism: descended map is not closed at point " +
               site.point_name(closed.mats().begin()->first.first));
  }
  require_zero(phi - twist_morphism(out.global, te, tf) - hom_diff(out.homotopy, te, tf),
               "descend_morphism: homotopy identity fails");
  return out;
}

SheafMorphism descend_coboundary(const SheafMorphism& phi, const HomCochain& phi_hat0,
                                 const GlobalComplex& source, const GlobalComplex& target) {
  const TwistedComplex te = twist_object(source);
  const TwistedComplex tf = twist_object(target);
  if (!same_family(phi_hat0.source(), te.family) || !same_family(phi_hat0.target(), tf.family)) {
    throw_input("descend_coboundary: cochain is not between the given twisted images");
  }
  require_zero(twist_morphism(phi, te, tf) - hom_diff(phi_hat0, te, tf),
               "descend_coboundary: hypothesis T(phi) = d(phi_hat) fails");

  const Site& site = *source.site;
  FiberMaps mats;
  for (const auto& [key, fibers] : phi_hat0.components()) {
    if (key.p() != 0) continue;
    if (key.q != phi.shift() - 1) throw_input("descend_coboundary: cochain has the wrong degree");
    for (const auto& [fk, m] : fibers) {
      const Scalar& rho = site.rho(key.tuple.front(), fk.first);
      if (!rho.is_zero()) add_fiber(mats, fk, rho * m);
    }
  }
  SheafMorphism psi(source.bundle, target.bundle, phi.shift() - 1, site.field(), std::move(mats));
  const SheafMorphism r = global_hom_diff(psi, source, target) - phi;
  if (!r.is_zero()) {
    throw_math("descend_coboundary: d(psi) != phi at point " +
               site.point_name(r.mats().begin()->first.first));
  }
  return psi;
}

}  // namespace twdesc
