#include "twdesc/globalize.hpp"

#include <algorithm>
#include <optional>

#include "twdesc/error.hpp"
#include "twdesc/linalg.hpp"
#include "twdesc/morphism_descent.hpp"

namespace twdesc {

namespace {

std::optional<std::pair<int, int>> family_window(const LocalFamily& f) {
  std::optional<std::pair<int, int>> w;
  for (const auto& b : f.bundles) {
    auto bw = b.window();
    if (!bw) continue;
    if (!w) {
      w = bw;
    } else {
      w->first = std::min(w->first, bw->first);
      w->second = std::max(w->second, bw->second);
    }
  }
  return w;
}

void require_zero(const HomCochain& r, const std::string& what) {
  if (r.is_zero()) return;
  throw_math(what + " (" + describe(residual_entries(r).front(), *r.source()->site) + ")");
}

// Throws unless H^n(G_i) vanishes pointwise for every n > above.
void require_acyclic_above(const TwistedComplex& g, int above) {
  const Site& site = *g.family->site;
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const int ii = static_cast<int>(i);
    const HomologyTable h = local_homology(g.family->bundles[i], local_differential(g, ii));
    for (const auto& [fk, dim] : h) {
      if (fk.second > above && dim != 0) {
        throw_math("local homology does not vanish above degree " + std::to_string(above) +
                   ": open " + std::to_string(ii) + ", point " + site.point_name(fk.first) +
                   ", degree " + std::to_string(fk.second) + " (dim " + std::to_string(dim) + ")");
      }
    }
  }
}

HomCochain rebase(const HomCochain& u, FamilyPtr source, FamilyPtr target) {
  HomCochain out(std::move(source), std::move(target));
  for (const auto& [key, fibers] : u.components()) {
    for (const auto& [fk, m] : fibers) out.add_unchecked(key, fk.first, fk.second, m);
  }
  return out;
}

// Partial global complex built degree by degree from the top.
struct Builder {
  SitePtr site;
  std::map<FiberKey, int> dims;
  FiberMaps d;
  // Candidate new differential per point, cross-checked between opens.
  std::map<int, Matrix> pending;

  GlobalComplex current() const {
    GradedBundle b(site->all_points(), dims);
    return make_global(site, b, SheafMorphism(b, b, 1, site->field(), d));
  }

  void propose(int x, int degree, const Matrix& candidate, int index) {
    auto [it, fresh] = pending.emplace(x, candidate);
    if (!fresh && !(it->second == candidate)) {
      throw_math("glued differential disagrees between opens at point " + site->point_name(x) +
                 ", degree " + std::to_string(degree) + " (open " + std::to_string(index) + ")");
    }
  }

  void commit(int degree, const std::map<int, int>& new_dims) {
    for (const auto& [x, dim] : new_dims) {
      if (dim > 0) dims[{x, degree}] = dim;
    }
    for (auto& [x, m] : pending) {
      if (!m.is_zero()) d.emplace(FiberKey{x, degree}, std::move(m));
    }
    pending.clear();
  }
};

}  // namespace

HigherGlueResult higher_glue(const TwistedComplex& f, int l) {
  const Site& site = *f.family->site;
  const Field field = site.field();
  const int num = static_cast<int>(site.num_opens());
  require_acyclic_above(f, l);

  // Kernel bases of b^{0,1}_j in degree l and their block offsets in L.
  std::vector<std::map<int, Matrix>> kernels(static_cast<std::size_t>(num));
  std::map<FiberKey, int> offset;  // (point, index) -> column offset
  std::map<FiberKey, int> dims;
  for (int x : site.all_points()) {
    int at = 0;
    for (int j : site.indices_at(x)) {
      Matrix k = kernel_basis(local_differential(f, j).at(x, l));
      offset[{x, j}] = at;
      at += static_cast<int>(k.cols());
      kernels[static_cast<std::size_t>(j)].emplace(x, std::move(k));
    }
    if (at > 0) dims[{x, l}] = at;
  }
  GradedBundle bundle(site.all_points(), dims);
  GlobalComplex lc = make_global(f.family->site, bundle, SheafMorphism(bundle, bundle, 1, field));
  TwistedComplex source = twist_object(lc);

  HomCochain psi(source.family, f.family);
  for (const auto& [key, fibers] : f.a.components()) {
    const int k = key.p() - 1;
    if (k < 0) continue;
    const int j = key.tuple.back();
    const CochainKey pk{Tuple(key.tuple.begin(), key.tuple.end() - 1), -k};
    for (const auto& [fk, m] : fibers) {
      if (fk.second != l) continue;
      const int x = fk.first;
      const Scalar& rho = site.rho(j, x);
      const Matrix& kj = kernels[static_cast<std::size_t>(j)].at(x);
      if (rho.is_zero() || kj.cols() == 0) continue;
      Matrix block = m * kj;
      block *= odd(k) ? -rho : rho;
      Matrix full(field, block.rows(), static_cast<std::size_t>(bundle.dim(x, l)));
      full.set_block(0, static_cast<std::size_t>(offset.at({x, j})), block);
      psi.add_unchecked(pk, x, l, full);
    }
  }

  require_zero(hom_diff(psi, source, f), "higher_glue: glued morphism is not closed");
  for (int i = 0; i < num; ++i) {
    const SheafMorphism b0 = local_differential(f, i);
    for (int x : site.open(i)) {
      const Matrix p0 = psi.at({i}, 0, x, l);
      const Matrix both = hstack({p0, b0.at(x, l - 1)}, field, p0.rows());
      const std::size_t cycles = kernels[static_cast<std::size_t>(i)].at(x).cols();
      if (rank(both) != cycles) {
        throw_math("higher_glue: not surjective onto cycles modulo boundaries on open " +
                   std::to_string(i) + ", point " + site.point_name(x) + ", degree " +
                   std::to_string(l));
      }
    }
  }
  return {std::move(bundle), std::move(source), std::move(psi)};
}

GlobalizationCertificate globalize(const TwistedComplex& f) {
  require_zero(mc_residual(f), "globalize: input fails the Maurer-Cartan equation");
  const SitePtr& site = f.family->site;
  Builder builder{site, {}, {}, {}};
  GlobalizationCertificate cert;

  HomCochain phi;  // source family rebuilt each step
  const auto window = family_window(*f.family);
  if (window) {
    const int top = window->second;
    const int bottom = window->first;
    for (int m = top; m >= bottom; --m) {
      const GlobalComplex e = builder.current();
      const TwistedComplex te = twist_object(e);
      phi = phi.source() ? rebase(phi, te.family, f.family) : HomCochain(te.family, f.family);
      const TwistedComplex g = cone(phi, te, f);
      require_zero(mc_residual(g), "globalize: cone fails the Maurer-Cartan equation");
      std::map<int, int> new_dims;

      // Splits a cone fiber in G-degree `deg` into its E and F rows.
      auto split = [&](const Matrix& mm, int x, int deg) {
        const auto er = static_cast<std::size_t>(e.bundle.dim(x, deg + 1));
        return std::make_pair(mm.block(0, 0, er, mm.cols()),
                              mm.block(er, 0, mm.rows() - er, mm.cols()));
      };

      if (m > bottom) {
        const HigherGlueResult hg = higher_glue(g, m);
        for (const auto& [fk, dim] : hg.bundle.dims()) new_dims[fk.first] = dim;
        for (int x : site->all_points()) {
          if (hg.bundle.dim(x, m) == 0) continue;
          for (int i : site->indices_at(x)) {
            const auto [pe, pf] = split(hg.psi.at({i}, 0, x, m), x, m);
            builder.propose(x, m, -pe, i);
          }
        }
        for (const auto& [key, fibers] : hg.psi.components()) {
          for (const auto& [fk, mm] : fibers) {
            const auto [pe, pf] = split(mm, fk.first, fk.second + key.q);
            if (key.p() > 0 && !pe.is_zero()) {
              throw_math("globalize: higher glued component leaves the target at degree " +
                         std::to_string(m));
            }
            phi.add_unchecked(key, fk.first, fk.second, pf);
          }
        }
      } else {
        require_acyclic_above(g, m);
        for (int x : site->all_points()) {
          const std::vector<int>& at = site->indices_at(x);
          const int alpha = at.front();
          const Matrix ka = kernel_basis(local_differential(g, alpha).at(x, m));
          new_dims[x] = static_cast<int>(ka.cols());
          if (ka.cols() == 0) {
            for (int i : at) {
              if (rank(local_differential(g, i).at(x, m)) !=
                  static_cast<std::size_t>(g.family->dim(i, x, m))) {
                throw_math("globalize: kernel transition not invertible at point " +
                           site->point_name(x) + ", degree " + std::to_string(m));
              }
            }
            continue;
          }
          for (int i : at) {
            const Matrix c0 = local_differential(g, i).at(x, m);
            const Matrix img = g.a.at({i, alpha}, 0, x, m) * ka;
            const std::size_t ki = c0.cols() - rank(c0);
            if (rank(img) != ka.cols() || ki != ka.cols() || !(c0 * img).is_zero()) {
              throw_math("globalize: kernel transition not invertible on open " +
                         std::to_string(i) + " at point " + site->point_name(x) + ", degree " +
                         std::to_string(m));
            }
            const auto [pe, pf] = split(img, x, m);
            builder.propose(x, m, -pe, i);
            phi.add_unchecked(CochainKey{{i}, 0}, x, m, pf);
          }
        }
      }
      builder.commit(m, new_dims);
      int glued = 0;
      for (const auto& [x, dim] : new_dims) glued += dim;
      cert.steps.push_back({m, glued});
      require_square_zero(builder.current());
    }
  }

  cert.complex = builder.current();
  require_square_zero(cert.complex);
  cert.twisted = twist_object(cert.complex);
  cert.phi = phi.source() ? rebase(phi, cert.twisted.family, f.family)
                          : HomCochain(cert.twisted.family, f.family);
  cert.intertwine_residual = hom_diff(cert.phi, cert.twisted, f);
  require_zero(cert.intertwine_residual, "globalize: glued morphism does not intertwine the twists");
  cert.weq = is_weak_equivalence(cert.phi, cert.twisted, f);
  if (!cert.weq.equivalent) {
    const WeqFailure& w = cert.weq.failures.front();
    throw_math("globalize: not a quasi-isomorphism on open " + std::to_string(w.index) +
               " at point " + site->point_name(w.point) + ", degree " + std::to_string(w.degree));
  }
  return cert;
}

WeqVerdict is_quasi_isomorphism(const SheafMorphism& f, const GlobalComplex& source,
                                const GlobalComplex& target) {
  if (f.shift() != 0) throw_input("quasi-isomorphism test needs a degree 0 map");
  const SheafMorphism r = global_hom_diff(f, source, target);
  if (!r.is_zero()) throw_math("map is not a chain map");
  WeqVerdict verdict;
  const auto we = source.bundle.window();
  const auto wf = target.bundle.window();
  if (!we && !wf) return verdict;
  const int lo = std::min(we ? we->first : wf->first, wf ? wf->first : we->first);
  const int hi = std::max(we ? we->second : wf->second, wf ? wf->second : we->second);
  for (int x : source.site->all_points()) {
    for (int n = lo; n <= hi; ++n) {
      const InducedMap m = induced_on_homology(source.d.at(x, n - 1), source.d.at(x, n),
                                               f.at(x, n), target.d.at(x, n - 1),
                                               target.d.at(x, n));
      if (!m.iso()) {
        verdict.equivalent = false;
        verdict.failures.push_back({-1, x, n, m.source_dim, m.target_dim, m.rank});
      }
    }
  }
  return verdict;
}

RoundtripWitness roundtrip(const GlobalComplex& e) {
  RoundtripWitness w;
  w.certificate = globalize(twist_object(e));
  DescendedMorphism dm = descend_morphism(w.certificate.phi, w.certificate.complex, e);
  w.global_map = std::move(dm.global);
  w.homotopy = std::move(dm.homotopy);
  w.quasi_iso = is_quasi_isomorphism(w.global_map, w.certificate.complex, e);
  return w;
}

}  // namespace twdesc
