#include "twdesc/homology.hpp"

#include <algorithm>

#include "twdesc/error.hpp"
#include "twdesc/linalg.hpp"

namespace twdesc {

HomologyTable local_homology(const GradedBundle& b, const SheafMorphism& d) {
  if (!(d.source() == b) || !(d.target() == b) || d.shift() != 1) {
    throw_input("local_homology: differential does not match the bundle");
  }
  const SheafMorphism dd = compose(d, d);
  if (!dd.is_zero()) {
    const auto [x, n] = dd.mats().begin()->first;
    throw_math("d o d != 0 at point " + std::to_string(x) + ", degree " + std::to_string(n));
  }
  HomologyTable out;
  const auto window = b.window();
  if (!window) return out;
  for (int x : b.open()) {
    for (int n = window->first; n <= window->second; ++n) {
      const int z = b.dim(x, n) - static_cast<int>(rank(d.at(x, n)));
      out[{x, n}] = z - static_cast<int>(rank(d.at(x, n - 1)));
    }
  }
  return out;
}

SheafMorphism local_differential(const TwistedComplex& t, int index) {
  const GradedBundle& b = t.family->bundles.at(static_cast<std::size_t>(index));
  FiberMaps mats;
  if (const FiberMaps* f = t.a.find(CochainKey{{index}, 1})) mats = *f;
  return SheafMorphism(b, b, 1, t.family->field(), std::move(mats));
}

InducedMap induced_on_homology(const Matrix& e_in, const Matrix& e_out, const Matrix& f,
                               const Matrix& f_in, const Matrix& f_out) {
  InducedMap out;
  const Matrix ze = kernel_basis(e_out);
  const int be = static_cast<int>(rank(e_in));
  const int bf = static_cast<int>(rank(f_in));
  out.source_dim = static_cast<int>(ze.cols()) - be;
  out.target_dim = static_cast<int>(f_out.cols() - rank(f_out)) - bf;
  const Matrix combined = hstack({f * ze, f_in}, f.field(), f.rows());
  out.rank = static_cast<int>(rank(combined)) - bf;
  return out;
}

WeqVerdict is_weak_equivalence(const HomCochain& phi, const TwistedComplex& source,
                               const TwistedComplex& target) {
  for (const auto& [key, fibers] : phi.components()) {
    if (key.total() != 0) throw_input("weak equivalence test needs a degree 0 morphism");
  }
  const HomCochain dphi = hom_diff(phi, source, target);
  if (!dphi.is_zero()) {
    throw_math("morphism is not closed (" +
               describe(residual_entries(dphi).front(), *source.family->site) + ")");
  }
  WeqVerdict verdict;
  const Site& site = *source.family->site;
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const int ii = static_cast<int>(i);
    const SheafMorphism de = local_differential(source, ii);
    const SheafMorphism df = local_differential(target, ii);
    const GradedBundle& eb = source.family->bundles[i];
    const GradedBundle& fb = target.family->bundles[i];
    const auto we = eb.window();
    const auto wf = fb.window();
    if (!we && !wf) continue;
    const int lo = std::min(we ? we->first : wf->first, wf ? wf->first : we->first);
    const int hi = std::max(we ? we->second : wf->second, wf ? wf->second : we->second);
    for (int x : site.open(ii)) {
      for (int n = lo; n <= hi; ++n) {
        const InducedMap m = induced_on_homology(de.at(x, n - 1), de.at(x, n),
                                                 phi.at({ii}, 0, x, n), df.at(x, n - 1),
                                                 df.at(x, n));
        if (!m.iso()) {
          verdict.equivalent = false;
          verdict.failures.push_back({ii, x, n, m.source_dim, m.target_dim, m.rank});
        }
      }
    }
  }
  return verdict;
}

namespace {

struct Window {
  int lo;
  int hi;
};

std::optional<Window> merge(std::optional<Window> w, const GradedBundle& b) {
  const auto bw = b.window();
  if (!bw) return w;
  if (!w) return Window{bw->first, bw->second};
  return Window{std::min(w->lo, bw->first), std::max(w->hi, bw->second)};
}

// Total dimension and rank bookkeeping shared by both sides.
void accumulate_cohomology(CohomologyDims& out, int lo, int hi,
                           const std::map<int, std::size_t>& dims,
                           const std::map<int, std::size_t>& ranks) {
  auto get = [](const std::map<int, std::size_t>& m, int n) {
    auto it = m.find(n);
    return it == m.end() ? std::size_t{0} : it->second;
  };
  for (int n = lo; n <= hi; ++n) {
    out[n] += static_cast<int>(get(dims, n) - get(ranks, n) - get(ranks, n - 1));
  }
}

}  // namespace

CohomologyDims hom_complex_cohomology(const GlobalComplex& source, const GlobalComplex& target) {
  CohomologyDims out;
  const auto we = source.bundle.window();
  const auto wf = target.bundle.window();
  if (!we || !wf) return out;
  const int lo = wf->first - we->second;
  const int hi = wf->second - we->first;
  const Field field = source.site->field();

  for (int x : source.site->all_points()) {
    // Blocks of C^n at x: source degree m -> offset into the coordinate vector.
    auto blocks = [&](int n) {
      std::map<int, std::size_t> off;
      std::size_t at = 0;
      for (int m = we->first; m <= we->second; ++m) {
        const auto r = static_cast<std::size_t>(target.bundle.dim(x, m + n));
        const auto c = static_cast<std::size_t>(source.bundle.dim(x, m));
        if (r * c == 0) continue;
        off[m] = at;
        at += r * c;
      }
      return std::make_pair(off, at);
    };
    std::map<int, std::size_t> dims;
    std::map<int, std::size_t> ranks;
    for (int n = lo - 1; n <= hi; ++n) {
      const auto [from, from_dim] = blocks(n);
      const auto [to, to_dim] = blocks(n + 1);
      dims[n] = from_dim;
      Matrix d(field, to_dim, from_dim);
      for (const auto& [m, base] : from) {
        const auto rows = static_cast<std::size_t>(target.bundle.dim(x, m + n));
        const auto cols = static_cast<std::size_t>(source.bundle.dim(x, m));
        const Matrix dfm = target.d.at(x, m + n);
        const Matrix dem = source.d.at(x, m - 1);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t col = base + r * cols + c;
            Matrix unit(field, rows, cols);
            unit(r, c) = Scalar::one(field);
            auto write = [&](int block, const Matrix& m2, bool negate) {
              auto it = to.find(block);
              if (it == to.end()) {
                if (!m2.is_zero()) throw_math("hom complex term outside the degree window");
                return;
              }
              for (std::size_t i = 0; i < m2.rows(); ++i) {
                for (std::size_t j = 0; j < m2.cols(); ++j) {
                  if (m2(i, j).is_zero()) continue;
                  Scalar& slot = d(it->second + i * m2.cols() + j, col);
                  slot += negate ? -m2(i, j) : m2(i, j);
                }
              }
            };
            if (!dfm.empty()) write(m, dfm * unit, false);
            if (!dem.empty()) write(m - 1, unit * dem, !odd(n));
          }
        }
      }
      ranks[n] = rank(d);
    }
    accumulate_cohomology(out, lo, hi, dims, ranks);
  }
  return out;
}

namespace {

HomCochain at_point(const HomCochain& u, int x) {
  HomCochain out(u.source(), u.target());
  for (const auto& [key, fibers] : u.components()) {
    for (const auto& [fk, m] : fibers) {
      if (fk.first == x) out.add_unchecked(key, fk.first, fk.second, m);
    }
  }
  return out;
}

void all_tuples(const std::vector<int>& alphabet, std::size_t length, Tuple& cur,
                std::vector<Tuple>& out) {
  if (cur.size() == length) {
    out.push_back(cur);
    return;
  }
  for (int i : alphabet) {
    cur.push_back(i);
    all_tuples(alphabet, length, cur, out);
    cur.pop_back();
  }
}

}  // namespace

CohomologyDims hom_complex_cohomology(const TwistedComplex& source, const TwistedComplex& target) {
  if (!(*source.family->site == *target.family->site)) {
    throw_input("hom complex between objects on different sites");
  }
  CohomologyDims out;
  std::optional<Window> we;
  std::optional<Window> wf;
  for (const auto& b : source.family->bundles) we = merge(we, b);
  for (const auto& b : target.family->bundles) wf = merge(wf, b);
  if (!we || !wf) return out;
  const int qmin = wf->lo - we->hi;
  const int qmax = wf->hi - we->lo;
  const LocalFamily& e = *source.family;
  const LocalFamily& f = *target.family;
  const Site& site = *e.site;
  const Field field = site.field();

  struct Block {
    CochainKey key;
    int m;
    std::size_t rows;
    std::size_t cols;
    std::size_t offset;
  };

  for (int x : site.all_points()) {
    const std::vector<int>& alphabet = site.indices_at(x);
    const HomCochain ax = at_point(source.a, x);
    const HomCochain bx = at_point(target.a, x);
    std::map<std::size_t, std::vector<Tuple>> tuples_of_length;
    auto tuples = [&](std::size_t len) -> const std::vector<Tuple>& {
      auto it = tuples_of_length.find(len);
      if (it != tuples_of_length.end()) return it->second;
      std::vector<Tuple> ts;
      Tuple cur;
      all_tuples(alphabet, len, cur, ts);
      return tuples_of_length.emplace(len, std::move(ts)).first->second;
    };
    auto blocks = [&](int n) {
      std::vector<Block> bs;
      std::size_t at = 0;
      for (int p = 0; p <= n - qmin; ++p) {
        const int q = n - p;
        if (q > qmax) continue;
        for (const Tuple& t : tuples(static_cast<std::size_t>(p + 1))) {
          for (int m = we->lo; m <= we->hi; ++m) {
            const auto r = static_cast<std::size_t>(f.dim(t.front(), x, m + q));
            const auto c = static_cast<std::size_t>(e.dim(t.back(), x, m));
            if (r * c == 0) continue;
            bs.push_back({CochainKey{t, q}, m, r, c, at});
            at += r * c;
          }
        }
      }
      return std::make_pair(bs, at);
    };

    std::map<int, std::size_t> dims;
    std::map<int, std::size_t> ranks;
    for (int n = qmin - 1; n <= qmax; ++n) {
      const auto [from, from_dim] = blocks(n);
      const auto [to, to_dim] = blocks(n + 1);
      dims[n] = from_dim;
      std::map<std::pair<CochainKey, int>, const Block*> index;
      for (const Block& b : to) index.emplace(std::make_pair(b.key, b.m), &b);
      Matrix d(field, to_dim, from_dim);
      for (const Block& b : from) {
        for (std::size_t r = 0; r < b.rows; ++r) {
          for (std::size_t c = 0; c < b.cols; ++c) {
            HomCochain unit(source.family, target.family);
            Matrix u(field, b.rows, b.cols);
            u(r, c) = Scalar::one(field);
            unit.add_unchecked(b.key, x, b.m, u);
            const HomCochain image = hom_diff(unit, ax, bx);
            const std::size_t col = b.offset + r * b.cols + c;
            for (const auto& [key, fibers] : image.components()) {
              for (const auto& [fk, m] : fibers) {
                auto it = index.find({key, fk.second});
                if (it == index.end()) throw_math("hom complex term outside the degree window");
                const Block& tb = *it->second;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                  for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (!m(i, j).is_zero()) d(tb.offset + i * tb.cols + j, col) = m(i, j);
                  }
                }
              }
            }
          }
        }
      }
      ranks[n] = rank(d);
    }
    accumulate_cohomology(out, qmin, qmax, dims, ranks);
  }
  return out;
}

}  // namespace twdesc
