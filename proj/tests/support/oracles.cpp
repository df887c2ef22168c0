#include "support/oracles.hpp"

#include <algorithm>

namespace twdesc::testing::oracle {

std::size_t rank(const Matrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
  }
  std::size_t found = 0;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t pivot = m.rows();
    for (std::size_t r = m.rows(); r-- > 0;) {
      if (!used[r] && !a[r][c].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == m.rows()) continue;
    used[pivot] = true;
    ++found;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot || a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] / a[pivot][c];
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] -= f * a[pivot][k];
    }
  }
  return found;
}

std::vector<Tuple> tuples_at(const Site& site, int x, std::size_t max_length) {
  std::vector<Tuple> out;
  std::vector<Tuple> layer{{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Tuple> next;
    for (const auto& t : layer) {
      for (int i : site.indices_at(x)) {
        Tuple e = t;
        e.push_back(i);
        next.push_back(e);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

struct Shape {
  int max_p = -1;
  std::set<int> qs;
};

Shape shape_of(const HomCochain& u) {
  Shape s;
  for (const auto& [key, f] : u.components()) {
    s.max_p = std::max(s.max_p, key.p());
    s.qs.insert(key.q);
  }
  return s;
}

std::pair<int, int> degrees_of(const LocalFamily& f) {
  int lo = 0;
  int hi = -1;
  for (const auto& b : f.bundles) {
    for (const auto& [fk, d] : b.dims()) {
      if (hi < lo) {
        lo = hi = fk.second;
      }
      lo = std::min(lo, fk.second);
      hi = std::max(hi, fk.second);
    }
  }
  return {lo, hi};
}

Tuple slice(const Tuple& t, std::size_t from, std::size_t to) {
  return Tuple(t.begin() + static_cast<std::ptrdiff_t>(from),
               t.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

HomCochain compose(const HomCochain& u, const HomCochain& v) {
  HomCochain out(v.source(), u.target());
  const Shape su = shape_of(u);
  const Shape sv = shape_of(v);
  if (su.max_p < 0 || sv.max_p < 0) return out;
  const Site& site = *u.source()->site;
  const auto [lo, hi] = degrees_of(*v.source());
  const auto max_len = static_cast<std::size_t>(su.max_p + sv.max_p + 1);
  for (int x : site.all_points()) {
    for (const Tuple& t : tuples_at(site, x, max_len)) {
      const std::size_t last = t.size() - 1;
      for (std::size_t s = 0; s <= last; ++s) {
        const int p = static_cast<int>(s);
        const int r = static_cast<int>(last - s);
        if (p > su.max_p || r > sv.max_p) continue;
        const Tuple tu = slice(t, 0, s + 1);
        const Tuple tv = slice(t, s, t.size());
        for (int q1 : su.qs) {
          for (int q2 : sv.qs) {
            for (int m = lo; m <= hi; ++m) {
              const Matrix a = u.at(tu, q1, x, m + q2);
              const Matrix b = v.at(tv, q2, x, m);
              if (a.empty() || b.empty()) continue;
              Matrix prod = a * b;
              if ((q1 * r) % 2 != 0) prod = -prod;
              out.add(t, q1 + q2, x, m, prod);
            }
          }
        }
      }
    }
  }
  return out;
}

HomCochain delta_hom(const HomCochain& u) {
  HomCochain out(u.source(), u.target());
  const Shape su = shape_of(u);
  if (su.max_p < 1) return out;
  const Site& site = *u.source()->site;
  const auto [lo, hi] = degrees_of(*u.source());
  for (int x : site.all_points()) {
    for (const Tuple& t : tuples_at(site, x, static_cast<std::size_t>(su.max_p + 2))) {
      if (t.size() < 3) continue;
      for (std::size_t k = 1; k + 1 < t.size(); ++k) {
        Tuple face = t;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
        for (int q : su.qs) {
          for (int m = lo; m <= hi; ++m) {
            Matrix a = u.at(face, q, x, m);
            if (a.empty()) continue;
            out.add(t, q, x, m, k % 2 ? -a : a);
          }
        }
      }
    }
  }
  return out;
}

HomCochain mc_residual(const TwistedComplex& t) {
  return oracle::delta_hom(t.a) + oracle::compose(t.a, t.a);
}

bool weak_equivalence(const HomCochain& phi, const TwistedComplex& source,
                      const TwistedComplex& target) {
  const Site& site = *source.family->site;
  const Field f = site.field();
  const auto [slo, shi] = degrees_of(*source.family);
  const auto [tlo, thi] = degrees_of(*target.family);
  const int lo = std::min(slo, tlo);
  const int hi = std::max(shi, thi);
  for (int i = 0; i < static_cast<int>(site.num_opens()); ++i) {
    for (int x : site.open(i)) {
      for (int n = lo; n <= hi; ++n) {
        const Matrix e_out = source.a.at({i}, 1, x, n);
        const Matrix e_in = source.a.at({i}, 1, x, n - 1);
        const Matrix f_out = target.a.at({i}, 1, x, n);
        const Matrix f_in = target.a.at({i}, 1, x, n - 1);
        const Matrix map = phi.at({i}, 0, x, n);
        const std::size_t ne = map.cols();
        const std::size_t nf = map.rows();
        const std::size_t hs = ne - rank(e_out) - rank(e_in);
        const std::size_t ht = nf - rank(f_out) - rank(f_in);
        Matrix s(f, e_out.rows() + nf, ne + f_in.cols());
        s.set_block(0, 0, e_out);
        s.set_block(e_out.rows(), 0, map);
        s.set_block(e_out.rows(), ne, f_in);
        const std::size_t r = rank(s) - rank(e_out) - rank(f_in);
        if (r != hs || r != ht) return false;
      }
    }
  }
  return true;
}

std::set<Location> support_of(const HomCochain& u) {
  std::set<Location> out;
  for (const auto& [key, fibers] : u.components()) {
    for (const auto& [fk, m] : fibers) out.emplace(key.tuple, key.q, fk.first, fk.second);
  }
  return out;
}

}  // namespace twdesc::testing::oracle
