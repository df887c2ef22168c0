#include "twdesc/descent.hpp"

#include <algorithm>
#include <optional>

#include "twdesc/error.hpp"
#include "twdesc/linalg.hpp"

namespace twdesc {

namespace {

std::optional<std::pair<int, int>> degree_window(const std::vector<GradedBundle>& bs) {
  std::optional<std::pair<int, int>> w;
  for (const auto& b : bs) {
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

Matrix theta_at(const DescentDataModQ& d, int j, int i, int x, int n) {
  auto it = d.theta.find({j, i});
  if (it != d.theta.end()) return it->second.at(x, n);
  return Matrix(d.site->field(), d.p[j].dim(x, n), d.p[i].dim(x, n));
}

Matrix vartheta_at(const DescentDataModQ& d, int k, int j, int i, int x, int n) {
  auto it = d.vartheta.find({k, j, i});
  if (it != d.vartheta.end()) return it->second.at(x, n);
  return Matrix(d.site->field(), d.q[k].dim(x, n), d.p[i].dim(x, n));
}

std::string triple_name(int k, int j, int i) {
  return "(" + std::to_string(k) + "," + std::to_string(j) + "," + std::to_string(i) + ")";
}

void check_shapes(const DescentDataModQ& d) {
  const Site& site = *d.site;
  const std::size_t n = site.num_opens();
  if (d.p.size() != n || d.q.size() != n || d.tau.size() != n) {
    throw_input("descent data needs one P, Q and tau per open");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PointSet& u = site.open(static_cast<int>(i));
    if (d.p[i].open() != u || d.q[i].open() != u) throw_input("P or Q not on its open");
    if (!(d.tau[i].source() == d.q[i]) || !(d.tau[i].target() == d.p[i]) || d.tau[i].shift() != 0) {
      throw_input("tau_" + std::to_string(i) + " is not a map Q_i -> P_i");
    }
  }
  for (const auto& [ji, m] : d.theta) {
    const auto [j, i] = ji;
    const PointSet u = site.support({j, i});
    if (!(m.source() == restrict(d.p.at(i), u)) || !(m.target() == restrict(d.p.at(j), u))) {
      throw_input("theta (" + std::to_string(j) + "," + std::to_string(i) + ") has the wrong type");
    }
  }
  for (const auto& [kji, m] : d.vartheta) {
    const auto [k, j, i] = kji;
    const PointSet u = site.support({k, j, i});
    if (!(m.source() == restrict(d.p.at(i), u)) || !(m.target() == restrict(d.q.at(k), u))) {
      throw_input("vartheta " + triple_name(k, j, i) + " has the wrong type");
    }
  }
}

}  // namespace

std::vector<std::string> validate_descent_data(const DescentDataModQ& d) {
  check_shapes(d);
  std::vector<std::string> problems;
  const Site& site = *d.site;
  const auto w = degree_window(d.p);
  if (!w) return problems;
  const int num = static_cast<int>(site.num_opens());
  for (int i = 0; i < num; ++i) {
    bool ok = true;
    for (int x : site.open(i)) {
      for (int n = w->first; n <= w->second && ok; ++n) {
        ok = theta_at(d, i, i, x, n) == Matrix::identity(site.field(), d.p[i].dim(x, n));
      }
    }
    if (!ok) problems.push_back("theta (" + std::to_string(i) + "," + std::to_string(i) + ") is not the identity");
  }
  for (int k = 0; k < num; ++k) {
    for (int j = 0; j < num; ++j) {
      for (int i = 0; i < num; ++i) {
        bool ok = true;
        for (int x : site.support({k, j, i})) {
          for (int n = w->first; n <= w->second && ok; ++n) {
            Matrix r = theta_at(d, k, i, x, n) - theta_at(d, k, j, x, n) * theta_at(d, j, i, x, n);
            r -= d.tau[k].at(x, n) * vartheta_at(d, k, j, i, x, n);
            ok = r.is_zero();
          }
          if (!ok) {
            problems.push_back("cocycle modulo Q fails on " + triple_name(k, j, i) + " at point " +
                               site.point_name(x));
            break;
          }
        }
      }
    }
  }
  return problems;
}

DescentResult glue_modulo(const DescentDataModQ& d, const PartitionOfUnity& pou) {
  const Site& site = *d.site;
  if (pou.size() != site.num_opens()) throw_input("partition of unity has the wrong size");
  if (auto problems = validate_descent_data(d); !problems.empty()) throw_math(problems.front());
  const Field field = site.field();
  const PointSet all = site.all_points();
  const int num = static_cast<int>(site.num_opens());

  std::vector<GradedBundle> ext;
  for (const auto& b : d.p) ext.push_back(extend_by_zero(b, all));
  const DirectSum sum(ext);
  DescentResult out;
  out.r = sum.bundle();
  const auto w = degree_window(d.p);

  for (int i = 0; i < num; ++i) {
    FiberMaps mats;
    if (w) {
      for (int x : site.open(i)) {
        for (int n = w->first; n <= w->second; ++n) {
          Matrix m(field, d.p[i].dim(x, n), out.r.dim(x, n));
          for (int j : site.indices_at(x)) {
            const Scalar& rho = pou(j, x);
            if (rho.is_zero()) continue;
            m.set_block(0, sum.offset(j, x, n), rho * theta_at(d, i, j, x, n));
          }
          mats.emplace(FiberKey{x, n}, std::move(m));
        }
      }
    }
    out.psi.emplace_back(restrict(out.r, site.open(i)), d.p[i], 0, field, std::move(mats));
  }

  for (int j = 0; j < num; ++j) {
    for (int i = 0; i < num; ++i) {
      const PointSet u = site.support({j, i});
      if (u.empty()) continue;
      FiberMaps mats;
      if (w) {
        for (int x : u) {
          for (int n = w->first; n <= w->second; ++n) {
            Matrix m(field, d.q[j].dim(x, n), out.r.dim(x, n));
            for (int k : site.indices_at(x)) {
              const Scalar& rho = pou(k, x);
              if (rho.is_zero()) continue;
              m.set_block(0, sum.offset(k, x, n), rho * vartheta_at(d, j, i, k, x, n));
            }
            mats.emplace(FiberKey{x, n}, std::move(m));
          }
        }
      }
      out.xi.emplace(std::make_pair(j, i),
                     SheafMorphism(restrict(out.r, u), restrict(d.q[j], u), 0, field, std::move(mats)));
    }
  }

  if (!w) return out;
  for (const auto& [ji, xi] : out.xi) {
    const auto [j, i] = ji;
    for (int x : xi.source().open()) {
      for (int n = w->first; n <= w->second; ++n) {
        Matrix r = out.psi[j].at(x, n) - theta_at(d, j, i, x, n) * out.psi[i].at(x, n);
        r -= d.tau[j].at(x, n) * xi.at(x, n);
        if (!r.is_zero()) {
          throw_math("glued maps fail the descent identity on (" + std::to_string(j) + "," +
                     std::to_string(i) + ") at point " + site.point_name(x));
        }
      }
    }
  }
  for (int i = 0; i < num; ++i) {
    for (int x : site.open(i)) {
      for (int n = w->first; n <= w->second; ++n) {
        const Matrix both = hstack({out.psi[i].at(x, n), d.tau[i].at(x, n)}, field,
                                   static_cast<std::size_t>(d.p[i].dim(x, n)));
        if (rank(both) != static_cast<std::size_t>(d.p[i].dim(x, n))) {
          throw_math("glued map is not surjective modulo Q on open " + std::to_string(i) +
                     " at point " + site.point_name(x) + ", degree " + std::to_string(n));
        }
      }
    }
  }
  return out;
}

}  // namespace twdesc
