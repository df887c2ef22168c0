#include "twdesc/io.hpp"

#include <algorithm>
#include <fstream>

#include "twdesc/error.hpp"

namespace twdesc::io {

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw_input(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw_input(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw_input(where + ": expected a string");
  return j.get<std::string>();
}

Scalar parse_scalar(const json& j, Field f, const std::string& where) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<long>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  throw_input(where + ": expected an integer or \"a/b\" string");
}

Matrix parse_matrix(const json& j, Field f, std::size_t rows, std::size_t cols,
                    const std::string& where) {
  if (!j.is_array()) throw_input(where + ": matrix must be an array of rows");
  if (rows == 0 || cols == 0) {
    // Empty fibers may be written as [] or as rows of empty arrays.
    for (const auto& row : j) {
      if (!row.is_array() || !row.empty()) throw_input(where + ": expected an empty matrix");
    }
    if (!j.empty() && j.size() != rows) throw_input(where + ": expected an empty matrix");
    return Matrix(f, rows, cols);
  }
  if (j.size() != rows) {
    throw_input(where + ": expected " + std::to_string(rows) + " rows, got " +
                std::to_string(j.size()));
  }
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw_input(where + ": row " + std::to_string(r) + " must have " + std::to_string(cols) +
                  " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_scalar(row[c], f, where);
  }
  return m;
}

Tuple parse_tuple(const json& j, const Site& site, const std::string& where) {
  if (!j.is_array() || j.empty()) throw_input(where + ": tuple must be a nonempty array");
  Tuple t;
  for (const auto& v : j) {
    const int i = as_int(v, where);
    if (i < 0 || i >= static_cast<int>(site.num_opens())) {
      throw_input(where + ": open index " + std::to_string(i) + " out of range");
    }
    t.push_back(i);
  }
  return t;
}

SitePtr parse_site(const json& j, Field f) {
  const std::string where = "site";
  std::vector<std::string> points;
  for (const auto& p : member(j, "points", where)) points.push_back(as_string(p, where));
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!index.emplace(points[k], static_cast<int>(k)).second) {
      throw_input(where + ": duplicate point \"" + points[k] + "\"");
    }
  }
  auto lookup = [&](const json& name) {
    const std::string s = as_string(name, where);
    const auto it = index.find(s);
    if (it == index.end()) throw_input(where + ": unknown point \"" + s + "\"");
    return it->second;
  };
  std::vector<PointSet> opens;
  for (const auto& o : member(j, "opens", where)) {
    if (!o.is_array()) throw_input(where + ": every open must be an array of points");
    PointSet s;
    for (const auto& p : o) s.push_back(lookup(p));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    opens.push_back(std::move(s));
  }
  std::optional<PartitionOfUnity> pou;
  if (j.contains("partition")) {
    const json& table = j.at("partition");
    if (!table.is_array() || table.size() != opens.size()) {
      throw_input(where + ": partition needs one row per open");
    }
    std::vector<std::vector<Scalar>> rho(opens.size(),
                                         std::vector<Scalar>(points.size(), Scalar::zero(f)));
    for (std::size_t i = 0; i < opens.size(); ++i) {
      if (!table[i].is_object()) throw_input(where + ": partition rows map points to values");
      for (const auto& [name, value] : table[i].items()) {
        rho[i][lookup(json(name))] = parse_scalar(value, f, where + ".partition");
      }
    }
    pou = PartitionOfUnity(std::move(rho));
  }
  return std::make_shared<const Site>(std::move(points), std::move(opens), f, std::move(pou));
}

GradedBundle parse_bundle(const json& j, const Site& site, const PointSet& open,
                          const std::string& where) {
  const json& window = member(j, "window", where);
  if (!window.is_array() || window.size() != 2) throw_input(where + ": window must be [lo, hi]");
  const int lo = as_int(window[0], where);
  const int hi = as_int(window[1], where);
  std::map<FiberKey, int> dims;
  const json& table = member(j, "dims", where);
  if (!table.is_object()) throw_input(where + ": dims must map points to arrays");
  for (const auto& [name, row] : table.items()) {
    const int x = site.point_index(name);
    if (!std::binary_search(open.begin(), open.end(), x)) {
      throw_input(where + ": point " + name + " is not in the open");
    }
    if (!row.is_array() || static_cast<int>(row.size()) != hi - lo + 1) {
      throw_input(where + ": dims for " + name + " must cover the window");
    }
    for (int n = lo; n <= hi; ++n) {
      const int d = as_int(row[static_cast<std::size_t>(n - lo)], where);
      if (d < 0) throw_input(where + ": negative dimension");
      if (d > 0) dims[{x, n}] = d;
    }
  }
  return GradedBundle(open, std::move(dims));
}

GlobalComplex parse_global(const json& j, const SitePtr& site, const std::string& where) {
  const Field f = site->field();
  GradedBundle b = parse_bundle(member(j, "bundle", where), *site, site->all_points(),
                                where + ".bundle");
  FiberMaps mats;
  if (j.contains("differential")) {
    for (const auto& e : j.at("differential")) {
      const std::string w = where + ".differential";
      const int x = site->point_index(as_string(member(e, "point", w), w));
      const int n = as_int(member(e, "degree", w), w);
      Matrix m = parse_matrix(member(e, "matrix", w), f, static_cast<std::size_t>(b.dim(x, n + 1)),
                              static_cast<std::size_t>(b.dim(x, n)), w);
      if (!mats.emplace(FiberKey{x, n}, std::move(m)).second) {
        throw_input(w + ": duplicate entry");
      }
    }
  }
  SheafMorphism d(b, b, 1, f, std::move(mats));
  return make_global(site, std::move(b), std::move(d));
}

TwistedComplex parse_twisted(const json& j, const SitePtr& site, const std::string& where) {
  const Field f = site->field();
  const json& list = member(j, "bundles", where);
  if (!list.is_array() || list.size() != site->num_opens()) {
    throw_input(where + ": need one bundle per open");
  }
  std::vector<GradedBundle> bundles;
  for (std::size_t i = 0; i < list.size(); ++i) {
    bundles.push_back(parse_bundle(list[i], *site, site->open(static_cast<int>(i)),
                                   where + ".bundles[" + std::to_string(i) + "]"));
  }
  FamilyPtr family = make_family(site, std::move(bundles));
  HomCochain a(family, family);
  if (j.contains("twist")) {
    for (const auto& e : j.at("twist")) {
      const std::string w = where + ".twist";
      const int k = as_int(member(e, "k", w), w);
      const Tuple t = parse_tuple(member(e, "tuple", w), *site, w);
      if (static_cast<int>(t.size()) != k + 1) throw_input(w + ": tuple length must be k + 1");
      const int x = site->point_index(as_string(member(e, "point", w), w));
      const int n = as_int(member(e, "degree", w), w);
      const int q = 1 - k;
      const auto rows = static_cast<std::size_t>(family->dim(t.front(), x, n + q));
      const auto cols = static_cast<std::size_t>(family->dim(t.back(), x, n));
      if (!site->in_support(t, x)) throw_input(w + ": point outside the support of the tuple");
      a.add(t, q, x, n, parse_matrix(member(e, "matrix", w), f, rows, cols, w));
    }
  }
  return make_twisted(std::move(family), std::move(a));
}

}  // namespace

bool Fixture::has_object(const std::string& name) const {
  return globals.count(name) != 0 || twisted.count(name) != 0;
}

TwistedComplex Fixture::twisted_view(const std::string& name) const {
  if (const auto it = twisted.find(name); it != twisted.end()) return it->second;
  if (const auto it = globals.find(name); it != globals.end()) return twist_object(it->second);
  throw_input("unknown object \"" + name + "\"");
}

FamilyPtr Fixture::family_of(const std::string& name) const {
  if (const auto it = twisted.find(name); it != twisted.end()) return it->second.family;
  if (const auto it = globals.find(name); it != globals.end()) {
    return restrict_to_cover(site, it->second.bundle);
  }
  throw_input("unknown object \"" + name + "\"");
}

std::vector<std::string> Fixture::object_names() const {
  std::vector<std::string> out;
  for (const auto& [name, e] : globals) out.push_back(name);
  for (const auto& [name, t] : twisted) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

Fixture parse_fixture(const json& j, std::optional<Field> field) {
  if (!j.is_object()) throw_input("fixture must be a JSON object");
  const int version = as_int(member(j, "format_version", "fixture"), "format_version");
  if (version != kFormatVersion) {
    throw_input("unsupported format_version " + std::to_string(version));
  }
  const Field f = field ? *field
                        : Field::parse(j.contains("field") ? as_string(j.at("field"), "field")
                                                           : std::string("q"));
  Fixture out;
  out.site = parse_site(member(j, "site", "fixture"), f);
  if (j.contains("objects")) {
    for (const auto& [name, obj] : j.at("objects").items()) {
      const std::string where = "objects." + name;
      const std::string kind = as_string(member(obj, "kind", where), where);
      if (kind == "global") {
        out.globals.emplace(name, parse_global(obj, out.site, where));
      } else if (kind == "twisted") {
        out.twisted.emplace(name, parse_twisted(obj, out.site, where));
      } else {
        throw_input(where + ": unknown kind \"" + kind + "\"");
      }
    }
  }
  if (j.contains("morphisms")) {
    for (const auto& [name, m] : j.at("morphisms").items()) {
      const std::string where = "morphisms." + name;
      MorphismEntry e;
      e.source = as_string(member(m, "source", where), where);
      e.target = as_string(member(m, "target", where), where);
      e.degree = as_int(member(m, "degree", where), where);
      for (const auto& obj : {e.source, e.target}) {
        if (!out.has_object(obj)) throw_input(where + ": unknown object \"" + obj + "\"");
      }
      const std::string kind = as_string(member(m, "kind", where), where);
      if (kind == "cochain") {
        const FamilyPtr src = out.family_of(e.source);
        const FamilyPtr tgt = out.family_of(e.target);
        HomCochain phi(src, tgt);
        for (const auto& c : member(m, "components", where)) {
          const std::string w = where + ".components";
          const Tuple t = parse_tuple(member(c, "tuple", w), *out.site, w);
          const int q = as_int(member(c, "q", w), w);
          if (static_cast<int>(t.size()) - 1 + q != e.degree) {
            throw_input(w + ": p + q must equal the morphism degree");
          }
          const int x = out.site->point_index(as_string(member(c, "point", w), w));
          const int n = as_int(member(c, "degree", w), w);
          if (!out.site->in_support(t, x)) {
            throw_input(w + ": point outside the support of the tuple");
          }
          const auto rows = static_cast<std::size_t>(tgt->dim(t.front(), x, n + q));
          const auto cols = static_cast<std::size_t>(src->dim(t.back(), x, n));
          phi.add(t, q, x, n, parse_matrix(member(c, "matrix", w), f, rows, cols, w));
        }
        e.cochain = std::move(phi);
      } else if (kind == "global") {
        if (!out.is_global(e.source) || !out.is_global(e.target)) {
          throw_input(where + ": global morphisms need global endpoints");
        }
        const GradedBundle& sb = out.globals.at(e.source).bundle;
        const GradedBundle& tb = out.globals.at(e.target).bundle;
        FiberMaps mats;
        for (const auto& c : member(m, "maps", where)) {
          const std::string w = where + ".maps";
          const int x = out.site->point_index(as_string(member(c, "point", w), w));
          const int n = as_int(member(c, "degree", w), w);
          mats[{x, n}] = parse_matrix(member(c, "matrix", w), f,
                                      static_cast<std::size_t>(tb.dim(x, n + e.degree)),
                                      static_cast<std::size_t>(sb.dim(x, n)), w);
        }
        e.global = SheafMorphism(sb, tb, e.degree, f, std::move(mats));
      } else {
        throw_input(where + ": unknown kind \"" + kind + "\"");
      }
      out.morphisms.emplace(name, std::move(e));
    }
  }
  return out;
}

Fixture read_fixture(const std::string& path, std::optional<Field> field) {
  std::ifstream in(path);
  if (!in) throw_input("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw_input(path + ": " + e.what());
  }
  try {
    return parse_fixture(j, field);
  } catch (const json::exception& e) {
    throw_input(path + ": " + e.what());
  }
}

json to_json(const Scalar& s) {
  if (s.field().is_rational()) return s.to_string();
  return std::stol(s.to_string());
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Site& site) {
  json opens = json::array();
  for (const auto& o : site.opens()) {
    json names = json::array();
    for (int x : o) names.push_back(site.point_name(x));
    opens.push_back(std::move(names));
  }
  json partition = json::array();
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    json row = json::object();
    for (int x : site.all_points()) {
      const Scalar& r = site.rho(static_cast<int>(i), x);
      if (!r.is_zero()) row[site.point_name(x)] = to_json(r);
    }
    partition.push_back(std::move(row));
  }
  return {{"points", site.point_names()}, {"opens", opens}, {"partition", partition}};
}

json to_json(const GradedBundle& b, const Site& site) {
  const auto w = b.window();
  const int lo = w ? w->first : 0;
  const int hi = w ? w->second : -1;
  json dims = json::object();
  for (int x : b.open()) {
    json row = json::array();
    for (int n = lo; n <= hi; ++n) row.push_back(b.dim(x, n));
    dims[site.point_name(x)] = std::move(row);
  }
  return {{"window", {lo, hi}}, {"dims", dims}};
}

json to_json(const GlobalComplex& e) {
  json diff = json::array();
  for (const auto& [key, m] : e.d.mats()) {
    diff.push_back({{"point", e.site->point_name(key.first)},
                    {"degree", key.second},
                    {"matrix", to_json(m)}});
  }
  return {{"kind", "global"}, {"bundle", to_json(e.bundle, *e.site)}, {"differential", diff}};
}

json to_json(const TwistedComplex& t) {
  const Site& site = *t.family->site;
  json bundles = json::array();
  for (const auto& b : t.family->bundles) bundles.push_back(to_json(b, site));
  json twist = json::array();
  for (const auto& [key, fibers] : t.a.components()) {
    for (const auto& [fk, m] : fibers) {
      twist.push_back({{"k", key.p()},
                       {"tuple", key.tuple},
                       {"point", site.point_name(fk.first)},
                       {"degree", fk.second},
                       {"matrix", to_json(m)}});
    }
  }
  return {{"kind", "twisted"}, {"bundles", bundles}, {"twist", twist}};
}

json to_json(const HomCochain& u) {
  json out = json::array();
  if (!u.source()) return out;
  const Site& site = *u.source()->site;
  for (const auto& [key, fibers] : u.components()) {
    for (const auto& [fk, m] : fibers) {
      out.push_back({{"tuple", key.tuple},
                     {"q", key.q},
                     {"point", site.point_name(fk.first)},
                     {"degree", fk.second},
                     {"matrix", to_json(m)}});
    }
  }
  return out;
}

json global_morphism_json(const SheafMorphism& f, const Site& site) {
  json maps = json::array();
  for (const auto& [key, m] : f.mats()) {
    maps.push_back(
        {{"point", site.point_name(key.first)}, {"degree", key.second}, {"matrix", to_json(m)}});
  }
  return {{"kind", "global"}, {"degree", f.shift()}, {"maps", maps}};
}

json homology_json(const HomologyTable& h, const Site& site) {
  json out = json::object();
  for (const auto& [key, dim] : h) {
    out[site.point_name(key.first)][std::to_string(key.second)] = dim;
  }
  return out;
}

json residual_json(const HomCochain& r, std::size_t max_entries) {
  const auto entries = residual_entries(r);
  json list = json::array();
  for (std::size_t k = 0; k < entries.size() && k < max_entries; ++k) {
    const auto& e = entries[k];
    list.push_back({{"tuple", e.tuple},
                    {"q", e.q},
                    {"point", r.source()->site->point_name(e.point)},
                    {"degree", e.degree}});
  }
  return {{"nonzero_entries", entries.size()}, {"entries", list}};
}

std::string residual_summary(const std::string& label, const HomCochain& r) {
  const auto entries = residual_entries(r);
  if (entries.empty()) return label + ": 0";
  return label + ": " + std::to_string(entries.size()) + " nonzero entries, first at " +
         describe(entries.front(), *r.source()->site);
}

json homology_comparison_json(const HomCochain& phi, const TwistedComplex& source,
                              const TwistedComplex& target) {
  const Site& site = *source.family->site;
  json rows = json::array();
  for (std::size_t i = 0; i < site.num_opens(); ++i) {
    const int idx = static_cast<int>(i);
    const SheafMorphism ds = local_differential(source, idx);
    const SheafMorphism dt = local_differential(target, idx);
    int lo = 0;
    int hi = -1;
    for (const auto* b : {&source.family->bundles[i], &target.family->bundles[i]}) {
      if (const auto w = b->window()) {
        if (hi < lo) {
          lo = w->first;
          hi = w->second;
        }
        lo = std::min(lo, w->first);
        hi = std::max(hi, w->second);
      }
    }
    for (int x : site.open(idx)) {
      for (int n = lo; n <= hi; ++n) {
        const InducedMap m = induced_on_homology(ds.at(x, n - 1), ds.at(x, n),
                                                 phi.at({idx}, 0, x, n), dt.at(x, n - 1),
                                                 dt.at(x, n));
        rows.push_back({{"open", idx},
                        {"point", site.point_name(x)},
                        {"degree", n},
                        {"source_dim", m.source_dim},
                        {"target_dim", m.target_dim},
                        {"induced_rank", m.rank},
                        {"iso", m.iso()}});
      }
    }
  }
  return rows;
}

json certificate_json(const GlobalizationCertificate& c, const TwistedComplex& input) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"degree", s.degree}, {"glued_rank", s.glued_rank}});
  return {{"complex", to_json(c.complex)},
          {"phi", to_json(c.phi)},
          {"intertwine_residual", residual_json(c.intertwine_residual)},
          {"mc_residual", residual_json(mc_residual(c.twisted))},
          {"homology_comparison", homology_comparison_json(c.phi, c.twisted, input)},
          {"weak_equivalence", c.weq.equivalent},
          {"steps", steps}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace twdesc::io
