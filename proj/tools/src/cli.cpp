#include "twdesc_cli/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "twdesc/error.hpp"
#include "twdesc/globalize.hpp"
#include "twdesc/homology.hpp"
#include "twdesc/io.hpp"
#include "twdesc/morphism_descent.hpp"

namespace twdesc::cli {

namespace {

using io::json;

struct Options {
  std::string file;
  std::string name;
  std::string in;
  std::string out;
  std::string field;
  std::string signs = "coherent";
};

// A finished command: the report and whether every asserted check held.
struct Outcome {
  json report;
  bool ok = true;
};

io::Fixture load(const Options& o) {
  const std::string path = !o.in.empty() ? o.in : o.file;
  if (path.empty()) throw_input("no input file; pass FILE or --in");
  std::optional<Field> field;
  if (!o.field.empty()) field = Field::parse(o.field);
  return io::read_fixture(path, field);
}

const io::MorphismEntry& find_morphism(const io::Fixture& fx, const std::string& name) {
  if (name.empty()) throw_input("a morphism name is required");
  const auto it = fx.morphisms.find(name);
  if (it == fx.morphisms.end()) throw_input("unknown morphism \"" + name + "\"");
  return it->second;
}

// The morphism as a cochain between the twisted views of its endpoints.
HomCochain cochain_of(const io::MorphismEntry& m,
                      const TwistedComplex& source, const TwistedComplex& target) {
  if (m.global) return twist_morphism(*m.global, source, target);
  // Rebind onto the view families so pointer identity matches downstream.
  HomCochain out(source.family, target.family);
  for (const auto& [key, fibers] : m.cochain->components()) {
    for (const auto& [fk, mat] : fibers) out.add_unchecked(key, fk.first, fk.second, mat);
  }
  return out;
}

std::vector<std::string> selected_objects(const io::Fixture& fx, const std::string& name) {
  if (name.empty()) return fx.object_names();
  if (!fx.has_object(name)) throw_input("unknown object \"" + name + "\"");
  return {name};
}

ConeSigns parse_signs(const std::string& s) {
  if (s == "coherent") return ConeSigns::kCoherent;
  if (s == "printed") return ConeSigns::kPrinted;
  if (s == "proof") return ConeSigns::kProofTable;
  throw_input("unknown sign table \"" + s + "\"");
}

json twisted_report(const TwistedComplex& t, bool& ok) {
  const HomCochain r = mc_residual(t);
  ok = ok && r.is_zero();
  return {{"object", io::to_json(t)},
          {"mc_residual", io::residual_json(r)},
          {"summary", io::residual_summary("MC residual", r)}};
}

Outcome cmd_validate(const io::Fixture& fx, const Options&) {
  Outcome o;
  const auto problems = validate_site(*fx.site);
  o.ok = problems.empty();
  o.report["site"] = {{"valid", problems.empty()}, {"problems", problems}};
  json objects = json::object();
  for (const auto& [name, e] : fx.globals) {
    json entry = {{"kind", "global"}};
    if (const auto defect = square_zero_defect(e)) {
      o.ok = false;
      entry["square_zero"] = false;
      entry["summary"] = "d o d nonzero at point " + fx.site->point_name(defect->first) +
                         ", degree " + std::to_string(defect->second);
    } else {
      const HomCochain r = mc_residual(twist_object(e));
      o.ok = o.ok && r.is_zero();
      entry["square_zero"] = true;
      entry["mc_residual"] = io::residual_json(r);
      entry["summary"] = io::residual_summary("MC residual", r);
    }
    objects[name] = std::move(entry);
  }
  for (const auto& [name, t] : fx.twisted) {
    const HomCochain r = mc_residual(t);
    o.ok = o.ok && r.is_zero();
    objects[name] = {{"kind", "twisted"},
                     {"mc_residual", io::residual_json(r)},
                     {"summary", io::residual_summary("MC residual", r)}};
  }
  o.report["objects"] = std::move(objects);
  // Closedness is reported but not asserted: non-closed morphisms are legal data.
  json morphisms = json::object();
  for (const auto& [name, m] : fx.morphisms) {
    json entry = {{"degree", m.degree}, {"source", m.source}, {"target", m.target}};
    try {
      const TwistedComplex s = fx.twisted_view(m.source);
      const TwistedComplex t = fx.twisted_view(m.target);
      const HomCochain r = hom_diff(cochain_of(m, s, t), s, t);
      entry["closed"] = r.is_zero();
      entry["differential"] = io::residual_json(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMath) throw;
      entry["closed"] = nullptr;
      entry["note"] = e.what();
    }
    morphisms[name] = std::move(entry);
  }
  o.report["morphisms"] = std::move(morphisms);
  return o;
}

Outcome cmd_homology(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  json objects = json::object();
  for (const auto& name : selected_objects(fx, opt.name)) {
    if (fx.is_global(name)) {
      const GlobalComplex& e = fx.globals.at(name);
      objects[name] = {{"kind", "global"},
                       {"homology", io::homology_json(local_homology(e.bundle, e.d), *fx.site)}};
    } else {
      const TwistedComplex& t = fx.twisted.at(name);
      json per_open = json::array();
      for (std::size_t i = 0; i < fx.site->num_opens(); ++i) {
        const int idx = static_cast<int>(i);
        per_open.push_back(io::homology_json(
            local_homology(t.family->bundles[i], local_differential(t, idx)), *fx.site));
      }
      objects[name] = {{"kind", "twisted"}, {"homology", per_open}};
    }
  }
  o.report["objects"] = std::move(objects);
  return o;
}

Outcome cmd_weq(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  const auto& m = find_morphism(fx, opt.name);
  const TwistedComplex s = fx.twisted_view(m.source);
  const TwistedComplex t = fx.twisted_view(m.target);
  const HomCochain phi = cochain_of(m, s, t);
  const WeqVerdict v = is_weak_equivalence(phi, s, t);
  o.ok = v.equivalent;
  o.report["morphism"] = opt.name;
  o.report["weak_equivalence"] = v.equivalent;
  o.report["homology_comparison"] = io::homology_comparison_json(phi, s, t);
  return o;
}

Outcome cmd_cone(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  const auto& m = find_morphism(fx, opt.name);
  const TwistedComplex s = fx.twisted_view(m.source);
  const TwistedComplex t = fx.twisted_view(m.target);
  const TwistedComplex c = cone(cochain_of(m, s, t), s, t, parse_signs(opt.signs));
  o.report["morphism"] = opt.name;
  o.report["signs"] = opt.signs;
  o.report.update(twisted_report(c, o.ok));
  return o;
}

Outcome cmd_shift(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  if (opt.name.empty()) throw_input("an object name is required");
  o.report["source"] = opt.name;
  o.report.update(twisted_report(shift(fx.twisted_view(opt.name)), o.ok));
  return o;
}

Outcome cmd_twist(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  if (opt.name.empty()) throw_input("an object name is required");
  if (!fx.is_global(opt.name)) throw_input("\"" + opt.name + "\" is not a global object");
  o.report["source"] = opt.name;
  o.report.update(twisted_report(twist_object(fx.globals.at(opt.name)), o.ok));
  return o;
}

Outcome cmd_globalize(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  json certs = json::object();
  for (const auto& name : selected_objects(fx, opt.name)) {
    const TwistedComplex input = fx.twisted_view(name);
    const GlobalizationCertificate c = globalize(input);
    o.ok = o.ok && c.intertwine_residual.is_zero() && c.weq.equivalent;
    certs[name] = io::certificate_json(c, input);
  }
  o.report["certificates"] = std::move(certs);
  return o;
}

Outcome cmd_descend(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  const auto& m = find_morphism(fx, opt.name);
  if (!fx.is_global(m.source) || !fx.is_global(m.target)) {
    throw_input("descend-morphism needs a morphism between global objects");
  }
  const GlobalComplex& e = fx.globals.at(m.source);
  const GlobalComplex& f = fx.globals.at(m.target);
  const TwistedComplex te = twist_object(e);
  const TwistedComplex tf = twist_object(f);
  const HomCochain phi = cochain_of(m, te, tf);
  const DescendedMorphism d = descend_morphism(phi, e, f);
  const HomCochain identity =
      phi - twist_morphism(d.global, te, tf) - hom_diff(d.homotopy, te, tf);
  const SheafMorphism closed = global_hom_diff(d.global, e, f);
  o.ok = identity.is_zero() && closed.is_zero();
  o.report["morphism"] = opt.name;
  o.report["global"] = io::global_morphism_json(d.global, *fx.site);
  o.report["homotopy"] = io::to_json(d.homotopy);
  o.report["identity_residual"] = io::residual_json(identity);
  o.report["global_closed"] = closed.is_zero();
  return o;
}

Outcome cmd_roundtrip(const io::Fixture& fx, const Options& opt) {
  Outcome o;
  json results = json::object();
  std::vector<std::string> names;
  if (opt.name.empty()) {
    for (const auto& [name, e] : fx.globals) names.push_back(name);
  } else {
    if (!fx.is_global(opt.name)) throw_input("\"" + opt.name + "\" is not a global object");
    names.push_back(opt.name);
  }
  for (const auto& name : names) {
    const GlobalComplex& e = fx.globals.at(name);
    const RoundtripWitness w = roundtrip(e);
    o.ok = o.ok && w.quasi_iso.equivalent && w.certificate.weq.equivalent;
    results[name] = {{"certificate", io::certificate_json(w.certificate, twist_object(e))},
                     {"global_map", io::global_morphism_json(w.global_map, *fx.site)},
                     {"homotopy", io::to_json(w.homotopy)},
                     {"quasi_isomorphism", w.quasi_iso.equivalent}};
  }
  o.report["roundtrips"] = std::move(results);
  return o;
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw_input("cannot write " + opt.out);
  file << text;
}

void diagnose(std::ostream& err, const std::string& kind, const std::string& what) {
  err << io::dump({{"error", what}, {"kind", kind}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Handler = std::function<Outcome(const io::Fixture&, const Options&)>;
  struct Command {
    const char* name;
    const char* help;
    const char* arg;
    Handler handler;
  };
  const std::vector<Command> commands = {
      {"validate", "Check the site and every Maurer-Cartan residual", nullptr, cmd_validate},
      {"homology", "Pointwise homology of the objects", "OBJECT", cmd_homology},
      {"weq", "Test a degree 0 morphism for weak equivalence", "PHI", cmd_weq},
      {"cone", "Mapping cone of a closed degree 0 morphism", "PHI", cmd_cone},
      {"shift", "Shift an object by one", "OBJECT", cmd_shift},
      {"twist", "Twisting functor image of a global object", "OBJECT", cmd_twist},
      {"globalize", "Globalize objects with a weak equivalence certificate", "OBJECT",
       cmd_globalize},
      {"descend-morphism", "Descend a closed morphism between global objects", "PHI",
       cmd_descend},
      {"roundtrip", "Globalize the image of a global object and map back", "OBJECT",
       cmd_roundtrip},
  };

  CLI::App app{"Twisted complexes over a finite cover"};
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, const Command*> by_app;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", opt.file, "Fixture file");
    if (c.arg != nullptr) sub->add_option("name", opt.name, c.arg);
    sub->add_option("--in", opt.in, "Fixture file (alternative to the positional)");
    sub->add_option("--out", opt.out, "Write the report here instead of stdout");
    sub->add_option("--field", opt.field, "Coefficient field: q or fp:<prime>");
    if (std::string(c.name) == "cone") {
      sub->add_option("--signs", opt.signs, "Cone sign table: coherent, printed or proof");
    }
    by_app[c.name] = &c;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const Command* command = nullptr;
  for (const auto* sub : app.get_subcommands()) command = by_app.at(sub->get_name());

  json report = {{"command", command->name}, {"format_version", io::kFormatVersion}};
  try {
    const io::Fixture fx = load(opt);
    report["field"] = fx.site->field().to_string();
    Outcome o = command->handler(fx, opt);
    report.update(o.report);
    report["status"] = o.ok ? "ok" : "failed";
    emit(io::dump(report), opt, out);
    return o.ok ? kExitOk : kExitMath;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInput) {
      diagnose(err, "input", e.what());
      return kExitInput;
    }
    report["status"] = "failed";
    report["error"] = e.what();
    try {
      emit(io::dump(report), opt, out);
    } catch (const Error& io_error) {
      diagnose(err, "input", io_error.what());
      return kExitInput;
    }
    diagnose(err, "math", e.what());
    return kExitMath;
  } catch (const std::exception& e) {
    diagnose(err, "input", e.what());
    return kExitInput;
  }
}

}  // namespace twdesc::cli
