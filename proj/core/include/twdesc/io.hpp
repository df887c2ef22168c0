#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "twdesc/globalize.hpp"
#include "twdesc/homology.hpp"
#include "twdesc/twisted.hpp"

namespace twdesc::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct MorphismEntry {
  std::string source;
  std::string target;
  int degree = 0;
  std::optional<HomCochain> cochain;    // kind "cochain"
  std::optional<SheafMorphism> global;  // kind "global"
};

// A parsed fixture file. Global objects also have a twisted view (their
// twisting-functor image); cochain morphisms always live on twisted views.
struct Fixture {
  SitePtr site;
  std::map<std::string, GlobalComplex> globals;
  std::map<std::string, TwistedComplex> twisted;
  std::map<std::string, MorphismEntry> morphisms;

  bool has_object(const std::string& name) const;
  bool is_global(const std::string& name) const { return globals.count(name) != 0; }
  // Throws Error(kInput) for unknown names and Error(kMath) when a global
  // object fails d o d = 0.
  TwistedComplex twisted_view(const std::string& name) const;
  FamilyPtr family_of(const std::string& name) const;
  std::vector<std::string> object_names() const;
};

// Input errors (malformed JSON, unknown names, shape mismatches) raise
// Error(kInput). `field` overrides the field recorded in the file.
Fixture parse_fixture(const json& j, std::optional<Field> field = std::nullopt);
Fixture read_fixture(const std::string& path, std::optional<Field> field = std::nullopt);

json to_json(const Scalar& s);
json to_json(const Matrix& m);
json to_json(const Site& site);
json to_json(const GradedBundle& b, const Site& site);
json to_json(const GlobalComplex& e);
json to_json(const TwistedComplex& t);
json to_json(const HomCochain& u);
json global_morphism_json(const SheafMorphism& f, const Site& site);
json homology_json(const HomologyTable& h, const Site& site);

// {"nonzero_entries": N, "entries": [first few locations]}.
json residual_json(const HomCochain& r, std::size_t max_entries = 16);
// One line: "MC residual: 0" or the count and first offending location.
std::string residual_summary(const std::string& label, const HomCochain& r);

// Full comparison rows for a degree 0 morphism between twisted complexes.
json homology_comparison_json(const HomCochain& phi, const TwistedComplex& source,
                              const TwistedComplex& target);
json certificate_json(const GlobalizationCertificate& c, const TwistedComplex& input);

// Serialized document text: two-space indent, sorted keys, trailing newline.
std::string dump(const json& j);

}  // namespace twdesc::io
