#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dehn/relation.hpp"
#include "dehn/twistword.hpp"

namespace dehn {

/// Integer coordinates of a curve's homology class over the surface basis.
struct HomClass {
  std::vector<std::int64_t> coeffs;
  friend bool operator==(const HomClass&, const HomClass&) = default;
};

/// t_lhs = conjugator * t_core * conjugator^-1.
struct CurveIdentity {
  std::string lhs;
  TwistWord conjugator;
  std::string core;

  TwistWord expansion() const {
    return conjugator * TwistWord({{core, 1}}) * invert(conjugator);
  }
};

/// Identification of the curves of a smaller figure with curves of the
/// figure that declares the embedding. Labels not listed map to the
/// same-named label of the destination when it declares one.
struct EmbeddingDatum {
  std::string source;
  std::vector<std::pair<std::string, std::string>> rename;  // as declared
  std::size_t line = 0;

  /// Image of a source label, or nullopt when it has none in `dst_labels`.
  template <typename HasLabel>
  std::optional<std::string> image(const std::string& label,
                                   const HasLabel& dst_has) const {
    for (const auto& [from, to] : rename)
      if (from == label) return to;
    if (dst_has(label)) return label;
    return std::nullopt;
  }
};

/// Combinatorial encoding of one figure: a genus-g surface with labelled
/// boundary, curve homology classes, declared geometric intersection numbers,
/// curve identities, axiom instances and embeddings of other figures.
///
/// Basis convention: the first 2*genus basis labels are symplectic pairs
/// (x_i, y_i) with <x_i, y_i> = 1; the remaining ones are boundary classes and
/// lie in the radical of the pairing.
class SurfaceDatum {
 public:
  std::string name;
  int genus = 0;
  std::vector<std::string> boundary;
  std::vector<std::string> basis;
  std::vector<std::string> labels;  // declaration order
  std::map<std::string, HomClass> classes;
  std::vector<CurveIdentity> identities;
  std::vector<Relation> axioms;
  std::vector<EmbeddingDatum> embeddings;
  std::filesystem::path origin;

  bool has_label(const std::string& label) const {
    return classes.count(label) != 0;
  }
  bool is_boundary(const std::string& label) const;

  /// Declared geometric intersection number of an unordered pair.
  std::optional<int> intersection(const std::string& a,
                                  const std::string& b) const;
  void set_intersection(const std::string& a, const std::string& b, int n);
  const std::map<std::pair<std::string, std::string>, int>& intersections()
      const {
    return inter_;
  }

  const CurveIdentity* identity(const std::string& lhs) const;
  const Relation* axiom(const std::string& name) const;
  const EmbeddingDatum* embedding(const std::string& source) const;

  const HomClass& class_of(const std::string& label) const;  // UnknownLabel
  std::size_t rank() const { return basis.size(); }

 private:
  std::map<std::pair<std::string, std::string>, int> inter_;
};

/// Parses the line-oriented surface grammar:
///   surface <name> / genus <int> / boundary <label>... / basis <label>...
///   class <label> = <±basis combination> / inter <label> <label> = <int>
///   identity <label> = <word> @ <label> / axiom <name> : <word> = <word>
///   embed <surface> : <from>-><to>, ...
/// `#` starts a comment. Throws ParseError or UnknownLabel; performs no
/// semantic validation beyond label resolution.
SurfaceDatum parse_surface(std::string_view text,
                           const std::filesystem::path& origin = {});
SurfaceDatum load_surface(const std::filesystem::path& path);

/// One named consistency check.
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::string subject;
  std::vector<Check> checks;

  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
  /// First failing check, if any.
  const Check* first_failure() const;
};

/// Checks every SurfaceDatum invariant, that each axiom holds in the homology
/// representation, and that each curve identity is homology-consistent.
ValidationReport validate_surface(const SurfaceDatum& d);

/// Checks that `e` (declared in dst) maps src labels injectively and
/// preserves declared intersection numbers and the homology pairing.
ValidationReport validate_embedding(const SurfaceDatum& src,
                                    const SurfaceDatum& dst,
                                    const EmbeddingDatum& e);

/// Image of a word under an embedding; throws InvalidRename for labels with
/// no image.
TwistWord rename_word(const TwistWord& w, const EmbeddingDatum& e,
                      const SurfaceDatum& dst);

}  // namespace dehn
