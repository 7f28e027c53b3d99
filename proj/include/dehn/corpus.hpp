#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dehn/derivation.hpp"
#include "dehn/store.hpp"
#include "dehn/surface.hpp"

namespace dehn {

/// Surface data (*.surf) and derivation scripts (*.deriv) read from files
/// or directories. Directory contents are read in sorted path order.
struct Corpus {
  std::map<std::string, SurfaceDatum> surfaces;
  std::vector<DerivationScript> scripts;
};

/// Throws ParseError (with the file name) on malformed input and
/// DuplicateName when two files declare the same surface.
Corpus load_corpus(const std::vector<std::filesystem::path>& paths);

/// One report per surface, then one per declared embedding, by name.
std::vector<ValidationReport> validate_corpus(const Corpus& c);

/// Every surface axiom as an established relation.
RelationStore axiom_store(const Corpus& c);

struct VerifyOptions {
  CheckOptions check;
  unsigned jobs = 1;
};

struct VerifyResult {
  std::vector<ValidationReport> validation;
  std::vector<ProofReport> proofs;  // dependency order, ties by name
  RelationStore store;
  bool ok() const;
};

/// Validates the surfaces, then checks the scripts in dependency waves.
/// Scripts of one wave run concurrently against a snapshot of the store;
/// results are registered and reported in a fixed order.
VerifyResult verify_corpus(const Corpus& c, const VerifyOptions& opts = {});

}  // namespace dehn
