#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dehn/corpus.hpp"
#include "dehn/intmatrix.hpp"

namespace dehn::testing {

std::filesystem::path data_dir();
Corpus shipped_corpus();

/// Outcome of one randomized property family.
struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && cases > 0; }
};

PropertyResult word_algebra(std::size_t n, std::uint64_t seed);
PropertyResult homology_preserving_moves(const Corpus& c, std::size_t n,
                                         std::uint64_t seed);
PropertyResult transvection_properties(const Corpus& c);
PropertyResult declared_intersection_identities(const Corpus& c);
PropertyResult smith_form_scrambled(std::size_t n, std::uint64_t seed);
PropertyResult smith_form_minors(std::size_t n, std::uint64_t seed);

/// Invariant factors from gcds of k x k minors.
std::vector<std::int64_t> determinantal_invariants(const IntMatrix& a);
/// Invariant factors by textbook elementary row and column operations in
/// 128-bit arithmetic, independent of the library's reduction.
std::vector<std::int64_t> elementary_invariants(const IntMatrix& a);

/// Intersection pairs the shipped proofs rely on: commutations, braids,
/// rotations past boundary twists and regrouping of boundary powers.
struct UsedPair {
  std::string surface;
  std::string x;
  std::string y;
  int value = 0;
};
std::vector<UsedPair> used_intersections(const Corpus& c, const VerifyResult& r);

}  // namespace dehn::testing
