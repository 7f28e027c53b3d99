#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dehn/relation.hpp"
#include "dehn/rewrite.hpp"
#include "dehn/store.hpp"
#include "dehn/surface.hpp"
#include "dehn/twistword.hpp"

namespace dehn {

enum class Side { Lhs, Rhs };

std::string to_string(Side s);

/// One line of a proof. Moves rewrite one side of the working pair; Expect
/// asserts the current word of a side; From/Power/Cyclic build the target
/// from an established relation by certificate.
struct Step {
  enum class Kind { Move, Expect, From };
  Kind kind = Kind::Move;
  Side side = Side::Lhs;
  Move move;
  TwistWord expected;  // Expect
  std::string from;    // From
  std::size_t line = 0;
  std::string text;
};

struct DerivationScript {
  Relation target;
  std::vector<Step> steps;
  std::filesystem::path file;
  std::size_t line = 0;      // relation header
  std::size_t end_line = 0;  // qed

  /// Relations the script substitutes or starts from, sorted and unique.
  std::vector<std::string> dependencies() const;
};

/// Parses derivation files:
///   relation <name> on <surface> : <word> = <word>
///   proof
///     [lhs:|rhs:] <step>
///   qed
/// Steps: cancel <pos> | insert <pos> <gen> | comm <pos> | braid <pos> lr|rl
///   | ident <label> at <pos> fwd|rev | subst <rel> [via <surface>] at <pos>
///   fwd|rev | auto <depth> | expect <word> | from <rel> | power <n>
///   | cyclic <k>. The default side is lhs. `#` starts a comment.
std::vector<DerivationScript> parse_derivations(
    std::string_view text, const std::filesystem::path& origin = {});
std::vector<DerivationScript> load_derivations(const std::filesystem::path& path);

struct StepRecord {
  std::size_t index = 0;
  std::size_t line = 0;
  std::string text;
  Side side = Side::Lhs;
  TwistWord lhs;
  TwistWord rhs;
  bool homology_checked = false;
  std::vector<Move> expansion;  // moves found by an auto step
};

struct ProofReport {
  std::string relation;
  std::string surface;
  bool success = false;
  std::vector<StepRecord> steps;
  std::optional<std::size_t> failed_step;  // index into the script's steps
  std::size_t failed_line = 0;
  std::string failure;
  TwistWord final_lhs;
  TwistWord final_rhs;
  std::vector<std::string> deps;

  std::string text() const;
  nlohmann::json to_json() const;
};

struct CheckOptions {
  /// Assert after every move that the rewritten side keeps its homology image.
  bool checked = true;
  /// Upper bound applied to the depth of every auto step.
  unsigned auto_depth = 12;
};

/// Replays a script against the working pair (lhs, rhs) of its target and
/// accepts iff both sides agree after free reduction. Never throws for
/// script errors; they become the report's failure.
ProofReport check_derivation(const DerivationScript& script,
                             const RelationStore& store, const SurfaceDatum& d,
                             const CheckOptions& opts = {});

struct SearchOptions {
  /// Stop after this many distinct words have been visited.
  std::size_t max_nodes = 2'000'000;
};

/// Bounded bidirectional breadth-first search for a move sequence turning
/// `from` into `to`. Each frontier only takes moves that never lengthen the
/// word (cancel, comm, braid, identity folding), so a path shrinks from both
/// ends and meets in the middle; the backward half is returned inverted
/// (insertions, identity expansions).
std::optional<std::vector<Move>> bridge_gap(const TwistWord& from,
                                            const TwistWord& to,
                                            const SurfaceDatum& d,
                                            unsigned depth,
                                            const SearchOptions& opts = {});

/// Registers base^n with a power certificate and returns the new relation.
Relation verify_power_relation(const std::string& base, unsigned n,
                               RelationStore& store, const SurfaceDatum& d);

}  // namespace dehn
