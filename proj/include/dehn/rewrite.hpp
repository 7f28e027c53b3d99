#pragma once

#include <cstddef>
#include <string>

#include "dehn/relation.hpp"
#include "dehn/store.hpp"
#include "dehn/surface.hpp"
#include "dehn/twistword.hpp"

namespace dehn {

enum class MoveKind {
  Cancel,
  Insert,
  Comm,
  BraidLR,
  BraidRL,
  Ident,
  Subst,
  Power,
  Cyclic,
  Auto,
};

enum class Direction { Forward, Reverse };

/// One elementary step. Positions are 0-based over the flat word.
struct Move {
  MoveKind kind = MoveKind::Cancel;
  std::size_t pos = 0;
  TwistGen gen;           // Insert
  std::string name;       // Ident: identity label; Subst: relation name
  std::string via;        // Subst: source surface of the embedding
  Direction dir = Direction::Forward;
  unsigned count = 0;     // Power: exponent; Cyclic: shift; Auto: depth

  /// Step syntax as accepted by the derivation parser.
  std::string str() const;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Deletes the cancelling pair at (pos, pos + 1).
TwistWord apply_cancel(const TwistWord& w, std::size_t pos);

/// Inserts `g g^-1` before index pos (0 <= pos <= size).
TwistWord apply_insert(const TwistWord& w, std::size_t pos, const TwistGen& g);

/// Swaps the generators at pos, pos + 1 when their curves are declared
/// disjoint (or are the same curve).
TwistWord apply_comm(const TwistWord& w, std::size_t pos, const SurfaceDatum& d);

/// x y x -> y x y on an all-positive triple at pos with inter{x, y} = 1.
/// The braid relation is symmetric, so both kinds perform the same rewrite;
/// BraidLR/BraidRL only record which side of `x y x = y x y` the script read.
TwistWord apply_braid(const TwistWord& w, std::size_t pos, MoveKind direction,
                      const SurfaceDatum& d);

/// Forward: t_lhs^±1 at pos becomes the (inverted) expansion. Reverse: the
/// expansion or its inverse at pos folds back to one generator.
TwistWord apply_ident(const TwistWord& w, std::size_t pos,
                      const CurveIdentity& id, Direction dir);

/// Replaces an occurrence of one side of `rel` at pos by the other side.
/// With `via`, rel lives on via->source and is first transported into `d`.
TwistWord apply_subst(const TwistWord& w, std::size_t pos, const Relation& rel,
                      Direction dir, const EmbeddingDatum* via,
                      const RelationStore& store, const SurfaceDatum& d);

/// lhs^n = δ1^(n e1) ... δk^(n ek), the right side regrouped by commuting
/// disjoint boundary twists. Requires rel established and its right side a
/// positive word in boundary labels.
Relation apply_power(const Relation& rel, unsigned n, const SurfaceDatum& d);

/// Left side rotated left by `shift`. Sound because the right side is a
/// product of boundary twists that commute with every moved generator.
Relation apply_cyclic(const Relation& rel, std::size_t shift,
                      const SurfaceDatum& d);

/// The rotation step behind apply_cyclic, for a word known to equal the
/// product `central` of boundary twists.
TwistWord rotate_central(const TwistWord& w, std::size_t shift,
                         const TwistWord& central, const SurfaceDatum& d);

/// Applies one non-search move (everything except Auto and Power).
TwistWord apply_move(const TwistWord& w, const Move& m,
                     const RelationStore& store, const SurfaceDatum& d,
                     const TwistWord& other_side);

}  // namespace dehn
