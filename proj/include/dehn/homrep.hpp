#pragma once

#include <map>
#include <string>

#include "dehn/intmatrix.hpp"
#include "dehn/relation.hpp"
#include "dehn/surface.hpp"
#include "dehn/twistword.hpp"

namespace dehn {

/// Antisymmetric intersection pairing on the homology basis of a surface.
/// Boundary basis vectors are in its radical.
struct PairingForm {
  IntMatrix matrix;

  static PairingForm for_surface(const SurfaceDatum& d);
  std::int64_t pair(const HomClass& x, const HomClass& y) const;
  std::size_t rank() const { return matrix.rows(); }
};

/// Transvection of a right-handed twist along `c`: x -> x + <x, c> c.
/// With sign -1, the inverse x -> x - <x, c> c.
///
/// On the closed torus this gives t_a = [1 -1; 0 1], t_b = [1 0; 1 1] in the
/// basis (a, b), and trace(t_a t_b) = 1, (t_a t_b)^6 = I.
IntMatrix transvection(const HomClass& c, const PairingForm& form, int sign = 1);

/// Matrix of the word acting on H_1. The rightmost generator acts first, so
/// the result is the left-to-right product of the generator matrices.
/// Throws UnknownLabel for a curve without a class.
IntMatrix eval_word(const TwistWord& w, const SurfaceDatum& d);

/// eval(lhs) == eval(rhs). Necessary but not sufficient: boundary twists act
/// trivially, so exponents of boundary twists are invisible to this check.
bool relation_holds_in_homology(const Relation& rel, const SurfaceDatum& d);

/// Image of the mapping class group of a holed torus in SL(2, Z) after
/// capping every boundary component. Each label collapses to a word in the
/// closed-torus twists `a`, `b` (boundary-parallel and separating curves to
/// the empty word).
struct ClosedTorusRep {
  IntMatrix alpha;  // t_a
  IntMatrix beta;   // t_b
  std::map<std::string, TwistWord> collapse;

  static ClosedTorusRep standard();
  /// Collapse map derived from the projection of each class of a genus-1
  /// datum onto its (a, b) block.
  static ClosedTorusRep for_surface(const SurfaceDatum& d);

  /// Word over {a, b} obtained by replacing every label.
  TwistWord collapse_word(const TwistWord& w) const;
};

/// SL(2, Z) image of the collapsed word. Throws UnknownLabel.
IntMatrix closed_torus_matrix(const TwistWord& w, const ClosedTorusRep& rep);

}  // namespace dehn
