#pragma once

#include <string>

#include "dehn/twistword.hpp"

namespace dehn {

enum class RelationStatus { Axiom, Proven, Unproven };

std::string to_string(RelationStatus s);

/// A claimed equality lhs = rhs of twist words on a named surface. By
/// convention the monodromy word sits on the left and, for relations that
/// describe fibrations, the product of boundary twists on the right.
struct Relation {
  std::string name;
  std::string surface;
  TwistWord lhs;
  TwistWord rhs;
  RelationStatus status = RelationStatus::Unproven;

  std::string str() const { return lhs.str() + " = " + rhs.str(); }
};

}  // namespace dehn
