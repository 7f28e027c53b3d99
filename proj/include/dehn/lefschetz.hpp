#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dehn/errors.hpp"
#include "dehn/intmatrix.hpp"
#include "dehn/relation.hpp"
#include "dehn/surface.hpp"

namespace dehn {

class NotPositive : public Error {
 public:
  using Error::Error;
};

class BadRHS : public Error {
 public:
  using Error::Error;
};

class NotBlowdownable : public Error {
 public:
  using Error::Error;
};

/// Blowing down more than nine sections of E(1) would need a negative number
/// of blow-ups of CP2.
class KTooLarge : public Error {
 public:
  using Error::Error;
};

class UnsupportedGenus : public Error {
 public:
  using Error::Error;
};

/// Monodromy factorization: one vanishing cycle per right-handed twist.
struct Factorization {
  int fiber_genus = 1;
  std::vector<std::string> cycles;
  std::string surface;
};

struct SectionData {
  std::string boundary_label;
  int exponent = 1;
  int self_intersection = -1;
};

struct PencilReport {
  std::size_t base_points = 0;
  std::size_t singular_fibers = 0;
  std::int64_t chi_total = 0;
  std::int64_t chi_target = 0;
  std::string target;
};

/// Finitely generated abelian group Z^free_rank + sum Z/t for t in torsion.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, d1 | d2 | ...
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
};

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

/// U * A * V = D with D diagonal, d1 | d2 | ... and nonnegative, U and V
/// unimodular.
SmithForm smith_normal_form(const IntMatrix& a);

/// Reads the left side as vanishing cycles and the right side
/// d1^n1 ... dk^nk as sections of self-intersection -nj, in boundary order.
std::pair<Factorization, std::vector<SectionData>> factorization_from_relation(
    const Relation& rel, const SurfaceDatum& d);

/// 2 * (2 - 2g) + number of singular fibers.
std::int64_t euler_characteristic(const Factorization& f);

/// H1 of the total space: Z^2 (closed torus fiber) modulo the vanishing
/// cycle classes projected to the (a, b) block.
AbelianGroup h1_total_space(const Factorization& f, const SurfaceDatum& d);

PencilReport pencil_blowdown(const Factorization& f,
                             const std::vector<SectionData>& sections);

/// Everything `dehn fibration` prints.
struct FibrationReport {
  std::string relation;
  Factorization factorization;
  std::vector<SectionData> sections;
  std::int64_t chi = 0;
  AbelianGroup h1;
  std::optional<PencilReport> pencil;
  std::string pencil_error;

  std::string text() const;
  nlohmann::json to_json() const;
};

FibrationReport fibration_report(const Relation& rel, const SurfaceDatum& d);

}  // namespace dehn
