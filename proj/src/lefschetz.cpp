#include "dehn/lefschetz.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace dehn {

namespace {

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

// Quotient rounded to nearest, so the remainder is at most |a| / 2.
std::int64_t nearest(std::int64_t b, std::int64_t a) {
  std::int64_t q = b / a, r = b % a;
  if (2 * iabs(r) > iabs(a)) q += ((r < 0) == (a < 0)) ? 1 : -1;
  return q;
}

// Row Hermite form of A by unimodular row operations mirrored in U, with
// entries above each pivot reduced. Reduction keeps entries bounded by the
// pivots, which is what keeps U and V small.
void row_hermite(IntMatrix& A, IntMatrix& U) {
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on the column: bring the smallest entry up, reduce the others
    // by nearest multiples, repeat until only the pivot is left.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (A(i, c) != 0 && (best == m || iabs(A(i, c)) < iabs(A(best, c)))) best = i;
      if (best == m) break;
      if (best != r) {
        A.swap_rows(best, r);
        U.swap_rows(best, r);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (A(i, c) == 0) continue;
        std::int64_t q = nearest(A(i, c), A(r, c));
        A.add_row(i, r, -q);
        U.add_row(i, r, -q);
        if (A(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) {
      A.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t q = nearest(A(i, c), A(r, c));
      if (q == 0) continue;
      A.add_row(i, r, -q);
      U.add_row(i, r, -q);
    }
    ++r;
  }
}

// Rows r.. of U span the left kernel of the matrix being reduced, so they
// may be recombined freely and added to the other rows without changing
// U A V. LLL on them plus nearest-plane reduction of the other rows keeps
// U small; floating point only steers the choice of integer operations.
void reduce_kernel_rows(IntMatrix& U, std::size_t r) {
  const std::size_t m = U.rows(), n = U.cols();
  if (r >= m) return;
  using Vec = std::vector<long double>;
  auto row = [&](std::size_t i) {
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<long double>(U(i, j));
    return v;
  };
  auto dot = [](const Vec& a, const Vec& b) {
    long double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
  };
  // Gram-Schmidt of the kernel rows r..m-1.
  std::vector<Vec> star;
  auto orthogonalize = [&]() {
    star.clear();
    for (std::size_t i = r; i < m; ++i) {
      Vec v = row(i);
      for (const auto& w : star) {
        long double ww = dot(w, w);
        if (ww == 0) continue;
        long double mu = dot(row(i), w) / ww;
        for (std::size_t j = 0; j < n; ++j) v[j] -= mu * w[j];
      }
      star.push_back(v);
    }
  };
  auto mu = [&](std::size_t i, std::size_t k) {  // k indexes star
    long double ww = dot(star[k], star[k]);
    return ww == 0 ? 0.0L : dot(row(i), star[k]) / ww;
  };
  const std::size_t dim = m - r;
  orthogonalize();
  for (std::size_t k = 1; k < dim;) {
    for (std::size_t l = k; l-- > 0;) {
      auto q = static_cast<std::int64_t>(std::llround(mu(r + k, l)));
      if (q != 0) U.add_row(r + k, r + l, -q);
    }
    orthogonalize();
    long double mkk = mu(r + k, k - 1);
    if (dot(star[k], star[k]) >= (0.75L - mkk * mkk) * dot(star[k - 1], star[k - 1])) {
      ++k;
    } else {
      U.swap_rows(r + k, r + k - 1);
      orthogonalize();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = dim; l-- > 0;) {
      auto q = static_cast<std::int64_t>(std::llround(mu(i, l)));
      if (q != 0) U.add_row(i, r + l, -q);
    }
}

std::size_t nonzero_rows(const IntMatrix& A) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0) {
        r = i + 1;
        break;
      }
  return r;
}

bool monomial(const IntMatrix& A) {
  for (std::size_t i = 0; i < A.rows(); ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) nz += A(i, j) != 0;
    if (nz > 1) return false;
  }
  for (std::size_t j = 0; j < A.cols(); ++j) {
    int nz = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) nz += A(i, j) != 0;
    if (nz > 1) return false;
  }
  return true;
}

struct Reducer {
  IntMatrix A, U, V;

  // Alternate row and column Hermite forms until at most one entry per
  // row and column survives.
  void diagonalize(bool rows) {
    for (; !monomial(A); rows = !rows) {
      if (rows) {
        row_hermite(A, U);
        reduce_kernel_rows(U, nonzero_rows(A));
      } else {
        IntMatrix At = A.transpose(), Vt = V.transpose();
        row_hermite(At, Vt);
        reduce_kernel_rows(Vt, nonzero_rows(At));
        A = At.transpose();
        V = Vt.transpose();
      }
    }
  }

  void run() {
    const std::size_t m = A.rows(), n = A.cols();
    // After a merge the offending entry sits in a row, so columns go first.
    for (bool rows = true;; rows = false) {
      diagonalize(rows);
      // Move the surviving entries onto the diagonal.
      std::size_t t = 0;
      for (std::size_t i = 0; i < m && t < n; ++i) {
        std::size_t j = n;
        for (std::size_t c = 0; c < n; ++c)
          if (A(i, c) != 0) j = c;
        if (j == n) continue;
        if (i != t) {
          A.swap_rows(i, t);
          U.swap_rows(i, t);
        }
        if (j != t) {
          A.swap_cols(j, t);
          V.swap_cols(j, t);
        }
        ++t;
      }
      for (std::size_t i = 0; i < t; ++i)
        if (A(i, i) < 0) {
          A.negate_row(i);
          U.negate_row(i);
        }
      // Smallest entries first, then merge any pair breaking d1 | d2 | ...
      // by adding one row to the other and reducing again.
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
          if (A(j, j) < A(i, i)) {
            A.swap_rows(i, j);
            U.swap_rows(i, j);
            A.swap_cols(i, j);
            V.swap_cols(i, j);
          }
      bool chain = true;
      for (std::size_t i = 0; i + 1 < t && chain; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
          if (A(j, j) % A(i, i) != 0) {
            A.add_row(i, j, 1);
            U.add_row(i, j, 1);
            chain = false;
            break;
          }
      if (chain) return;
    }
  }
};

}  // namespace

std::string AbelianGroup::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (auto t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer r{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  r.run();
  return {r.U, r.A, r.V};
}

std::pair<Factorization, std::vector<SectionData>> factorization_from_relation(
    const Relation& rel, const SurfaceDatum& d) {
  if (rel.status != RelationStatus::Proven && rel.status != RelationStatus::Axiom)
    throw UnprovenRelation(rel.name);
  Factorization f;
  f.fiber_genus = d.genus;
  f.surface = d.name;
  for (const auto& g : rel.lhs) {
    if (g.sign < 0)
      throw NotPositive("left side of " + rel.name + " contains the inverse twist " +
                        g.curve + "~");
    f.cycles.push_back(g.curve);
  }
  std::map<std::string, int> exps;
  std::vector<std::string> seen;
  for (const auto& g : rel.rhs) {
    if (!d.is_boundary(g.curve))
      throw BadRHS("right side of " + rel.name + " contains non-boundary curve " + g.curve);
    if (g.sign < 0)
      throw BadRHS("right side of " + rel.name + " contains the inverse twist " +
                   g.curve + "~");
    if (!exps.count(g.curve)) seen.push_back(g.curve);
    ++exps[g.curve];
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      auto k = d.intersection(seen[i], seen[j]);
      if (!k || *k != 0)
        throw BadRHS("boundary twists " + seen[i] + "," + seen[j] +
                     " are not declared disjoint, so the right side cannot be grouped");
    }
  std::vector<SectionData> sections;
  for (const auto& b : d.boundary) {
    auto it = exps.find(b);
    if (it == exps.end())
      throw BadRHS("boundary " + b + " does not occur on the right side of " + rel.name);
    sections.push_back({b, it->second, -it->second});
  }
  return {f, sections};
}

std::int64_t euler_characteristic(const Factorization& f) {
  return 2 * (2 - 2 * static_cast<std::int64_t>(f.fiber_genus)) +
         static_cast<std::int64_t>(f.cycles.size());
}

AbelianGroup h1_total_space(const Factorization& f, const SurfaceDatum& d) {
  if (f.fiber_genus != 1 || d.genus != 1)
    throw UnsupportedGenus("H1 of the total space is only computed for torus fibers");
  IntMatrix m(2, f.cycles.size());
  for (std::size_t j = 0; j < f.cycles.size(); ++j) {
    const auto& c = d.class_of(f.cycles[j]).coeffs;
    m(0, j) = c[0];
    m(1, j) = c[1];
  }
  AbelianGroup g;
  if (f.cycles.empty()) {
    g.free_rank = 2;
    return g;
  }
  SmithForm s = smith_normal_form(m);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 2 && i < s.D.cols(); ++i) {
    auto v = s.D(i, i);
    if (v == 0) continue;
    ++nonzero;
    if (v > 1) g.torsion.push_back(v);
  }
  g.free_rank = 2 - nonzero;
  return g;
}

PencilReport pencil_blowdown(const Factorization& f,
                             const std::vector<SectionData>& sections) {
  for (const auto& s : sections)
    if (s.self_intersection != -1)
      throw NotBlowdownable("section at " + s.boundary_label + " has self-intersection " +
                            std::to_string(s.self_intersection) + ", not -1");
  const std::size_t k = sections.size();
  if (k > 9)
    throw KTooLarge(std::to_string(k) +
                    " sections cannot be blown down: CP2 # 9 CP2bar has room for at most 9");
  PencilReport r;
  r.base_points = k;
  r.singular_fibers = f.cycles.size();
  r.chi_total = euler_characteristic(f);
  r.chi_target = r.chi_total - static_cast<std::int64_t>(k);
  if (f.fiber_genus == 1 && f.cycles.size() == 12) {
    r.target = k == 9 ? "CP2" : "CP2 # " + std::to_string(9 - k) + " CP2bar";
  } else {
    r.target = "blow-down with chi = " + std::to_string(r.chi_target);
  }
  return r;
}

FibrationReport fibration_report(const Relation& rel, const SurfaceDatum& d) {
  FibrationReport r;
  r.relation = rel.name;
  auto [f, sections] = factorization_from_relation(rel, d);
  r.factorization = std::move(f);
  r.sections = std::move(sections);
  r.chi = euler_characteristic(r.factorization);
  r.h1 = h1_total_space(r.factorization, d);
  try {
    r.pencil = pencil_blowdown(r.factorization, r.sections);
  } catch (const Error& e) {
    r.pencil_error = e.what();
  }
  return r;
}

std::string FibrationReport::text() const {
  std::ostringstream os;
  os << "relation: " << relation << " on " << factorization.surface << "\n";
  os << "fiber genus: " << factorization.fiber_genus << "\n";
  os << "singular fibers: " << factorization.cycles.size() << "\n";
  os << "vanishing cycles:";
  for (const auto& c : factorization.cycles) os << " " << c;
  os << "\n";
  os << "euler characteristic: " << chi << "\n";
  os << "H1(total space): " << h1.str() << "\n";
  os << "sections: " << sections.size() << "\n";
  for (const auto& s : sections)
    os << "  " << s.boundary_label << "  exponent " << s.exponent
       << "  self-intersection " << s.self_intersection << "\n";
  if (pencil) {
    os << "pencil: " << pencil->base_points << " base points, "
       << pencil->singular_fibers << " singular fibers, chi(target) = "
       << pencil->chi_target << ", target " << pencil->target << "\n";
  } else {
    os << "pencil: none (" << pencil_error << ")\n";
  }
  return os.str();
}

nlohmann::json FibrationReport::to_json() const {
  nlohmann::json j;
  j["relation"] = relation;
  j["surface"] = factorization.surface;
  j["fiber_genus"] = factorization.fiber_genus;
  j["singular_fibers"] = factorization.cycles.size();
  j["vanishing_cycles"] = factorization.cycles;
  j["euler_characteristic"] = chi;
  j["h1"] = {{"free_rank", h1.free_rank}, {"torsion", h1.torsion}, {"text", h1.str()}};
  auto secs = nlohmann::json::array();
  for (const auto& s : sections)
    secs.push_back({{"boundary", s.boundary_label},
                    {"exponent", s.exponent},
                    {"self_intersection", s.self_intersection}});
  j["sections"] = secs;
  if (pencil) {
    j["pencil"] = {{"base_points", pencil->base_points},
                   {"singular_fibers", pencil->singular_fibers},
                   {"chi_total", pencil->chi_total},
                   {"chi_target", pencil->chi_target},
                   {"target", pencil->target}};
  } else {
    j["pencil"] = nullptr;
    j["pencil_error"] = pencil_error;
  }
  return j;
}

}  // namespace dehn
