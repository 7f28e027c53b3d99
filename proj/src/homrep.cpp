#include "dehn/homrep.hpp"

#include <array>
#include <optional>
#include <stdexcept>

#include "dehn/errors.hpp"

namespace dehn {

PairingForm PairingForm::for_surface(const SurfaceDatum& d) {
  PairingForm f{IntMatrix(d.rank(), d.rank())};
  for (int i = 0; i < d.genus; ++i) {
    auto x = static_cast<std::size_t>(2 * i), y = x + 1;
    if (y >= d.rank()) break;
    f.matrix(x, y) = 1;
    f.matrix(y, x) = -1;
  }
  return f;
}

std::int64_t PairingForm::pair(const HomClass& x, const HomClass& y) const {
  if (x.coeffs.size() != rank() || y.coeffs.size() != rank())
    throw std::invalid_argument("homology class has the wrong length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (matrix(i, j) != 0)
        s = checked_add(s, checked_mul(checked_mul(x.coeffs[i], matrix(i, j)),
                                       y.coeffs[j]));
  return s;
}

IntMatrix transvection(const HomClass& c, const PairingForm& form, int sign) {
  std::size_t n = form.rank();
  if (c.coeffs.size() != n)
    throw std::invalid_argument("homology class has the wrong length");
  // <x, c> = x^T F c, so T = I + sign * c (F c)^T.
  std::vector<std::int64_t> fc(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      fc[i] = checked_add(fc[i], checked_mul(form.matrix(i, j), c.coeffs[j]));
  IntMatrix t = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col)
      t(r, col) = checked_add(t(r, col), checked_mul(sign, checked_mul(c.coeffs[r], fc[col])));
  return t;
}

IntMatrix eval_word(const TwistWord& w, const SurfaceDatum& d) {
  auto form = PairingForm::for_surface(d);
  IntMatrix m = IntMatrix::identity(d.rank());
  for (const auto& g : w) m = m * transvection(d.class_of(g.curve), form, g.sign);
  return m;
}

bool relation_holds_in_homology(const Relation& rel, const SurfaceDatum& d) {
  return eval_word(rel.lhs, d) == eval_word(rel.rhs, d);
}

ClosedTorusRep ClosedTorusRep::standard() {
  ClosedTorusRep rep;
  PairingForm f{IntMatrix{{0, 1}, {-1, 0}}};
  rep.alpha = transvection(HomClass{{1, 0}}, f);
  rep.beta = transvection(HomClass{{0, 1}}, f);
  rep.collapse["a"] = TwistWord({{"a", 1}});
  rep.collapse["b"] = TwistWord({{"b", 1}});
  return rep;
}

namespace {

// Apply the closed-torus action of a word over {a, b} to a vector.
std::array<std::int64_t, 2> act(const ClosedTorusRep& rep, const TwistWord& w,
                                std::array<std::int64_t, 2> v) {
  IntMatrix m = closed_torus_matrix(w, rep);  // rep is the standard one
  return {checked_add(checked_mul(m(0, 0), v[0]), checked_mul(m(0, 1), v[1])),
          checked_add(checked_mul(m(1, 0), v[0]), checked_mul(m(1, 1), v[1]))};
}

// Finds g with g(a) = ±c or g(b) = ±c among short words, so that the twist
// along c collapses to g t_a g^-1 or g t_b g^-1.
std::optional<TwistWord> conjugate_for(std::array<std::int64_t, 2> c) {
  const ClosedTorusRep rep = ClosedTorusRep::standard();
  const std::array<TwistGen, 4> letters{
      TwistGen{"a", 1}, TwistGen{"b", 1}, TwistGen{"a", -1}, TwistGen{"b", -1}};
  std::vector<TwistWord> frontier{TwistWord{}};
  for (int len = 0; len <= 4; ++len) {
    for (const auto& g : frontier) {
      for (const char* core : {"a", "b"}) {
        std::array<std::int64_t, 2> base =
            core[0] == 'a' ? std::array<std::int64_t, 2>{1, 0}
                           : std::array<std::int64_t, 2>{0, 1};
        auto img = act(rep, g, base);
        if (img == c || (img[0] == -c[0] && img[1] == -c[1]))
          return reduce(g * TwistWord({{core, 1}}) * invert(g));
      }
    }
    std::vector<TwistWord> next;
    for (const auto& g : frontier)
      for (const auto& l : letters) {
        if (!g.empty() && g.gens().back().cancels(l)) continue;
        next.push_back(g * TwistWord({l}));
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

ClosedTorusRep ClosedTorusRep::for_surface(const SurfaceDatum& d) {
  if (d.genus != 1 || d.rank() < 2)
    throw std::invalid_argument("closed-torus collapse needs a genus-1 surface");
  ClosedTorusRep rep = standard();
  rep.collapse.clear();
  for (const auto& label : d.labels) {
    const auto& c = d.class_of(label).coeffs;
    std::array<std::int64_t, 2> u{c[0], c[1]};
    if (u[0] == 0 && u[1] == 0) {
      rep.collapse[label] = TwistWord{};
      continue;
    }
    auto w = conjugate_for(u);
    if (!w)
      throw std::invalid_argument("no short closed-torus collapse for '" + label + "'");
    rep.collapse[label] = *w;
  }
  return rep;
}

TwistWord ClosedTorusRep::collapse_word(const TwistWord& w) const {
  TwistWord out;
  for (const auto& g : w) {
    auto it = collapse.find(g.curve);
    if (it == collapse.end()) throw UnknownLabel(g.curve);
    out = out * (g.sign > 0 ? it->second : invert(it->second));
  }
  return out;
}

IntMatrix closed_torus_matrix(const TwistWord& w, const ClosedTorusRep& rep) {
  // Inverse of a unipotent 2x2 twist matrix T is 2I - T.
  const IntMatrix two = IntMatrix::identity(2) + IntMatrix::identity(2);
  IntMatrix m = IntMatrix::identity(2);
  for (const auto& g : rep.collapse_word(w)) {
    const IntMatrix& t = g.curve == "a" ? rep.alpha : rep.beta;
    m = m * (g.sign > 0 ? t : two - t);
  }
  return m;
}

}  // namespace dehn
