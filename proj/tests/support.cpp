#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dehn/errors.hpp"
#include "dehn/homrep.hpp"
#include "dehn/lefschetz.hpp"
#include "dehn/rewrite.hpp"

#ifndef DEHN_DATA_DIR
#define DEHN_DATA_DIR "data"
#endif

namespace dehn::testing {

std::filesystem::path data_dir() { return DEHN_DATA_DIR; }

Corpus shipped_corpus() { return load_corpus({data_dir()}); }

namespace {

void fail(PropertyResult& r, const std::string& why) {
  if (r.failures++ == 0) r.first_failure = why;
}

TwistWord random_word(std::mt19937_64& rng, const std::vector<std::string>& labels,
                      std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, labels.size() - 1);
  std::bernoulli_distribution neg(0.3);
  std::vector<TwistGen> g;
  for (std::size_t i = len(rng); i > 0; --i) g.push_back({labels[pick(rng)], neg(rng) ? -1 : 1});
  return TwistWord(std::move(g));
}

}  // namespace

PropertyResult word_algebra(std::size_t n, std::uint64_t seed) {
  PropertyResult r;
  r.name = "word algebra (reduce/invert/power/parse)";
  std::mt19937_64 rng(seed);
  const std::vector<std::string> labels{"a", "b", "c"};
  for (std::size_t i = 0; i < n; ++i, ++r.cases) {
    TwistWord w = random_word(rng, labels, 12), v = random_word(rng, labels, 6);
    TwistWord rw = reduce(w);
    for (std::size_t j = 0; j + 1 < rw.size(); ++j)
      if (rw[j].cancels(rw[j + 1])) fail(r, "reduce left a cancelling pair in " + rw.str());
    if (reduce(rw) != rw) fail(r, "reduce not idempotent on " + w.str());
    if (!reduce(w * invert(w)).empty()) fail(r, "w w^-1 != 1 for " + w.str());
    if (invert(invert(w)) != w) fail(r, "double inverse differs for " + w.str());
    if (reduce(invert(w * v)) != reduce(invert(v) * invert(w)))
      fail(r, "(wv)^-1 != v^-1 w^-1 for " + w.str() + " / " + v.str());
    unsigned k = static_cast<unsigned>(i % 4);
    TwistWord p = power(w, k), manual;
    for (unsigned j = 0; j < k; ++j) manual = manual * w;
    if (p != reduce(manual)) fail(r, "power mismatch for " + w.str());
    if (reduce(conjugate(w, v)) != reduce(v * w * invert(v)))
      fail(r, "conjugate mismatch for " + w.str());
    if (parse_word(w.str()) != w) fail(r, "parse(str(w)) != w for " + w.str());
  }
  return r;
}

PropertyResult homology_preserving_moves(const Corpus& c, std::size_t n,
                                         std::uint64_t seed) {
  PropertyResult r;
  r.name = "applicable rewrite moves preserve the homology image";
  std::mt19937_64 rng(seed);
  RelationStore store = axiom_store(c);
  std::vector<const SurfaceDatum*> surfaces;
  for (const auto& [name, d] : c.surfaces) surfaces.push_back(&d);
  std::size_t attempts = 0;
  while (r.cases < n && attempts < 200 * n) {
    ++attempts;
    const SurfaceDatum& d = *surfaces[rng() % surfaces.size()];
    TwistWord w = random_word(rng, d.labels, 10);
    // Seed words with material the structural moves can act on.
    if (!d.axioms.empty() && rng() % 3 == 0) {
      const auto& ax = d.axioms[rng() % d.axioms.size()];
      std::size_t at = w.empty() ? 0 : rng() % (w.size() + 1);
      w = w.replaced(at, 0, rng() % 2 ? ax.lhs : ax.rhs);
    }
    if (!d.identities.empty() && rng() % 3 == 0) {
      const auto& id = d.identities[rng() % d.identities.size()];
      std::size_t at = w.empty() ? 0 : rng() % (w.size() + 1);
      w = w.replaced(at, 0, id.expansion());
    }
    Move m;
    std::size_t pos = w.empty() ? 0 : rng() % (w.size() + 1);
    m.pos = pos;
    switch (rng() % 6) {
      case 0: m.kind = MoveKind::Cancel; break;
      case 1:
        m.kind = MoveKind::Insert;
        m.gen = {d.labels[rng() % d.labels.size()], rng() % 2 ? 1 : -1};
        break;
      case 2: m.kind = MoveKind::Comm; break;
      case 3: m.kind = rng() % 2 ? MoveKind::BraidLR : MoveKind::BraidRL; break;
      case 4:
        if (d.identities.empty()) continue;
        m.kind = MoveKind::Ident;
        m.name = d.identities[rng() % d.identities.size()].lhs;
        m.dir = rng() % 2 ? Direction::Forward : Direction::Reverse;
        break;
      default:
        if (d.axioms.empty()) continue;
        m.kind = MoveKind::Subst;
        m.name = d.axioms[rng() % d.axioms.size()].name;
        m.dir = rng() % 2 ? Direction::Forward : Direction::Reverse;
        break;
    }
    TwistWord next;
    try {
      next = apply_move(w, m, store, d, TwistWord{});
    } catch (const PreconditionFailed&) {
      continue;
    }
    ++r.cases;
    if (eval_word(next, d) != eval_word(w, d))
      fail(r, d.name + ": " + m.str() + " changed the image of " + w.str());
  }
  return r;
}

PropertyResult transvection_properties(const Corpus& c) {
  PropertyResult r;
  r.name = "transvections are symplectic and unipotent";
  for (const auto& [name, d] : c.surfaces) {
    PairingForm f = PairingForm::for_surface(d);
    const std::size_t n = d.rank();
    IntMatrix I = IntMatrix::identity(n);
    for (const auto& label : d.labels) {
      ++r.cases;
      IntMatrix t = transvection(d.class_of(label), f);
      IntMatrix ti = transvection(d.class_of(label), f, -1);
      IntMatrix nil = t - I;
      if (t.transpose() * f.matrix * t != f.matrix)
        fail(r, name + ": t_" + label + " does not preserve the pairing");
      if (!(nil * nil).is_zero()) fail(r, name + ": t_" + label + " is not unipotent");
      if (!(t * ti).is_identity()) fail(r, name + ": inverse twist of " + label);
      if (determinant(t) != 1) fail(r, name + ": det t_" + label + " != 1");
      if (d.is_boundary(label) && !t.is_identity())
        fail(r, name + ": boundary twist " + label + " acts nontrivially");
    }
  }
  return r;
}

PropertyResult declared_intersection_identities(const Corpus& c) {
  PropertyResult r;
  r.name = "braid and commutation identities under declared intersections";
  for (const auto& [name, d] : c.surfaces) {
    for (const auto& [pair, n] : d.intersections()) {
      TwistWord x({{pair.first, 1}}), y({{pair.second, 1}});
      if (n == 0) {
        ++r.cases;
        if (eval_word(x * y, d) != eval_word(y * x, d))
          fail(r, name + ": " + pair.first + "," + pair.second + " declared disjoint but do not commute");
      } else if (n == 1) {
        ++r.cases;
        if (eval_word(x * y * x, d) != eval_word(y * x * y, d))
          fail(r, name + ": " + pair.first + "," + pair.second + " violate the braid relation");
      }
    }
  }
  return r;
}

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                        int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = e(rng);
  return m;
}

using i128 = __int128;
using u128 = unsigned __int128;

// U * A * V == D, evaluated in 128 bits: legitimate transforms can be wide
// enough that the int64 product overflows even though D is small.
bool wide_product_equals(const IntMatrix& U, const IntMatrix& A, const IntMatrix& V,
                         const IntMatrix& D) {
  std::vector<std::vector<i128>> ua(U.rows(), std::vector<i128>(A.cols(), 0));
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t k = 0; k < A.rows(); ++k)
      for (std::size_t j = 0; j < A.cols(); ++j) ua[i][j] += i128(U(i, k)) * A(k, j);
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < V.cols(); ++j) {
      i128 s = 0;
      for (std::size_t k = 0; k < A.cols(); ++k) s += ua[i][k] * V(k, j);
      if (s != D(i, j)) return false;
    }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(u128(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  std::uint64_t d = n - 1;
  int s = 0;
  for (; d % 2 == 0; d /= 2) ++s;
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t det_mod(const IntMatrix& M, std::uint64_t p) {
  const std::size_t n = M.rows();
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      i128 w = i128(M(i, j)) % i128(p);
      if (w < 0) w += p;
      a[i][j] = static_cast<std::uint64_t>(w);
    }
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = det ? p - det : 0;
    }
    det = mulmod(det, a[c][c], p);
    std::uint64_t inv = powmod(a[c][c], p - 2, p);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t f = mulmod(a[r][c], inv, p);
      if (!f) continue;
      for (std::size_t j = c; j < n; ++j)
        a[r][j] = static_cast<std::uint64_t>((u128(a[r][j]) + p - mulmod(f, a[c][j], p)) % p);
    }
  }
  return det;
}

// |det M| == 1, certified by determinants modulo large primes whose product
// exceeds twice the Hadamard bound.
bool unimodular(const IntMatrix& M) {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t c = ~std::uint64_t(0); ps.size() < 8; --c)
      if (is_prime(c)) ps.push_back(c);
    return ps;
  }();
  if (!M.square()) return false;
  long double log_bound = 1;  // the factor 2
  for (std::size_t i = 0; i < M.rows(); ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < M.cols(); ++j) s += static_cast<long double>(M(i, j)) * M(i, j);
    log_bound += 0.5L * std::log2(s);
  }
  int sign = 0;
  long double covered = 0;
  for (std::uint64_t p : primes) {
    std::uint64_t d = det_mod(M, p);
    int here = d == 1 ? 1 : d == p - 1 ? -1 : 0;
    if (here == 0 || (sign != 0 && here != sign)) return false;
    sign = here;
    covered += std::log2(static_cast<long double>(p));
    if (covered > log_bound + 1) return true;
  }
  return false;
}

void check_smith(PropertyResult& r, const IntMatrix& a, const SmithForm& s,
                 const std::vector<std::int64_t>& expected) {
  if (!wide_product_equals(s.U, a, s.V, s.D)) fail(r, "U A V != D for " + a.str());
  if (!unimodular(s.U) || !unimodular(s.V)) fail(r, "transform not unimodular for " + a.str());
  std::vector<std::int64_t> diag;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j && s.D(i, j) != 0) fail(r, "D not diagonal for " + a.str());
      if (i == j) diag.push_back(s.D(i, j));
    }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) fail(r, "negative invariant factor for " + a.str());
    if (i + 1 < diag.size()) {
      if (diag[i] == 0 && diag[i + 1] != 0) fail(r, "zero before nonzero for " + a.str());
      if (diag[i] != 0 && diag[i + 1] % diag[i] != 0)
        fail(r, "divisibility chain broken for " + a.str());
    }
  }
  if (diag != expected) fail(r, "invariant factors differ from the oracle for " + a.str());
}

}  // namespace

std::vector<std::int64_t> determinantal_invariants(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
  std::vector<std::int64_t> out(r, 0);
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    // gcd of all k x k minors
    std::int64_t g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::vector<bool> rs(m, false), cs(n, false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        IntMatrix sub(k, k);
        std::size_t ri = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rs[i]) continue;
          std::size_t cj = 0;
          for (std::size_t j = 0; j < n; ++j)
            if (cs[j]) sub(ri, cj++) = a(i, j);
          ++ri;
        }
        g = std::gcd(g, determinant(sub));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (g == 0) break;  // every larger minor vanishes too
    out[k - 1] = g / prev;
    prev = g;
  }
  return out;
}

std::vector<std::int64_t> elementary_invariants(const IntMatrix& a) {
  using i128 = __int128;
  const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
  std::vector<std::vector<i128>> A(m, std::vector<i128>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a(i, j);
  auto mag = [](i128 x) { return x < 0 ? -x : x; };
  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block to (t, t)
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (bi == m || mag(A[i][j]) < mag(A[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) {
        std::vector<std::int64_t> out(r, 0);
        for (std::size_t k = 0; k < t; ++k) out[k] = static_cast<std::int64_t>(mag(A[k][k]));
        return out;
      }
      std::swap(A[bi], A[t]);
      for (auto& row : A) std::swap(row[bj], row[t]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        i128 q = A[i][t] / A[t][t];
        for (std::size_t j = t; j < n; ++j) A[i][j] -= q * A[t][j];
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        i128 q = A[t][j] / A[t][t];
        for (std::size_t i = t; i < m; ++i) A[i][j] -= q * A[i][t];
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) A[t][k] += A[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<std::int64_t> out(r, 0);
  for (std::size_t k = 0; k < r; ++k) out[k] = static_cast<std::int64_t>(mag(A[k][k]));
  return out;
}

PropertyResult smith_form_scrambled(std::size_t n, std::uint64_t seed) {
  PropertyResult r;
  r.name = "Smith normal form recovers a diagonal scrambled by elementary operations";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t, ++r.cases) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5, k = std::min(rows, cols);
    // Build a divisibility chain, then scramble with unimodular row and
    // column operations; the Smith form must give the chain back.
    std::vector<std::int64_t> chain(k, 0);
    std::int64_t cur = 1 + static_cast<std::int64_t>(rng() % 3);
    std::size_t rank = rng() % (k + 1);
    for (std::size_t i = 0; i < rank; ++i) {
      chain[i] = cur;
      cur *= 1 + static_cast<std::int64_t>(rng() % 3);
    }
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < k; ++i) a(i, i) = chain[i];
    for (int op = 0; op < 12; ++op) {
      std::int64_t mult = static_cast<std::int64_t>(rng() % 5) - 2;
      switch (rng() % 4) {
        case 0:
          if (rows > 1) {
            std::size_t x = rng() % rows, y = (x + 1 + rng() % (rows - 1)) % rows;
            a.add_row(x, y, mult);
          }
          break;
        case 1:
          if (cols > 1) {
            std::size_t x = rng() % cols, y = (x + 1 + rng() % (cols - 1)) % cols;
            a.add_col(x, y, mult);
          }
          break;
        case 2: a.swap_rows(rng() % rows, rng() % rows); break;
        default: a.negate_col(rng() % cols); break;
      }
    }
    check_smith(r, a, smith_normal_form(a), chain);
  }
  return r;
}

PropertyResult smith_form_minors(std::size_t n, std::uint64_t seed) {
  PropertyResult r;
  r.name = "Smith normal form agrees with elementary-operation and determinantal-divisor oracles";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < n; ++t, ++r.cases) {
    IntMatrix a = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, -10, 10);
    if (rng() % 4 == 0) {  // rank-deficient cases
      for (std::size_t j = 0; j < a.cols(); ++j) a(a.rows() - 1, j) = 0;
    }
    auto minors = determinantal_invariants(a);
    if (elementary_invariants(a) != minors)
      fail(r, "the two oracles disagree on " + a.str());
    check_smith(r, a, smith_normal_form(a), minors);
  }
  return r;
}

std::vector<UsedPair> used_intersections(const Corpus& c, const VerifyResult& res) {
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::vector<UsedPair> out;
  auto add = [&](const SurfaceDatum& d, std::string x, std::string y) {
    if (x == y) return;
    if (y < x) std::swap(x, y);
    if (!seen.insert({d.name, x, y}).second) return;
    auto n = d.intersection(x, y);
    out.push_back({d.name, x, y, n ? *n : -1});
  };
  for (const auto& s : c.scripts) {
    const auto& d = c.surfaces.at(s.target.surface);
    const ProofReport* rep = nullptr;
    for (const auto& p : res.proofs)
      if (p.relation == s.target.name) rep = &p;
    if (!rep || !rep->success) continue;
    TwistWord lhs = s.target.lhs, rhs = s.target.rhs;
    bool cert = false;
    for (const auto& rec : rep->steps) {
      const Step& st = s.steps[rec.index];
      const TwistWord& before = st.side == Side::Lhs ? lhs : rhs;
      const TwistWord& other = st.side == Side::Lhs ? rhs : lhs;
      if (st.kind == Step::Kind::From) {
        cert = true;
      } else if (st.kind == Step::Kind::Move) {
        const Move& m = st.move;
        if (m.kind == MoveKind::Comm) {
          add(d, before[m.pos].curve, before[m.pos + 1].curve);
        } else if (m.kind == MoveKind::BraidLR || m.kind == MoveKind::BraidRL) {
          add(d, before[m.pos].curve, before[m.pos + 1].curve);
        } else if (m.kind == MoveKind::Cyclic) {
          const TwistWord& w = cert ? lhs : before;
          const TwistWord& central = cert ? rhs : other;
          for (std::size_t i = 0; i < m.count % std::max<std::size_t>(1, w.size()); ++i)
            for (const auto& g : central) add(d, g.curve, w[i].curve);
        } else if (m.kind == MoveKind::Power) {
          for (const auto& g : rhs)
            for (const auto& h : rhs) add(d, g.curve, h.curve);
        }
      }
      lhs = rec.lhs;
      rhs = rec.rhs;
    }
  }
  return out;
}

}  // namespace dehn::testing
