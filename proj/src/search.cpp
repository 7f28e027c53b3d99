#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "dehn/derivation.hpp"
#include "dehn/errors.hpp"

namespace dehn {

namespace {

// Words are interned as strings of 16-bit codes: 2 * label index + (inverse).
using Code = std::u16string;

struct Alphabet {
  std::vector<std::string> names;
  std::map<std::string, char16_t> index;
  std::vector<std::vector<int>> inter;  // -1 when undeclared
  struct Fold {
    std::string name;
    Code exp;
    Code inv;
    char16_t label;
  };
  std::vector<Fold> folds;

  char16_t id(const std::string& c) {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    auto k = static_cast<char16_t>(names.size());
    names.push_back(c);
    index.emplace(c, k);
    return k;
  }
  Code encode(const TwistWord& w) {
    Code out;
    for (const auto& g : w)
      out.push_back(static_cast<char16_t>(2 * id(g.curve) + (g.sign < 0 ? 1 : 0)));
    return out;
  }
  TwistGen gen(char16_t c) const {
    return {names[c / 2], (c & 1) ? -1 : 1};
  }
};

struct Edge {
  Code parent;
  Move move;
  unsigned depth = 0;
};

using Visited = std::unordered_map<Code, Edge>;

// Every move that does not lengthen w, with the resulting word.
template <typename Emit>
void neighbours(const Code& w, const Alphabet& A, Emit&& emit) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    char16_t x = w[i], y = w[i + 1];
    if ((x ^ 1) == y) {
      Move m;
      m.kind = MoveKind::Cancel;
      m.pos = i;
      emit(w.substr(0, i) + w.substr(i + 2), m);
    }
    if (x != y && (x / 2 == y / 2 || A.inter[x / 2][y / 2] == 0)) {
      Code v = w;
      std::swap(v[i], v[i + 1]);
      Move m;
      m.kind = MoveKind::Comm;
      m.pos = i;
      emit(std::move(v), m);
    }
    if (i + 2 < n) {
      char16_t z = w[i + 2];
      if (!(x & 1) && !(y & 1) && x == z && x != y && A.inter[x / 2][y / 2] == 1) {
        Code v = w;
        v[i] = y;
        v[i + 1] = x;
        v[i + 2] = y;
        Move m;
        m.kind = MoveKind::BraidLR;
        m.pos = i;
        emit(std::move(v), m);
      }
    }
  }
  for (const auto& f : A.folds) {
    for (int s = 0; s < 2; ++s) {
      const Code& pat = s == 0 ? f.exp : f.inv;
      if (pat.size() > n) continue;
      for (std::size_t p = w.find(pat); p != Code::npos; p = w.find(pat, p + 1)) {
        Code v = w.substr(0, p);
        v.push_back(static_cast<char16_t>(2 * f.label + s));
        v += w.substr(p + pat.size());
        Move m;
        m.kind = MoveKind::Ident;
        m.name = f.name;
        m.pos = p;
        m.dir = Direction::Reverse;
        emit(std::move(v), m);
      }
    }
  }
}

// The move that undoes `m`, where m took `before` to some word.
Move undo(const Move& m, const Code& before, const Alphabet& A) {
  Move r = m;
  switch (m.kind) {
    case MoveKind::Cancel:
      r.kind = MoveKind::Insert;
      r.gen = A.gen(before[m.pos]);
      break;
    case MoveKind::BraidLR: r.kind = MoveKind::BraidRL; break;
    case MoveKind::Ident: r.dir = Direction::Forward; break;
    default: break;
  }
  return r;
}

std::vector<Move> forward_path(const Visited& seen, Code at) {
  std::vector<Move> out;
  for (;;) {
    const Edge& e = seen.at(at);
    if (e.move.kind == MoveKind::Auto) break;  // root marker
    out.push_back(e.move);
    at = e.parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Move> backward_path(const Visited& seen, Code at, const Alphabet& A) {
  std::vector<Move> out;
  for (;;) {
    const Edge& e = seen.at(at);
    if (e.move.kind == MoveKind::Auto) break;
    out.push_back(undo(e.move, e.parent, A));
    at = e.parent;
  }
  return out;
}

}  // namespace

std::optional<std::vector<Move>> bridge_gap(const TwistWord& from,
                                            const TwistWord& to,
                                            const SurfaceDatum& d,
                                            unsigned depth,
                                            const SearchOptions& opts) {
  Alphabet A;
  for (const auto& l : d.labels) A.id(l);
  for (const auto* w : {&from, &to})
    for (const auto& g : *w)
      if (!d.has_label(g.curve)) throw UnknownLabel(g.curve);
  Code src = A.encode(from), dst = A.encode(to);
  const std::size_t L = A.names.size();
  A.inter.assign(L, std::vector<int>(L, -1));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j)
      if (i != j)
        if (auto k = d.intersection(A.names[i], A.names[j])) A.inter[i][j] = *k;
  for (const auto& id : d.identities) {
    TwistWord e = id.expansion();
    A.folds.push_back({id.lhs, A.encode(e), A.encode(invert(e)), A.id(id.lhs)});
  }

  if (src == dst) return std::vector<Move>{};

  Move root;
  root.kind = MoveKind::Auto;
  Visited fseen{{src, {{}, root, 0}}}, bseen{{dst, {{}, root, 0}}};
  std::vector<Code> ffront{src}, bfront{dst};
  unsigned fdepth = 0, bdepth = 0;

  // Each half may use the whole budget; a meeting is accepted when the two
  // halves together fit in it. The moves are asymmetric (only shrinking or
  // neutral ones on each side), so a fixed split could miss short paths.
  while (true) {
    bool fcan = !ffront.empty() && fdepth < depth;
    bool bcan = !bfront.empty() && bdepth < depth;
    if (!fcan && !bcan) break;
    bool fwd = fcan && (!bcan || ffront.size() <= bfront.size());
    Visited& seen = fwd ? fseen : bseen;
    const Visited& other = fwd ? bseen : fseen;
    std::vector<Code>& front = fwd ? ffront : bfront;
    const unsigned level = (fwd ? fdepth : bdepth) + 1;
    std::vector<Code> next;
    std::optional<Code> meet;
    for (const Code& w : front) {
      neighbours(w, A, [&](Code v, const Move& m) {
        if (meet || seen.count(v)) return;
        seen.emplace(v, Edge{w, m, level});
        auto hit = other.find(v);
        if (hit != other.end() && hit->second.depth + level <= depth) meet = v;
        next.push_back(std::move(v));
      });
      if (meet) {
        auto path = forward_path(fseen, *meet);
        auto back = backward_path(bseen, *meet, A);
        path.insert(path.end(), back.begin(), back.end());
        return path;
      }
      if (fseen.size() + bseen.size() > opts.max_nodes) return std::nullopt;
    }
    front = std::move(next);
    (fwd ? fdepth : bdepth) = level;
  }
  return std::nullopt;
}

}  // namespace dehn
