#include "dehn/rewrite.hpp"

#include <map>

#include "dehn/errors.hpp"

namespace dehn {

namespace {

std::string gen_str(const TwistGen& g) {
  return g.curve + (g.sign < 0 ? "~" : "");
}

std::string at(std::size_t pos) { return " at position " + std::to_string(pos); }

void need_span(const TwistWord& w, std::size_t pos, std::size_t len,
               const char* what) {
  if (pos + len > w.size() || pos > w.size())
    throw PreconditionFailed(std::string(what) + at(pos) +
                             ": span exceeds word of length " +
                             std::to_string(w.size()));
}

bool boundary_only(const TwistWord& w, const SurfaceDatum& d) {
  for (const auto& g : w)
    if (!d.is_boundary(g.curve)) return false;
  return true;
}

}  // namespace

std::string Move::str() const {
  auto dir_s = dir == Direction::Forward ? "fwd" : "rev";
  switch (kind) {
    case MoveKind::Cancel: return "cancel " + std::to_string(pos);
    case MoveKind::Insert: return "insert " + std::to_string(pos) + " " + gen_str(gen);
    case MoveKind::Comm: return "comm " + std::to_string(pos);
    case MoveKind::BraidLR: return "braid " + std::to_string(pos) + " lr";
    case MoveKind::BraidRL: return "braid " + std::to_string(pos) + " rl";
    case MoveKind::Ident:
      return "ident " + name + " at " + std::to_string(pos) + " " + dir_s;
    case MoveKind::Subst:
      return "subst " + name + (via.empty() ? "" : " via " + via) + " at " +
             std::to_string(pos) + " " + dir_s;
    case MoveKind::Power: return "power " + std::to_string(count);
    case MoveKind::Cyclic: return "cyclic " + std::to_string(count);
    case MoveKind::Auto: return "auto " + std::to_string(count);
  }
  return "?";
}

TwistWord apply_cancel(const TwistWord& w, std::size_t pos) {
  need_span(w, pos, 2, "cancel");
  if (!w[pos].cancels(w[pos + 1]))
    throw PreconditionFailed("cancel" + at(pos) + ": " + gen_str(w[pos]) + " " +
                             gen_str(w[pos + 1]) + " is not a cancelling pair");
  return w.replaced(pos, 2, TwistWord{});
}

TwistWord apply_insert(const TwistWord& w, std::size_t pos, const TwistGen& g) {
  if (pos > w.size())
    throw PreconditionFailed("insert" + at(pos) + ": beyond end of word of length " +
                             std::to_string(w.size()));
  if (g.sign != 1 && g.sign != -1)
    throw PreconditionFailed("insert: generator sign must be +1 or -1");
  return w.replaced(pos, 0, TwistWord({g, g.inverse()}));
}

TwistWord apply_comm(const TwistWord& w, std::size_t pos, const SurfaceDatum& d) {
  need_span(w, pos, 2, "comm");
  const auto& x = w[pos];
  const auto& y = w[pos + 1];
  if (x.curve != y.curve) {
    auto n = d.intersection(x.curve, y.curve);
    if (!n)
      throw PreconditionFailed("comm" + at(pos) + ": no declared intersection for " +
                               x.curve + "," + y.curve);
    if (*n != 0)
      throw PreconditionFailed("comm" + at(pos) + ": " + x.curve + "," + y.curve +
                               " intersect (" + std::to_string(*n) + ")");
  }
  std::vector<TwistGen> g = w.gens();
  std::swap(g[pos], g[pos + 1]);
  return TwistWord(std::move(g));
}

TwistWord apply_braid(const TwistWord& w, std::size_t pos, MoveKind direction,
                      const SurfaceDatum& d) {
  if (direction != MoveKind::BraidLR && direction != MoveKind::BraidRL)
    throw PreconditionFailed("braid: bad direction");
  need_span(w, pos, 3, "braid");
  const auto& x = w[pos];
  const auto& y = w[pos + 1];
  const auto& z = w[pos + 2];
  if (x.sign != 1 || y.sign != 1 || z.sign != 1)
    throw PreconditionFailed("braid" + at(pos) + ": triple is not all positive");
  if (x.curve != z.curve || x.curve == y.curve)
    throw PreconditionFailed("braid" + at(pos) + ": " + x.curve + " " + y.curve +
                             " " + z.curve + " is not of the form x y x");
  auto n = d.intersection(x.curve, y.curve);
  if (!n || *n != 1)
    throw PreconditionFailed("braid" + at(pos) + ": " + x.curve + "," + y.curve +
                             (n ? " intersect " + std::to_string(*n) + " times"
                                : " have no declared intersection"));
  return w.replaced(pos, 3, TwistWord({y, x, y}));
}

TwistWord apply_ident(const TwistWord& w, std::size_t pos,
                      const CurveIdentity& id, Direction dir) {
  TwistWord exp = id.expansion();
  if (dir == Direction::Forward) {
    need_span(w, pos, 1, "ident");
    if (w[pos].curve != id.lhs)
      throw PreconditionFailed("ident" + at(pos) + ": expected " + id.lhs +
                               ", found " + w[pos].curve);
    return w.replaced(pos, 1, w[pos].sign > 0 ? exp : invert(exp));
  }
  need_span(w, pos, exp.size(), "ident");
  TwistWord span = w.slice(pos, exp.size());
  if (span == exp) return w.replaced(pos, exp.size(), TwistWord({{id.lhs, 1}}));
  if (span == invert(exp))
    return w.replaced(pos, exp.size(), TwistWord({{id.lhs, -1}}));
  throw PreconditionFailed("ident" + at(pos) + ": expansion of " + id.lhs +
                           " (" + exp.str() + ") does not occur");
}

TwistWord apply_subst(const TwistWord& w, std::size_t pos, const Relation& rel,
                      Direction dir, const EmbeddingDatum* via,
                      const RelationStore& store, const SurfaceDatum& d) {
  if (!store.established(rel.name) ||
      (rel.status != RelationStatus::Axiom && rel.status != RelationStatus::Proven))
    throw UnprovenRelation(rel.name);
  TwistWord lhs = rel.lhs, rhs = rel.rhs;
  if (via) {
    if (via->source != rel.surface)
      throw InvalidRename("embedding of " + via->source + " cannot transport " +
                          rel.name + " (on " + rel.surface + ")");
    lhs = rename_word(lhs, *via, d);
    rhs = rename_word(rhs, *via, d);
  } else if (rel.surface != d.name) {
    throw InvalidRename("relation " + rel.name + " lives on " + rel.surface +
                        "; substitution into " + d.name + " needs an embedding");
  }
  const TwistWord& from = dir == Direction::Forward ? lhs : rhs;
  const TwistWord& to = dir == Direction::Forward ? rhs : lhs;
  need_span(w, pos, from.size(), "subst");
  if (w.slice(pos, from.size()) != from)
    throw PreconditionFailed("subst " + rel.name + at(pos) + ": " + from.str() +
                             " does not occur (found " +
                             w.slice(pos, from.size()).str() + ")");
  return w.replaced(pos, from.size(), to);
}

Relation apply_power(const Relation& rel, unsigned n, const SurfaceDatum& d) {
  if (rel.status != RelationStatus::Proven && rel.status != RelationStatus::Axiom)
    throw UnprovenRelation(rel.name);
  if (n == 0) throw PreconditionFailed("power: exponent must be positive");
  if (n == 1) {
    Relation same = rel;
    same.status = RelationStatus::Proven;
    return same;
  }
  if (!rel.rhs.positive() || !boundary_only(rel.rhs, d))
    throw PreconditionFailed("power: right side of " + rel.name +
                             " is not a positive product of boundary twists");
  // Regrouping δ-powers swaps distinct boundary twists; each swap needs a
  // declared zero intersection.
  std::vector<std::string> order;
  std::map<std::string, unsigned> exps;
  for (const auto& g : rel.rhs) {
    if (!exps.count(g.curve)) order.push_back(g.curve);
    ++exps[g.curve];
  }
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      auto k = d.intersection(order[i], order[j]);
      if (!k || *k != 0)
        throw PreconditionFailed("power: boundary curves " + order[i] + "," +
                                 order[j] + " not declared disjoint");
    }
  Relation out = rel;
  out.name = rel.name + "_pow" + std::to_string(n);
  out.status = RelationStatus::Proven;
  TwistWord lhs;
  for (unsigned i = 0; i < n; ++i) lhs = lhs * rel.lhs;
  out.lhs = lhs;
  std::vector<TwistGen> rhs;
  for (const auto& c : order)
    for (unsigned i = 0; i < n * exps[c]; ++i) rhs.push_back({c, 1});
  out.rhs = TwistWord(std::move(rhs));
  return out;
}

TwistWord rotate_central(const TwistWord& w, std::size_t shift,
                         const TwistWord& central, const SurfaceDatum& d) {
  if (!boundary_only(central, d))
    throw PreconditionFailed("cyclic: other side " + central.str() +
                             " is not a product of boundary twists");
  if (w.empty()) return w;
  shift %= w.size();
  for (std::size_t i = 0; i < shift; ++i)
    for (const auto& g : central) {
      if (g.curve == w[i].curve) continue;
      auto n = d.intersection(g.curve, w[i].curve);
      if (!n || *n != 0)
        throw PreconditionFailed("cyclic: " + g.curve + " not declared disjoint from " +
                                 w[i].curve);
    }
  return w.slice(shift, w.size()) * w.slice(0, shift);
}

Relation apply_cyclic(const Relation& rel, std::size_t shift,
                      const SurfaceDatum& d) {
  if (rel.status != RelationStatus::Proven && rel.status != RelationStatus::Axiom)
    throw UnprovenRelation(rel.name);
  Relation out = rel;
  out.lhs = rotate_central(rel.lhs, shift, rel.rhs, d);
  out.name = rel.name + "_cyc" + std::to_string(shift);
  out.status = RelationStatus::Proven;
  return out;
}

TwistWord apply_move(const TwistWord& w, const Move& m,
                     const RelationStore& store, const SurfaceDatum& d,
                     const TwistWord& other_side) {
  switch (m.kind) {
    case MoveKind::Cancel: return apply_cancel(w, m.pos);
    case MoveKind::Insert: return apply_insert(w, m.pos, m.gen);
    case MoveKind::Comm: return apply_comm(w, m.pos, d);
    case MoveKind::BraidLR:
    case MoveKind::BraidRL: return apply_braid(w, m.pos, m.kind, d);
    case MoveKind::Ident: {
      const auto* id = d.identity(m.name);
      if (!id) throw PreconditionFailed("ident: no identity for '" + m.name + "' on " + d.name);
      return apply_ident(w, m.pos, *id, m.dir);
    }
    case MoveKind::Subst: {
      const Relation* rel = store.find(m.name);
      if (!rel) throw UnprovenRelation(m.name);
      const EmbeddingDatum* via = nullptr;
      if (!m.via.empty()) {
        via = d.embedding(m.via);
        if (!via) throw InvalidRename(d.name + " declares no embedding of " + m.via);
      }
      return apply_subst(w, m.pos, *rel, m.dir, via, store, d);
    }
    case MoveKind::Cyclic: return rotate_central(w, m.count, other_side, d);
    case MoveKind::Power:
    case MoveKind::Auto: break;
  }
  throw PreconditionFailed(m.str() + " cannot be applied as a word rewrite");
}

}  // namespace dehn
