#include "dehn/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dehn/errors.hpp"
#include "dehn/homrep.hpp"

namespace dehn {

std::string to_string(Side s) { return s == Side::Lhs ? "lhs" : "rhs"; }

std::vector<std::string> DerivationScript::dependencies() const {
  std::set<std::string> deps;
  for (const auto& s : steps) {
    if (s.kind == Step::Kind::From) deps.insert(s.from);
    if (s.kind == Step::Kind::Move && s.move.kind == MoveKind::Subst)
      deps.insert(s.move.name);
  }
  return {deps.begin(), deps.end()};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class ScriptParser {
 public:
  ScriptParser(std::string_view text, std::filesystem::path origin)
      : text_(text), origin_(std::move(origin)) {}

  std::vector<DerivationScript> parse() {
    std::vector<DerivationScript> out;
    DerivationScript* open = nullptr;
    bool in_proof = false;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      raw_ = text_.substr(start, end - start);
      start = end + 1;
      ++number_;
      std::string_view line = raw_;
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) {
        auto toks = tokens(line);
        if (toks[0] == "relation") {
          if (open && in_proof) fail("missing 'qed' before next relation", line);
          out.push_back(header(line));
          open = &out.back();
          in_proof = false;
        } else if (toks[0] == "proof") {
          if (!open || in_proof || toks.size() != 1) fail("unexpected 'proof'", line);
          in_proof = true;
        } else if (toks[0] == "qed") {
          if (!in_proof || toks.size() != 1) fail("unexpected 'qed'", line);
          open->end_line = number_;
          in_proof = false;
          open = nullptr;
        } else {
          if (!in_proof) fail("step outside of a proof block", line);
          open->steps.push_back(step(line));
        }
      }
      if (end == text_.size()) break;
    }
    if (in_proof) throw ParseError("missing 'qed' at end of file", number_, 1);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::string_view at) const {
    std::size_t col = 1;
    if (at.data() >= raw_.data() && at.data() <= raw_.data() + raw_.size())
      col = static_cast<std::size_t>(at.data() - raw_.data()) + 1;
    throw ParseError(msg, number_, col);
  }

  std::size_t col(std::string_view at) const {
    return static_cast<std::size_t>(at.data() - raw_.data()) + 1;
  }

  TwistWord word(std::string_view s) const { return parse_word(s, number_, col(s)); }

  DerivationScript header(std::string_view line) {
    // relation <name> on <surface> : <word> = <word>
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      fail("expected 'relation <name> on <surface> : <word> = <word>'", line);
    auto head = tokens(line.substr(0, colon));
    if (head.size() != 4 || head[2] != "on" || !is_label(head[1]) || !is_label(head[3]))
      fail("expected 'relation <name> on <surface> :'", line);
    std::string_view body = line.substr(colon + 1);
    auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("expected '=' in relation", body);
    DerivationScript s;
    s.target.name = std::string(head[1]);
    s.target.surface = std::string(head[3]);
    s.target.lhs = word(body.substr(0, eq));
    s.target.rhs = word(body.substr(eq + 1));
    s.target.status = RelationStatus::Unproven;
    s.file = origin_;
    s.line = number_;
    return s;
  }

  std::size_t number(std::string_view tok) const {
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("expected a non-negative integer, found '" + std::string(tok) + "'", tok);
    return std::stoul(std::string(tok));
  }

  Direction direction(std::string_view tok) const {
    if (tok == "fwd") return Direction::Forward;
    if (tok == "rev") return Direction::Reverse;
    fail("expected fwd or rev, found '" + std::string(tok) + "'", tok);
  }

  Step step(std::string_view line) {
    Step s;
    s.line = number_;
    s.text = std::string(line);
    if (line.rfind("lhs:", 0) == 0 || line.rfind("rhs:", 0) == 0) {
      s.side = line[0] == 'l' ? Side::Lhs : Side::Rhs;
      line = trim(line.substr(4));
    }
    auto toks = tokens(line);
    if (toks.empty()) fail("empty step", line);
    auto kw = toks[0];
    auto arity = [&](std::size_t n) {
      if (toks.size() != n) fail("wrong number of arguments for '" + std::string(kw) + "'", line);
    };
    Move& m = s.move;
    if (kw == "cancel") {
      arity(2);
      m.kind = MoveKind::Cancel;
      m.pos = number(toks[1]);
    } else if (kw == "insert") {
      arity(3);
      m.kind = MoveKind::Insert;
      m.pos = number(toks[1]);
      auto w = word(toks[2]);
      if (w.size() != 1) fail("insert takes one generator", toks[2]);
      m.gen = w[0];
    } else if (kw == "comm") {
      arity(2);
      m.kind = MoveKind::Comm;
      m.pos = number(toks[1]);
    } else if (kw == "braid") {
      arity(3);
      m.pos = number(toks[1]);
      if (toks[2] == "lr") m.kind = MoveKind::BraidLR;
      else if (toks[2] == "rl") m.kind = MoveKind::BraidRL;
      else fail("expected lr or rl", toks[2]);
    } else if (kw == "ident") {
      arity(5);
      if (toks[2] != "at") fail("expected 'ident <label> at <pos> fwd|rev'", line);
      m.kind = MoveKind::Ident;
      m.name = std::string(toks[1]);
      m.pos = number(toks[3]);
      m.dir = direction(toks[4]);
    } else if (kw == "subst") {
      m.kind = MoveKind::Subst;
      if (toks.size() == 5 && toks[2] == "at") {
        m.pos = number(toks[3]);
        m.dir = direction(toks[4]);
      } else if (toks.size() == 7 && toks[2] == "via" && toks[4] == "at") {
        m.via = std::string(toks[3]);
        m.pos = number(toks[5]);
        m.dir = direction(toks[6]);
      } else {
        fail("expected 'subst <rel> [via <surface>] at <pos> fwd|rev'", line);
      }
      m.name = std::string(toks[1]);
    } else if (kw == "auto") {
      arity(2);
      m.kind = MoveKind::Auto;
      m.count = static_cast<unsigned>(number(toks[1]));
    } else if (kw == "power") {
      arity(2);
      m.kind = MoveKind::Power;
      m.count = static_cast<unsigned>(number(toks[1]));
    } else if (kw == "cyclic") {
      arity(2);
      m.kind = MoveKind::Cyclic;
      m.count = static_cast<unsigned>(number(toks[1]));
    } else if (kw == "expect") {
      s.kind = Step::Kind::Expect;
      s.expected = word(trim(line.substr(6)));
    } else if (kw == "from") {
      arity(2);
      s.kind = Step::Kind::From;
      s.from = std::string(toks[1]);
    } else {
      fail("unknown step '" + std::string(kw) + "'", kw);
    }
    return s;
  }

  std::string_view text_;
  std::filesystem::path origin_;
  std::string_view raw_;
  std::size_t number_ = 0;
};

std::string words_line(const TwistWord& u, const TwistWord& v) {
  return "lhs: " + u.str() + "\n    rhs: " + v.str();
}

}  // namespace

std::vector<DerivationScript> parse_derivations(std::string_view text,
                                                const std::filesystem::path& origin) {
  return ScriptParser(text, origin).parse();
}

std::vector<DerivationScript> load_derivations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_derivations(ss.str(), path);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what(), e.line(), 0);
  }
}

ProofReport check_derivation(const DerivationScript& script,
                             const RelationStore& store, const SurfaceDatum& d,
                             const CheckOptions& opts) {
  ProofReport rep;
  rep.relation = script.target.name;
  rep.surface = script.target.surface;
  rep.deps = script.dependencies();
  TwistWord u = script.target.lhs, v = script.target.rhs;
  rep.final_lhs = u;
  rep.final_rhs = v;

  auto reject = [&](std::optional<std::size_t> idx, std::size_t line, std::string why) {
    rep.success = false;
    rep.failed_step = idx;
    rep.failed_line = line;
    rep.failure = std::move(why);
    rep.final_lhs = u;
    rep.final_rhs = v;
    return rep;
  };

  const std::string header = "relation (line " + std::to_string(script.line) + "): ";
  if (script.target.surface != d.name)
    return reject(std::nullopt, script.line,
                  header + "declared on " + script.target.surface + ", checked against " + d.name);
  for (const auto* w : {&u, &v})
    for (const auto& g : *w)
      if (!d.has_label(g.curve))
        return reject(std::nullopt, script.line, header + "unknown curve label '" + g.curve + "'");
  if (opts.checked) {
    try {
      if (!relation_holds_in_homology(script.target, d))
        return reject(std::nullopt, script.line,
                      header + "claimed relation fails in the homology representation");
    } catch (const Error& e) {
      return reject(std::nullopt, script.line, header + e.what());
    }
  }

  // Certificate mode: the pair is replaced by an established relation that
  // is then powered or rotated.
  std::optional<Relation> cert;

  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const Step& st = script.steps[i];
    StepRecord rec{i, st.line, st.text, st.side, {}, {}, false, {}};
    std::string where = "step " + std::to_string(i + 1) + " (line " +
                        std::to_string(st.line) + ", '" + st.text + "'): ";
    try {
      if (st.kind == Step::Kind::From) {
        if (i != 0) return reject(i, st.line, where + "'from' must be the first step");
        const Relation* base = store.find(st.from);
        if (!base || !store.established(st.from)) throw UnprovenRelation(st.from);
        if (base->surface != d.name)
          throw PreconditionFailed("relation " + st.from + " lives on " + base->surface);
        cert = *base;
        u = cert->lhs;
        v = cert->rhs;
      } else if (st.kind == Step::Kind::Expect) {
        const TwistWord& cur = st.side == Side::Lhs ? u : v;
        if (cur != st.expected)
          return reject(i, st.line,
                        where + "expected " + st.expected.str() + "\n    found    " + cur.str());
      } else if (cert) {
        if (st.move.kind == MoveKind::Power) {
          cert = apply_power(*cert, st.move.count, d);
        } else if (st.move.kind == MoveKind::Cyclic) {
          cert = apply_cyclic(*cert, st.move.count, d);
        } else {
          throw PreconditionFailed("only power and cyclic may follow 'from'");
        }
        u = cert->lhs;
        v = cert->rhs;
      } else if (st.move.kind == MoveKind::Power) {
        throw PreconditionFailed("power needs a 'from' relation");
      } else {
        TwistWord& cur = st.side == Side::Lhs ? u : v;
        const TwistWord& other = st.side == Side::Lhs ? v : u;
        std::vector<Move> moves;
        if (st.move.kind == MoveKind::Auto) {
          // Bridge to the next expectation on this side, else to the other side.
          TwistWord goal = other;
          if (i + 1 < script.steps.size() &&
              script.steps[i + 1].kind == Step::Kind::Expect &&
              script.steps[i + 1].side == st.side)
            goal = script.steps[i + 1].expected;
          unsigned depth = std::min(st.move.count, opts.auto_depth);
          auto found = bridge_gap(cur, goal, d, depth);
          if (!found)
            throw PreconditionFailed("auto: no move sequence of length <= " +
                                     std::to_string(depth) + " reaches " + goal.str());
          moves = *found;
          rec.expansion = moves;
        } else {
          moves.push_back(st.move);
        }
        for (const auto& m : moves) {
          TwistWord next = apply_move(cur, m, store, d, other);
          if (opts.checked) {
            if (eval_word(next, d) != eval_word(cur, d))
              throw PreconditionFailed("homology image changed by " + m.str());
            rec.homology_checked = true;
          }
          cur = std::move(next);
        }
      }
    } catch (const Error& e) {
      return reject(i, st.line, where + e.what());
    }
    rec.lhs = u;
    rec.rhs = v;
    rep.steps.push_back(std::move(rec));
  }

  rep.final_lhs = u;
  rep.final_rhs = v;
  if (cert) {
    if (u != script.target.lhs || v != script.target.rhs)
      return reject(std::nullopt, script.end_line,
                    "qed (line " + std::to_string(script.end_line) + "): certificate yields " +
                        cert->str() + ", not the stated relation");
  } else if (reduce(u) != reduce(v)) {
    return reject(std::nullopt, script.end_line,
                  "qed (line " + std::to_string(script.end_line) + "): goal not reached:\n    " +
                      words_line(reduce(u), reduce(v)));
  }
  rep.success = true;
  return rep;
}

std::string ProofReport::text() const {
  std::ostringstream os;
  os << relation << " on " << surface << ": " << (success ? "proven" : "FAILED");
  os << " (" << steps.size() << " steps)\n";
  if (!success) {
    os << "  " << failure << "\n";
    os << "  state: lhs: " << final_lhs.str() << "\n";
    os << "         rhs: " << final_rhs.str() << "\n";
  }
  return os.str();
}

nlohmann::json ProofReport::to_json() const {
  nlohmann::json j;
  j["relation"] = relation;
  j["surface"] = surface;
  j["success"] = success;
  j["deps"] = deps;
  j["final_lhs"] = final_lhs.str();
  j["final_rhs"] = final_rhs.str();
  if (!success) {
    j["failure"] = failure;
    j["failed_line"] = failed_line;
    if (failed_step) j["failed_step"] = *failed_step + 1;
  }
  auto arr = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json js{{"index", s.index + 1},
                      {"line", s.line},
                      {"step", s.text},
                      {"side", to_string(s.side)},
                      {"lhs", s.lhs.str()},
                      {"rhs", s.rhs.str()},
                      {"homology_checked", s.homology_checked}};
    if (!s.expansion.empty()) {
      auto ex = nlohmann::json::array();
      for (const auto& m : s.expansion) ex.push_back(m.str());
      js["expansion"] = ex;
    }
    arr.push_back(std::move(js));
  }
  j["steps"] = std::move(arr);
  return j;
}

Relation verify_power_relation(const std::string& base, unsigned n,
                               RelationStore& store, const SurfaceDatum& d) {
  const Relation* rel = store.find(base);
  if (!rel || !store.established(base)) throw UnprovenRelation(base);
  if (rel->surface != d.name)
    throw PreconditionFailed("relation " + base + " lives on " + rel->surface);
  Relation out = apply_power(*rel, n, d);
  if (n == 1) return out;
  if (const Relation* existing = store.find(out.name)) return *existing;
  store.register_relation(out, {base}, "power " + base + " " + std::to_string(n));
  return out;
}

}  // namespace dehn
