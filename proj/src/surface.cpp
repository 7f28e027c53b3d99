#include "dehn/surface.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dehn/errors.hpp"

namespace dehn {

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Axiom: return "axiom";
    case RelationStatus::Proven: return "proven";
    case RelationStatus::Unproven: return "unproven";
  }
  return "unknown";
}

namespace {

std::pair<std::string, std::string> key(const std::string& a,
                                        const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct LineCursor {
  std::string_view line;
  std::size_t number;

  [[noreturn]] void fail(const std::string& msg, std::string_view at) const {
    std::size_t col = at.data() >= line.data() &&
                              at.data() <= line.data() + line.size()
                          ? static_cast<std::size_t>(at.data() - line.data()) + 1
                          : 1;
    throw ParseError(msg, number, col);
  }
  std::size_t column_of(std::string_view at) const {
    return static_cast<std::size_t>(at.data() - line.data()) + 1;
  }
};

// "<+-> [int] [*] label" terms over the basis; "0" for the zero class.
HomClass parse_combination(const LineCursor& cur, std::string_view text,
                           const std::vector<std::string>& basis) {
  HomClass cls{std::vector<std::int64_t>(basis.size(), 0)};
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip();
  if (i == text.size()) cur.fail("empty homology class", text);
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms", text.substr(i));
    }
    std::int64_t coeff = 1;
    bool has_coeff = false;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) {
      has_coeff = true;
      coeff = std::stoll(std::string(text.substr(start, i - start)));
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                               text[i] == '_'))
      ++i;
    std::string_view label = text.substr(start, i - start);
    if (label.empty()) {
      if (has_coeff && coeff == 0) {
        first = false;
        continue;
      }
      cur.fail("expected a basis label", text.substr(start));
    }
    auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end())
      cur.fail("'" + std::string(label) + "' is not a basis label", label);
    cls.coeffs[static_cast<std::size_t>(it - basis.begin())] += sign * coeff;
    first = false;
  }
  return cls;
}

void require_label(const SurfaceDatum& d, const std::string& label) {
  if (!d.has_label(label)) throw UnknownLabel(label);
}

void require_word(const SurfaceDatum& d, const TwistWord& w) {
  for (const auto& g : w) require_label(d, g.curve);
}

}  // namespace

bool SurfaceDatum::is_boundary(const std::string& label) const {
  return std::find(boundary.begin(), boundary.end(), label) != boundary.end();
}

std::optional<int> SurfaceDatum::intersection(const std::string& a,
                                              const std::string& b) const {
  auto it = inter_.find(key(a, b));
  if (it == inter_.end()) return std::nullopt;
  return it->second;
}

void SurfaceDatum::set_intersection(const std::string& a, const std::string& b,
                                    int n) {
  inter_[key(a, b)] = n;
}

const CurveIdentity* SurfaceDatum::identity(const std::string& lhs) const {
  for (const auto& id : identities)
    if (id.lhs == lhs) return &id;
  return nullptr;
}

const Relation* SurfaceDatum::axiom(const std::string& n) const {
  for (const auto& a : axioms)
    if (a.name == n) return &a;
  return nullptr;
}

const EmbeddingDatum* SurfaceDatum::embedding(const std::string& source) const {
  for (const auto& e : embeddings)
    if (e.source == source) return &e;
  return nullptr;
}

const HomClass& SurfaceDatum::class_of(const std::string& label) const {
  auto it = classes.find(label);
  if (it == classes.end()) throw UnknownLabel(label);
  return it->second;
}

SurfaceDatum parse_surface(std::string_view text,
                           const std::filesystem::path& origin) {
  SurfaceDatum d;
  d.origin = origin;
  bool have_name = false;
  std::size_t number = 0;
  std::set<std::string> axiom_names;
  // inter lines reference labels that may be declared later in the file.
  std::vector<std::pair<std::string, std::size_t>> pending_labels;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    LineCursor cur{raw, number};
    auto sp = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, sp);
    std::string_view rest =
        sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

    auto need_eq = [&](std::string_view s) {
      auto eq = s.find('=');
      if (eq == std::string_view::npos) cur.fail("expected '='", s);
      return eq;
    };

    if (keyword == "surface") {
      auto toks = split_ws(rest);
      if (toks.size() != 1 || !is_label(toks[0]))
        cur.fail("expected 'surface <name>'", rest);
      d.name = toks[0];
      have_name = true;
    } else if (keyword == "genus") {
      auto toks = split_ws(rest);
      if (toks.size() != 1 ||
          !std::all_of(toks[0].begin(), toks[0].end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        cur.fail("expected a non-negative genus", rest);
      d.genus = std::stoi(toks[0]);
    } else if (keyword == "boundary") {
      for (auto& t : split_ws(rest)) {
        if (!is_label(t)) cur.fail("bad boundary label '" + t + "'", rest);
        d.boundary.push_back(t);
      }
    } else if (keyword == "basis") {
      if (!d.classes.empty()) cur.fail("basis must precede class lines", rest);
      for (auto& t : split_ws(rest)) {
        if (!is_label(t)) cur.fail("bad basis label '" + t + "'", rest);
        d.basis.push_back(t);
      }
    } else if (keyword == "class") {
      auto eq = need_eq(rest);
      std::string label{trim(rest.substr(0, eq))};
      if (!is_label(label)) cur.fail("bad curve label", rest);
      if (d.has_label(label)) cur.fail("curve '" + label + "' declared twice", rest);
      d.classes[label] = parse_combination(cur, rest.substr(eq + 1), d.basis);
      d.labels.push_back(label);
    } else if (keyword == "inter") {
      auto eq = need_eq(rest);
      auto toks = split_ws(rest.substr(0, eq));
      auto val = split_ws(rest.substr(eq + 1));
      if (toks.size() != 2 || val.size() != 1)
        cur.fail("expected 'inter <label> <label> = <int>'", rest);
      int n = 0;
      try {
        n = std::stoi(val[0]);
      } catch (...) {
        cur.fail("bad intersection number", rest.substr(eq + 1));
      }
      if (n < 0) cur.fail("intersection numbers are non-negative", rest.substr(eq + 1));
      d.set_intersection(toks[0], toks[1], n);
      pending_labels.emplace_back(toks[0], number);
      pending_labels.emplace_back(toks[1], number);
    } else if (keyword == "identity") {
      auto eq = need_eq(rest);
      auto at = rest.find('@');
      if (at == std::string_view::npos || at < eq)
        cur.fail("expected 'identity <label> = <word> @ <label>'", rest);
      CurveIdentity id;
      id.lhs = std::string(trim(rest.substr(0, eq)));
      std::string_view wtext = rest.substr(eq + 1, at - eq - 1);
      id.conjugator = parse_word(wtext, number, cur.column_of(wtext));
      id.core = std::string(trim(rest.substr(at + 1)));
      if (!is_label(id.lhs) || !is_label(id.core))
        cur.fail("bad identity labels", rest);
      d.identities.push_back(std::move(id));
    } else if (keyword == "axiom") {
      auto colon = rest.find(':');
      if (colon == std::string_view::npos)
        cur.fail("expected 'axiom <name> : <word> = <word>'", rest);
      Relation r;
      r.name = std::string(trim(rest.substr(0, colon)));
      if (!is_label(r.name)) cur.fail("bad axiom name", rest);
      if (!axiom_names.insert(r.name).second)
        cur.fail("axiom '" + r.name + "' declared twice", rest);
      std::string_view body = rest.substr(colon + 1);
      auto eq = need_eq(body);
      std::string_view l = body.substr(0, eq), rr = body.substr(eq + 1);
      r.lhs = parse_word(l, number, cur.column_of(l));
      r.rhs = parse_word(rr, number, cur.column_of(rr));
      r.status = RelationStatus::Axiom;
      d.axioms.push_back(std::move(r));
    } else if (keyword == "embed") {
      auto colon = rest.find(':');
      if (colon == std::string_view::npos)
        cur.fail("expected 'embed <surface> : <from>-><to>, ...'", rest);
      EmbeddingDatum e;
      e.line = number;
      e.source = std::string(trim(rest.substr(0, colon)));
      if (!is_label(e.source)) cur.fail("bad surface name", rest);
      std::string_view list = rest.substr(colon + 1);
      while (!trim(list).empty()) {
        auto comma = list.find(',');
        std::string_view item = trim(list.substr(0, comma));
        auto arrow = item.find("->");
        if (arrow == std::string_view::npos)
          cur.fail("expected '<from>-><to>'", item);
        std::string from{trim(item.substr(0, arrow))};
        std::string to{trim(item.substr(arrow + 2))};
        if (!is_label(from) || !is_label(to))
          cur.fail("bad rename pair", item);
        e.rename.emplace_back(from, to);
        if (comma == std::string_view::npos) break;
        list = list.substr(comma + 1);
      }
      d.embeddings.push_back(std::move(e));
    } else {
      cur.fail("unknown keyword '" + std::string(keyword) + "'", keyword);
    }
    if (end == text.size()) break;
  }

  if (!have_name) throw ParseError("missing 'surface <name>' line", 0, 0);
  for (const auto& b : d.boundary) require_label(d, b);
  for (const auto& [label, line] : pending_labels) require_label(d, label);
  for (const auto& id : d.identities) {
    require_label(d, id.lhs);
    require_label(d, id.core);
    require_word(d, id.conjugator);
  }
  for (auto& a : d.axioms) {
    a.surface = d.name;
    require_word(d, a.lhs);
    require_word(d, a.rhs);
  }
  for (const auto& e : d.embeddings)
    for (const auto& [from, to] : e.rename) require_label(d, to);
  return d;
}

SurfaceDatum load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_surface(ss.str(), path);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what(), e.line(), 0);
  }
}

TwistWord rename_word(const TwistWord& w, const EmbeddingDatum& e,
                      const SurfaceDatum& dst) {
  std::vector<TwistGen> out;
  out.reserve(w.size());
  auto has = [&](const std::string& l) { return dst.has_label(l); };
  for (const auto& g : w) {
    auto img = e.image(g.curve, has);
    if (!img)
      throw InvalidRename("label '" + g.curve + "' of " + e.source +
                          " has no image in " + dst.name);
    if (!dst.has_label(*img))
      throw InvalidRename("image '" + *img + "' is not a curve of " + dst.name);
    out.push_back({*img, g.sign});
  }
  return TwistWord(std::move(out));
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

void ValidationReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

const Check* ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

}  // namespace dehn
