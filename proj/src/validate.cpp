#include <set>
#include <sstream>

#include "dehn/errors.hpp"
#include "dehn/homrep.hpp"
#include "dehn/surface.hpp"

namespace dehn {

namespace {

std::string vec_str(const HomClass& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    os << (i ? "," : "") << c.coeffs[i];
  os << ')';
  return os.str();
}

HomClass apply(const IntMatrix& m, const HomClass& c) {
  HomClass out{std::vector<std::int64_t>(m.rows(), 0)};
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k)
      out.coeffs[r] = checked_add(out.coeffs[r], checked_mul(m(r, k), c.coeffs[k]));
  return out;
}

HomClass negated(HomClass c) {
  for (auto& v : c.coeffs) v = -v;
  return c;
}

}  // namespace

ValidationReport validate_surface(const SurfaceDatum& d) {
  ValidationReport rep;
  rep.subject = d.name;

  std::size_t expected = 2 * static_cast<std::size_t>(d.genus);
  if (!d.boundary.empty()) expected += d.boundary.size() - 1;
  rep.add("rank", d.rank() == expected,
          "basis size " + std::to_string(d.rank()) + ", expected " +
              std::to_string(expected));

  bool lengths = true;
  for (const auto& [label, cls] : d.classes)
    if (cls.coeffs.size() != d.rank()) lengths = false;
  rep.add("class-length", lengths);
  if (!lengths || d.rank() < 2 * static_cast<std::size_t>(d.genus)) return rep;

  auto form = PairingForm::for_surface(d);

  HomClass sum{std::vector<std::int64_t>(d.rank(), 0)};
  for (const auto& b : d.boundary)
    for (std::size_t i = 0; i < d.rank(); ++i)
      sum.coeffs[i] += d.class_of(b).coeffs[i];
  bool zero = true;
  for (auto v : sum.coeffs) zero = zero && v == 0;
  rep.add("boundary-sum", zero, "sum of boundary classes " + vec_str(sum));

  bool radical = true;
  std::string bad;
  for (const auto& b : d.boundary) {
    for (std::size_t i = 0; i < d.rank(); ++i) {
      HomClass e{std::vector<std::int64_t>(d.rank(), 0)};
      e.coeffs[i] = 1;
      if (form.pair(d.class_of(b), e) != 0) {
        radical = false;
        bad = b;
      }
    }
  }
  rep.add("boundary-radical", radical, bad.empty() ? "" : bad + " pairs nontrivially");

  bool bounded = true;
  std::string detail;
  for (const auto& [pair, n] : d.intersections()) {
    auto p = form.pair(d.class_of(pair.first), d.class_of(pair.second));
    if ((p < 0 ? -p : p) > n) {
      bounded = false;
      detail += pair.first + "," + pair.second + ": |" + std::to_string(p) +
                "| > " + std::to_string(n) + " ";
    }
  }
  rep.add("pairing-bound", bounded, detail);

  bool trivial = true;
  for (const auto& b : d.boundary)
    if (!eval_word(TwistWord({{b, 1}}), d).is_identity()) trivial = false;
  rep.add("boundary-twist-trivial", trivial);

  std::set<std::string> seen;
  for (const auto& id : d.identities) {
    bool unique = seen.insert(id.lhs).second;
    auto image = apply(eval_word(id.conjugator, d), d.class_of(id.core));
    const auto& cls = d.class_of(id.lhs);
    bool ok = unique && (image == cls || negated(image) == cls);
    rep.add("identity:" + id.lhs, ok,
            unique ? "class " + vec_str(cls) + ", conjugated core " + vec_str(image)
                   : "identity declared twice");
  }

  for (const auto& ax : d.axioms)
    rep.add("axiom:" + ax.name, relation_holds_in_homology(ax, d),
            "eval(" + ax.lhs.str() + ") vs eval(" + ax.rhs.str() + ")");
  return rep;
}

ValidationReport validate_embedding(const SurfaceDatum& src,
                                    const SurfaceDatum& dst,
                                    const EmbeddingDatum& e) {
  ValidationReport rep;
  rep.subject = src.name + " -> " + dst.name;
  rep.add("source", e.source == src.name,
          "embedding names " + e.source + ", given " + src.name);

  bool known = true;
  std::string unknown;
  for (const auto& [from, to] : e.rename) {
    if (!src.has_label(from)) {
      known = false;
      unknown += from + " ";
    }
    if (!dst.has_label(to)) {
      known = false;
      unknown += to + " ";
    }
  }
  rep.add("labels", known, unknown.empty() ? "" : "undeclared: " + unknown);

  auto has = [&](const std::string& l) { return dst.has_label(l); };
  std::map<std::string, std::string> image;
  for (const auto& l : src.labels)
    if (auto img = e.image(l, has)) image[l] = *img;

  std::map<std::string, std::string> preimage;
  bool injective = true;
  std::string clash;
  for (const auto& [from, to] : image) {
    auto [it, fresh] = preimage.emplace(to, from);
    if (!fresh) {
      injective = false;
      clash += it->second + "," + from + "->" + to + " ";
    }
  }
  rep.add("injective", injective, injective ? "" : "not injective: " + clash);

  bool boundary_ok = true;
  for (const auto& b : src.boundary) {
    auto it = image.find(b);
    if (it == image.end()) continue;
    // A source boundary lands on a boundary curve or on a capping curve that
    // is disjoint from every image curve it is declared against.
    if (dst.is_boundary(it->second)) continue;
    for (const auto& [l, img] : image)
      if (auto n = dst.intersection(it->second, img); n && *n != 0)
        boundary_ok = false;
  }
  rep.add("boundary-images", boundary_ok);

  bool preserved = true;
  std::string detail;
  for (const auto& [pair, n] : src.intersections()) {
    auto a = image.find(pair.first), b = image.find(pair.second);
    if (a == image.end() || b == image.end()) continue;
    auto m = dst.intersection(a->second, b->second);
    if (!m || *m != n) {
      preserved = false;
      detail += pair.first + "," + pair.second + " ";
    }
  }
  rep.add("intersections", preserved, detail);

  // An axiom of dst written entirely in image curves is an instance carried
  // over from src, so its preimage must be one of src's axioms.
  bool carried = true;
  std::string cd;
  auto pull = [&](const TwistWord& w, TwistWord& out) {
    std::vector<TwistGen> g;
    for (const auto& x : w) {
      auto it = preimage.find(x.curve);
      if (it == preimage.end()) return false;
      g.push_back({it->second, x.sign});
    }
    out = TwistWord(std::move(g));
    return true;
  };
  if (injective) {
    for (const auto& ax : dst.axioms) {
      TwistWord l, r;
      if (!pull(ax.lhs, l) || !pull(ax.rhs, r)) continue;
      bool found = false;
      for (const auto& s : src.axioms)
        if ((s.lhs == l && s.rhs == r) || (s.lhs == r && s.rhs == l)) found = true;
      if (!found) {
        carried = false;
        cd += ax.name + " ";
      }
    }
  }
  rep.add("axiom-images", carried, carried ? "" : "no source axiom for " + cd);

  if (src.rank() >= 2 * static_cast<std::size_t>(src.genus) &&
      dst.rank() >= 2 * static_cast<std::size_t>(dst.genus)) {
    auto fs = PairingForm::for_surface(src), fd = PairingForm::for_surface(dst);
    bool pairing = true;
    std::string pd;
    for (const auto& [x, ix] : image)
      for (const auto& [y, iy] : image) {
        if (!(x < y)) continue;
        // Classes carry no orientation, so compare up to sign.
        auto p = fs.pair(src.class_of(x), src.class_of(y));
        auto q = fd.pair(dst.class_of(ix), dst.class_of(iy));
        if (p != q && p != -q) {
          pairing = false;
          pd += x + "," + y + " ";
        }
      }
    rep.add("pairing", pairing, pd);
  }
  return rep;
}

}  // namespace dehn
