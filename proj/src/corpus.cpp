#include "dehn/corpus.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "dehn/errors.hpp"

namespace dehn {

namespace {

void collect(const std::filesystem::path& p, std::vector<std::filesystem::path>& out) {
  namespace fs = std::filesystem;
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(p))
      if (e.is_regular_file()) {
        auto ext = e.path().extension();
        if (ext == ".surf" || ext == ".deriv") files.push_back(e.path());
      }
    std::sort(files.begin(), files.end());
    out.insert(out.end(), files.begin(), files.end());
  } else if (fs::exists(p)) {
    out.push_back(p);
  } else {
    throw ParseError("no such file or directory: " + p.string(), 0, 0);
  }
}

}  // namespace

Corpus load_corpus(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : paths) collect(p, files);
  Corpus c;
  for (const auto& f : files) {
    if (f.extension() == ".surf") {
      SurfaceDatum d = load_surface(f);
      if (c.surfaces.count(d.name)) throw DuplicateName(d.name);
      c.surfaces.emplace(d.name, std::move(d));
    } else if (f.extension() == ".deriv") {
      auto s = load_derivations(f);
      c.scripts.insert(c.scripts.end(), s.begin(), s.end());
    } else {
      throw ParseError(f.string() + ": expected a .surf or .deriv file", 0, 0);
    }
  }
  return c;
}

std::vector<ValidationReport> validate_corpus(const Corpus& c) {
  std::vector<ValidationReport> out;
  for (const auto& [name, d] : c.surfaces) out.push_back(validate_surface(d));
  for (const auto& [name, d] : c.surfaces)
    for (const auto& e : d.embeddings) {
      auto it = c.surfaces.find(e.source);
      if (it == c.surfaces.end()) {
        ValidationReport r;
        r.subject = "embed " + e.source + " -> " + name;
        r.add("source", false, "no surface named " + e.source);
        out.push_back(std::move(r));
        continue;
      }
      out.push_back(validate_embedding(it->second, d, e));
    }
  return out;
}

RelationStore axiom_store(const Corpus& c) {
  RelationStore store;
  for (const auto& [name, d] : c.surfaces)
    for (const auto& ax : d.axioms) store.add_axiom(ax);
  return store;
}

bool VerifyResult::ok() const {
  for (const auto& v : validation)
    if (!v.passed()) return false;
  for (const auto& p : proofs)
    if (!p.success) return false;
  return true;
}

VerifyResult verify_corpus(const Corpus& c, const VerifyOptions& opts) {
  VerifyResult res;
  res.validation = validate_corpus(c);
  res.store = axiom_store(c);

  std::map<std::string, const DerivationScript*> pending;
  std::map<std::string, ProofReport> done;
  auto fail_early = [&](const DerivationScript& s, std::string why) {
    ProofReport r;
    r.relation = s.target.name;
    r.surface = s.target.surface;
    r.deps = s.dependencies();
    r.failed_line = s.line;
    r.failure = std::move(why);
    r.final_lhs = s.target.lhs;
    r.final_rhs = s.target.rhs;
    return r;
  };
  for (const auto& s : c.scripts) {
    const auto& n = s.target.name;
    if (pending.count(n) || done.count(n) || res.store.find(n)) {
      done[n + "#dup" + std::to_string(s.line)] =
          fail_early(s, s.file.string() + ":" + std::to_string(s.line) +
                            ": duplicate relation name '" + n + "'");
      continue;
    }
    pending[n] = &s;
  }

  while (!pending.empty()) {
    // A wave: every pending script whose dependencies are settled.
    std::vector<const DerivationScript*> wave;
    for (const auto& [name, s] : pending) {
      bool ready = true;
      for (const auto& dep : s->dependencies())
        if (pending.count(dep)) ready = false;
      if (ready) wave.push_back(s);
    }
    if (wave.empty()) {
      for (const auto& [name, s] : pending)
        done[name] = fail_early(*s, "dependency cycle through " + name);
      break;
    }
    const RelationStore snapshot = res.store;
    auto run = [&](const DerivationScript* s) -> ProofReport {
      for (const auto& dep : s->dependencies())
        if (!snapshot.established(dep))
          return fail_early(*s, "depends on unproven relation '" + dep + "'");
      auto it = c.surfaces.find(s->target.surface);
      if (it == c.surfaces.end())
        return fail_early(*s, "unknown surface '" + s->target.surface + "'");
      return check_derivation(*s, snapshot, it->second, opts.check);
    };
    std::vector<ProofReport> reports(wave.size());
    const std::size_t jobs = std::max(1u, opts.jobs);
    for (std::size_t base = 0; base < wave.size(); base += jobs) {
      std::vector<std::future<ProofReport>> futs;
      for (std::size_t i = base; i < std::min(wave.size(), base + jobs); ++i)
        futs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                  run, wave[i]));
      for (std::size_t i = 0; i < futs.size(); ++i) reports[base + i] = futs[i].get();
    }
    for (std::size_t i = 0; i < wave.size(); ++i) {
      const DerivationScript& s = *wave[i];
      ProofReport& r = reports[i];
      if (r.success) {
        Relation rel = s.target;
        try {
          bool cert = !s.steps.empty() && s.steps.front().kind == Step::Kind::From;
          std::string how = cert ? s.steps.front().text : "script " + s.file.filename().string();
          for (std::size_t j = 1; cert && j < s.steps.size(); ++j) how += "; " + s.steps[j].text;
          res.store.register_relation(rel, r.deps, how);
        } catch (const Error& e) {
          r.success = false;
          r.failure = e.what();
        }
      }
      done[s.target.name] = std::move(r);
      pending.erase(s.target.name);
    }
  }

  std::set<std::string> emitted;
  for (const auto& name : res.store.topological_order()) {
    auto it = done.find(name);
    if (it == done.end()) continue;
    res.proofs.push_back(it->second);
    emitted.insert(name);
  }
  for (auto& [name, r] : done)
    if (!emitted.count(name)) res.proofs.push_back(r);
  return res;
}

}  // namespace dehn
