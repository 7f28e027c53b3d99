#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "dehn/corpus.hpp"
#include "dehn/errors.hpp"
#include "dehn/homrep.hpp"
#include "dehn/lefschetz.hpp"

#ifndef DEHN_DATA_DIR
#define DEHN_DATA_DIR "data"
#endif

namespace {

using dehn::Corpus;
namespace fs = std::filesystem;

std::vector<fs::path> inputs(const std::vector<std::string>& paths) {
  if (paths.empty()) return {fs::path(DEHN_DATA_DIR)};
  return {paths.begin(), paths.end()};
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw dehn::Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void print_validation(const std::vector<dehn::ValidationReport>& reports,
                      bool verbose) {
  for (const auto& r : reports) {
    std::cout << (r.passed() ? "ok    " : "FAIL  ") << r.subject << "\n";
    for (const auto& c : r.checks)
      if (!c.passed || verbose)
        std::cout << "      " << (c.passed ? "ok   " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
}

nlohmann::json validation_json(const std::vector<dehn::ValidationReport>& reports) {
  auto arr = nlohmann::json::array();
  for (const auto& r : reports) {
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    arr.push_back({{"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}});
  }
  return arr;
}

int cmd_validate(const std::vector<std::string>& paths, bool verbose,
                 const std::string& json) {
  Corpus c = dehn::load_corpus(inputs(paths));
  auto reports = dehn::validate_corpus(c);
  print_validation(reports, verbose);
  write_json(json, validation_json(reports));
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

int cmd_verify(const std::vector<std::string>& paths, const dehn::VerifyOptions& opts,
               const std::string& json) {
  Corpus c = dehn::load_corpus(inputs(paths));
  auto res = dehn::verify_corpus(c, opts);
  bool valid = true;
  for (const auto& r : res.validation) valid = valid && r.passed();
  if (!valid) print_validation(res.validation, false);
  std::size_t proven = 0;
  for (const auto& p : res.proofs) {
    std::cout << p.text();
    proven += p.success ? 1 : 0;
  }
  std::cout << proven << "/" << res.proofs.size() << " relations proven, "
            << res.validation.size() << " validation reports"
            << (valid ? "" : " (with failures)") << "\n";
  if (!json.empty()) {
    nlohmann::json j;
    j["validation"] = validation_json(res.validation);
    auto arr = nlohmann::json::array();
    for (const auto& p : res.proofs) arr.push_back(p.to_json());
    j["proofs"] = arr;
    j["ok"] = res.ok();
    write_json(json, j);
  }
  return res.ok() ? 0 : 1;
}

int cmd_homcheck(const std::vector<std::string>& data, const std::string& surface,
                 const std::string& relation) {
  Corpus c = dehn::load_corpus(inputs(data));
  auto it = c.surfaces.find(surface);
  if (it == c.surfaces.end()) throw dehn::Error("unknown surface '" + surface + "'");
  const auto& d = it->second;
  auto res = dehn::verify_corpus(c);
  const dehn::Relation* rel = res.store.find(relation);
  if (!rel) {
    for (const auto& s : c.scripts)
      if (s.target.name == relation) rel = &s.target;
  }
  if (!rel) throw dehn::Error("unknown relation '" + relation + "'");
  if (rel->surface != d.name)
    throw dehn::Error("relation '" + relation + "' lives on " + rel->surface);
  auto l = dehn::eval_word(rel->lhs, d);
  auto r = dehn::eval_word(rel->rhs, d);
  std::cout << "relation: " << rel->str() << "\n";
  std::cout << "status:   " << dehn::to_string(res.store.established(relation)
                                                     ? rel->status
                                                     : dehn::RelationStatus::Unproven)
            << "\n";
  std::cout << "H1 rank:  " << d.rank() << "\n";
  std::cout << "eval lhs: " << l.str() << "\n";
  std::cout << "eval rhs: " << r.str() << "\n";
  bool ok = l == r;
  if (d.genus == 1) {
    auto rep = dehn::ClosedTorusRep::for_surface(d);
    auto cl = dehn::closed_torus_matrix(rel->lhs, rep);
    auto cr = dehn::closed_torus_matrix(rel->rhs, rep);
    std::cout << "closed torus lhs: " << rep.collapse_word(rel->lhs).str() << " -> "
              << cl.str() << "\n";
    std::cout << "closed torus rhs: " << cr.str() << "\n";
    ok = ok && cl == cr;
  }
  std::cout << (ok ? "homology check passed" : "homology check FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_fibration(const std::vector<std::string>& data, const std::string& relation,
                  unsigned power, const std::string& json) {
  Corpus c = dehn::load_corpus(inputs(data));
  auto res = dehn::verify_corpus(c);
  const dehn::Relation* rel = res.store.find(relation);
  if (!rel || !res.store.established(relation)) {
    std::cerr << "error: relation '" << relation << "' is not proven\n";
    return 1;
  }
  const auto& d = c.surfaces.at(rel->surface);
  dehn::Relation target = *rel;
  if (power != 1) target = dehn::verify_power_relation(relation, power, res.store, d);
  auto rep = dehn::fibration_report(target, d);
  std::cout << rep.text();
  write_json(json, rep.to_json());
  return 0;
}

int cmd_powers(const std::vector<std::string>& data, unsigned max_power) {
  Corpus c = dehn::load_corpus(inputs(data));
  auto res = dehn::verify_corpus(c);
  if (!res.ok()) {
    std::cerr << "error: corpus does not verify\n";
    return 1;
  }
  int status = 0;
  for (const auto& name : res.store.topological_order()) {
    const auto* e = res.store.entry(name);
    if (e->certificate == "axiom") continue;
    const auto& d = c.surfaces.at(e->relation.surface);
    if (d.genus != 1) continue;
    for (unsigned n = 1; n <= max_power; ++n) {
      try {
        auto rel = dehn::verify_power_relation(name, n, res.store, d);
        auto [f, sections] = dehn::factorization_from_relation(rel, d);
        std::cout << rel.name << ": " << f.cycles.size() << " fibers, chi "
                  << dehn::euler_characteristic(f) << ", H1 "
                  << dehn::h1_total_space(f, d).str() << ", " << sections.size()
                  << " sections at " << (sections.empty() ? 0 : sections[0].self_intersection)
                  << "\n";
      } catch (const dehn::Error& e) {
        std::cout << name << " ^" << n << ": " << e.what() << "\n";
        status = 1;
      }
    }
  }
  return status;
}

// Rewrites a script file with every auto step replaced by the moves it found.
int cmd_expand(const std::vector<std::string>& data, const std::string& file,
               const dehn::CheckOptions& check) {
  std::vector<fs::path> paths = inputs(data);
  paths.emplace_back(file);
  Corpus c = dehn::load_corpus(paths);
  dehn::VerifyOptions opts;
  opts.check = check;
  auto res = dehn::verify_corpus(c, opts);
  std::map<std::size_t, std::string> replace;
  bool ok = true;
  for (const auto& s : c.scripts) {
    if (fs::path(s.file) != fs::path(file)) continue;
    for (const auto& p : res.proofs) {
      if (p.relation != s.target.name) continue;
      ok = ok && p.success;
      if (!p.success) std::cerr << p.text();
      for (const auto& r : p.steps) {
        if (r.expansion.empty()) continue;
        std::string side = s.steps[r.index].text.rfind("rhs:", 0) == 0 ? "rhs: "
                           : s.steps[r.index].text.rfind("lhs:", 0) == 0 ? "lhs: "
                                                                          : "";
        std::string block;
        for (std::size_t i = 0; i < r.expansion.size(); ++i)
          block += (i ? "\n" : "") + std::string("  ") + side + r.expansion[i].str();
        replace[r.line] = block;
      }
    }
  }
  std::ifstream in(file);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    auto it = replace.find(n);
    std::cout << (it == replace.end() ? line : it->second) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks Dehn twist relations on holed tori and derives fibration data"};
  app.require_subcommand(1);

  std::vector<std::string> paths, data;
  std::string json;
  bool verbose = false;
  auto* validate = app.add_subcommand("validate", "validate surface data and embeddings");
  validate->add_option("paths", paths, "files or directories (default: shipped data)");
  validate->add_flag("-v,--verbose", verbose, "list passing checks too");
  validate->add_option("--json", json, "write a JSON report");

  dehn::VerifyOptions vopts;
  bool no_checked = false;
  auto* verify = app.add_subcommand("verify", "check every derivation script");
  verify->add_option("paths", paths, "files or directories (default: shipped data)");
  verify->add_option("--jobs", vopts.jobs, "parallel derivation checks")
      ->check(CLI::PositiveNumber);
  verify->add_option("--auto-depth", vopts.check.auto_depth, "budget for auto steps")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-checked", no_checked, "skip per-step homology assertions");
  verify->add_option("--json", json, "write a JSON report");

  std::string surface, relation;
  auto* homcheck = app.add_subcommand("homcheck", "compare both sides in homology");
  homcheck->add_option("surface", surface)->required();
  homcheck->add_option("relation", relation)->required();
  homcheck->add_option("--data", data, "corpus files or directories");

  unsigned power = 1;
  auto* fibration = app.add_subcommand("fibration", "fibration data of a proven relation");
  fibration->add_option("relation", relation)->required();
  fibration->add_option("--power", power, "use the n-th power of the relation")
      ->check(CLI::PositiveNumber);
  fibration->add_option("--json", json, "write a JSON report");
  fibration->add_option("--data", data, "corpus files or directories");

  std::string expand_file;
  auto* expand = app.add_subcommand("expand", "print a script with auto steps expanded");
  expand->add_option("file", expand_file)->required();
  expand->add_option("--data", data, "corpus files or directories");
  expand->add_option("--auto-depth", vopts.check.auto_depth, "budget for auto steps");

  unsigned max_power = 3;
  auto* powers = app.add_subcommand("powers", "power relations of every proven relation");
  powers->add_option("--max", max_power, "largest exponent")->check(CLI::PositiveNumber);
  powers->add_option("--data", data, "corpus files or directories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(paths, verbose, json);
    if (*verify) {
      vopts.check.checked = !no_checked;
      return cmd_verify(paths, vopts, json);
    }
    if (*homcheck) return cmd_homcheck(data, surface, relation);
    if (*fibration) return cmd_fibration(data, relation, power, json);
    if (*powers) return cmd_powers(data, max_power);
    if (*expand) return cmd_expand(data, expand_file, vopts.check);
  } catch (const dehn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const dehn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
