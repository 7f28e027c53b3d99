#include "dehn/store.hpp"

#include <algorithm>
#include <set>

#include "dehn/errors.hpp"

namespace dehn {

void RelationStore::add_axiom(const Relation& axiom) {
  if (entries_.count(axiom.name)) throw DuplicateName(axiom.name);
  Relation r = axiom;
  r.status = RelationStatus::Axiom;
  std::string name = r.name;
  entries_.emplace(name, Entry{std::move(r), {}, "axiom"});
}

void RelationStore::register_relation(Relation rel, std::vector<std::string> deps,
                                      std::string certificate) {
  if (entries_.count(rel.name)) throw DuplicateName(rel.name);
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  for (const auto& dep : deps) {
    if (dep == rel.name)
      throw CycleDetected("relation '" + rel.name + "' depends on itself");
    if (!established(dep)) throw UnprovenRelation(dep);
  }
  rel.status = RelationStatus::Proven;
  std::string name = rel.name;
  entries_.emplace(name, Entry{std::move(rel), std::move(deps), std::move(certificate)});
}

const Relation* RelationStore::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second.relation;
}

const RelationStore::Entry* RelationStore::entry(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

bool RelationStore::established(const std::string& name) const {
  const auto* r = find(name);
  return r && (r->status == RelationStatus::Axiom ||
               r->status == RelationStatus::Proven);
}

std::vector<std::string> RelationStore::topological_order() const {
  std::vector<std::string> order;
  std::set<std::string> done;
  while (order.size() < entries_.size()) {
    // Entries are visited in name order, so the first ready one is the
    // lexicographically smallest.
    bool progressed = false;
    for (const auto& [name, e] : entries_) {
      if (done.count(name)) continue;
      bool ready = std::all_of(e.deps.begin(), e.deps.end(),
                               [&](const std::string& d) { return done.count(d) != 0; });
      if (!ready) continue;
      order.push_back(name);
      done.insert(name);
      progressed = true;
      break;
    }
    if (!progressed) throw CycleDetected("dependency cycle in relation store");
  }
  return order;
}

RelationStore register_relation(const Relation& rel,
                                const std::vector<std::string>& deps,
                                const std::string& certificate,
                                RelationStore store) {
  store.register_relation(rel, deps, certificate);
  return store;
}

}  // namespace dehn
