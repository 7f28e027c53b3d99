#pragma once

#include <map>
#include <string>
#include <vector>

#include "dehn/relation.hpp"

namespace dehn {

/// Established relations (axioms and checked relations) with the
/// dependency DAG between them. Single writer; readers take copies.
class RelationStore {
 public:
  struct Entry {
    Relation relation;
    std::vector<std::string> deps;
    std::string certificate;  // "axiom", "script", "power <base> <n>", ...
  };

  /// Records a surface axiom. Throws DuplicateName.
  void add_axiom(const Relation& axiom);

  /// Records a relation whose proof has been checked. Throws DuplicateName,
  /// CycleDetected (self-dependency), or UnprovenRelation for a dependency
  /// that is not established.
  void register_relation(Relation rel, std::vector<std::string> deps,
                         std::string certificate);

  const Relation* find(const std::string& name) const;
  const Entry* entry(const std::string& name) const;
  bool established(const std::string& name) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  /// Dependency order; ties broken lexicographically by name.
  std::vector<std::string> topological_order() const;

 private:
  std::map<std::string, Entry> entries_;
};

/// Returns `store` extended by `rel`; the argument is left unchanged.
RelationStore register_relation(const Relation& rel,
                                const std::vector<std::string>& deps,
                                const std::string& certificate,
                                RelationStore store);

}  // namespace dehn
