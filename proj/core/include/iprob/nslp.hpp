#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "iprob/credal_set.hpp"
#include "iprob/dataset.hpp"

namespace iprob {

enum class SelectionKind { fixed_sequence, iid_uniform, cyclic };

struct Selection {
  SelectionKind kind = SelectionKind::cyclic;
  // fixed_sequence only; repeated cyclically when shorter than n.
  std::vector<std::size_t> indices;

  static Selection fixed(std::vector<std::size_t> idx) { return {SelectionKind::fixed_sequence, std::move(idx)}; }
  static Selection iid_uniform() { return {SelectionKind::iid_uniform, {}}; }
  static Selection cyclic() { return {SelectionKind::cyclic, {}}; }
};

std::string to_string(SelectionKind kind);
SelectionKind selection_kind_from_string(const std::string& s);

struct NSLPSpec {
  CredalSet data_model;
  Selection selection;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct NSLPSample {
  std::vector<std::size_t> outcomes;
  std::vector<std::size_t> groups;  // generating vertex of each draw
  std::size_t group_count = 0;
};

// Draw t comes from vertex i(t) of the data model, chosen by the selection
// policy.  Deterministic given the spec.
NSLPSample sample_nslp(const NSLPSpec& spec);

// One-hot encoding of X (one column per feature value) with label Y.  The
// space must carry a binary label map.
GroupedDataset to_dataset(const NSLPSample& s, const OutcomeSpace& space);

// One empirical vertex per group.  Throws DomainError for a group without draws.
CredalSet empirical_group_credal(const NSLPSample& s, const SpacePtr& space);

// Datasets whose feature vectors take finitely many values, viewed as a
// product space of (distinct feature vector) x {0, 1}.
struct FiniteAlphabet {
  SpacePtr space;
  std::vector<std::vector<double>> values;  // feature vector of each feature index
  std::vector<std::size_t> outcome_of_row;
};

// Distinct rows sorted lexicographically.  Throws DomainError if there are more
// than max_values of them.
FiniteAlphabet finite_alphabet(const GroupedDataset& ds, std::size_t max_values = 4096);
CredalSet empirical_group_credal(const GroupedDataset& ds, const FiniteAlphabet& alpha);

}  // namespace iprob
