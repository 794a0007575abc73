#include "iprob/nslp.hpp"

#include <algorithm>
#include <map>

#include "iprob/error.hpp"
#include "iprob/random.hpp"

namespace iprob {

std::string to_string(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::fixed_sequence: return "fixed_sequence";
    case SelectionKind::iid_uniform: return "iid_uniform";
    case SelectionKind::cyclic: return "cyclic";
  }
  return "?";
}

SelectionKind selection_kind_from_string(const std::string& s) {
  if (s == "fixed_sequence") return SelectionKind::fixed_sequence;
  if (s == "iid_uniform") return SelectionKind::iid_uniform;
  if (s == "cyclic") return SelectionKind::cyclic;
  throw DomainError("unknown selection policy '" + s + "'");
}

NSLPSample sample_nslp(const NSLPSpec& spec) {
  const CredalSet& c = spec.data_model;
  const std::size_t g = c.vertex_count();
  if (spec.n == 0) throw DomainError("NSLP sample size must be at least 1");
  if (spec.selection.kind == SelectionKind::fixed_sequence) {
    if (spec.selection.indices.empty()) throw DomainError("fixed_sequence needs indices");
    for (std::size_t i : spec.selection.indices) {
      if (i >= g) throw DomainError("fixed_sequence index " + std::to_string(i) + " out of range");
    }
  }
  std::vector<std::vector<double>> cdf(g);
  for (std::size_t i = 0; i < g; ++i) {
    const auto p = c.vertex(i).values();
    cdf[i].resize(p.size());
    double s = 0.0;
    for (std::size_t w = 0; w < p.size(); ++w) cdf[i][w] = (s += p[w]);
    cdf[i].back() = 1.0;
  }

  CounterRng draw(spec.seed, 0);
  CounterRng select(spec.seed, 1);
  NSLPSample out;
  out.group_count = g;
  out.outcomes.reserve(spec.n);
  out.groups.reserve(spec.n);
  for (std::size_t t = 0; t < spec.n; ++t) {
    std::size_t i = 0;
    switch (spec.selection.kind) {
      case SelectionKind::fixed_sequence:
        i = spec.selection.indices[t % spec.selection.indices.size()];
        break;
      case SelectionKind::iid_uniform:
        i = select.uniform_index(g);
        break;
      case SelectionKind::cyclic:
        i = t % g;
        break;
    }
    const double u = draw.uniform();
    const auto& f = cdf[i];
    std::size_t w = static_cast<std::size_t>(std::upper_bound(f.begin(), f.end(), u) - f.begin());
    w = std::min(w, f.size() - 1);
    // skip zero-probability outcomes that share a cdf value with the next one
    while (w > 0 && c.vertex(i)[w] == 0.0) --w;
    out.outcomes.push_back(w);
    out.groups.push_back(i);
  }
  return out;
}

GroupedDataset to_dataset(const NSLPSample& s, const OutcomeSpace& space) {
  if (!space.has_binary_labels()) throw DomainError("NSLP dataset export needs binary labels");
  GroupedDataset ds;
  ds.feature_names = space.feature_labels();
  ds.group_count = s.group_count;
  std::vector<double> x(space.feature_count());
  for (std::size_t t = 0; t < s.outcomes.size(); ++t) {
    std::fill(x.begin(), x.end(), 0.0);
    x[space.feature_of(s.outcomes[t])] = 1.0;
    ds.push_back(x, static_cast<int>(space.label_of(s.outcomes[t])), s.groups[t]);
  }
  return ds;
}

namespace {

CredalSet from_counts(const SpacePtr& space, const std::vector<std::vector<double>>& counts) {
  std::vector<ProbVec> v;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    double n = 0.0;
    for (double c : counts[g]) n += c;
    if (n == 0.0) throw DomainError("group " + std::to_string(g) + " has no rows");
    v.push_back(ProbVec::normalized(counts[g]));
  }
  return CredalSet(space, std::move(v));
}

}  // namespace

CredalSet empirical_group_credal(const NSLPSample& s, const SpacePtr& space) {
  std::vector<std::vector<double>> counts(s.group_count, std::vector<double>(space->size(), 0.0));
  for (std::size_t t = 0; t < s.outcomes.size(); ++t) {
    if (s.outcomes[t] >= space->size()) throw DimensionError("sample outcome outside space");
    counts[s.groups[t]][s.outcomes[t]] += 1.0;
  }
  return from_counts(space, counts);
}

FiniteAlphabet finite_alphabet(const GroupedDataset& ds, std::size_t max_values) {
  std::map<std::vector<double>, std::size_t> index;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto x = ds.row(r);
    index.emplace(std::vector<double>(x.begin(), x.end()), 0);
    if (index.size() > max_values) {
      throw DomainError("dataset has more than " + std::to_string(max_values) +
                        " distinct feature vectors");
    }
  }
  FiniteAlphabet out;
  std::vector<std::string> labels;
  for (auto& [vec, idx] : index) {
    idx = out.values.size();
    out.values.push_back(vec);
    std::string name;
    for (std::size_t j = 0; j < vec.size(); ++j) {
      if (j) name += ";";
      name += (j < ds.feature_names.size() ? ds.feature_names[j] : "f") + "=" + format_double(vec[j]);
    }
    labels.push_back(name.empty() ? "all" : name);
  }
  if (out.values.empty()) throw DomainError("dataset is empty");
  out.space = make_space(OutcomeSpace::product(labels, {0.0, 1.0}, "y"));
  out.outcome_of_row.reserve(ds.size());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto x = ds.row(r);
    const std::size_t f = index.at(std::vector<double>(x.begin(), x.end()));
    out.outcome_of_row.push_back(2 * f + static_cast<std::size_t>(ds.labels[r]));
  }
  return out;
}

CredalSet empirical_group_credal(const GroupedDataset& ds, const FiniteAlphabet& alpha) {
  std::vector<std::vector<double>> counts(ds.group_count,
                                          std::vector<double>(alpha.space->size(), 0.0));
  for (std::size_t r = 0; r < ds.size(); ++r) counts[ds.groups[r]][alpha.outcome_of_row[r]] += 1.0;
  return from_counts(alpha.space, counts);
}

}  // namespace iprob
