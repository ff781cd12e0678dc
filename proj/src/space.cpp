#include "oaid/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oaid::space {

std::vector<ResponseType> all_response_types(int treatments, int instruments,
                                             std::uint64_t cap) {
  if (treatments < 2) throw std::invalid_argument("all_response_types: need >= 2 treatments");
  if (instruments < 1) throw std::invalid_argument("all_response_types: need >= 1 instrument");
  std::uint64_t count = 1;
  for (int z = 0; z < instruments; ++z) {
    count *= static_cast<std::uint64_t>(treatments);
    if (count > cap)
      throw std::invalid_argument("all_response_types: |T|^|Z| exceeds cap");
  }
  std::vector<ResponseType> out;
  out.reserve(count);
  ResponseType cur(static_cast<std::size_t>(instruments), 0);
  // Odometer with the last coordinate fastest gives lexicographic order.
  while (true) {
    out.push_back(cur);
    int pos = instruments - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == treatments - 1) {
      cur[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
  }
  return out;
}

RatMatrix indicator_matrix(const SelectionModel& model, int t) {
  if (t < 0 || t >= model.treatments)
    throw std::invalid_argument("indicator_matrix: treatment out of range");
  RatMatrix a(static_cast<std::size_t>(model.instruments), model.groups.size());
  for (std::size_t g = 0; g < model.groups.size(); ++g)
    for (int z = 0; z < model.instruments; ++z)
      if (model.groups[g][static_cast<std::size_t>(z)] == t)
        a.at(static_cast<std::size_t>(z), g) = 1;
  return a;
}

SelectionModel model_from_rows(int treatments, int instruments,
                               const std::vector<std::vector<int>>& rows) {
  if (static_cast<int>(rows.size()) != instruments)
    throw std::invalid_argument("model_from_rows: row count != instruments");
  if (rows.empty() || rows[0].empty())
    throw std::invalid_argument("model_from_rows: empty matrix");
  const std::size_t n_groups = rows[0].size();
  SelectionModel m;
  m.treatments = treatments;
  m.instruments = instruments;
  m.groups.assign(n_groups, ResponseType(static_cast<std::size_t>(instruments), 0));
  for (int z = 0; z < instruments; ++z) {
    if (rows[static_cast<std::size_t>(z)].size() != n_groups)
      throw std::invalid_argument("model_from_rows: ragged rows");
    for (std::size_t g = 0; g < n_groups; ++g) {
      const int v = rows[static_cast<std::size_t>(z)][g];
      if (v < 0 || v >= treatments)
        throw std::invalid_argument("model_from_rows: treatment value out of range");
      m.groups[g][static_cast<std::size_t>(z)] = v;
    }
  }
  std::set<ResponseType> uniq(m.groups.begin(), m.groups.end());
  if (uniq.size() != m.groups.size())
    throw std::invalid_argument("model_from_rows: duplicate response types");
  return m;
}

std::string serialize(const SelectionModel& model) {
  std::string s;
  s.reserve(model.groups.size() * (static_cast<std::size_t>(model.instruments) + 1) + 8);
  s += std::to_string(model.treatments);
  s += 'x';
  s += std::to_string(model.instruments);
  s += ':';
  for (const auto& g : model.groups) {
    for (int v : g) s += static_cast<char>('0' + v);
    s += ',';
  }
  return s;
}

SelectionModel sorted_columns(const SelectionModel& model) {
  SelectionModel out = model;
  std::sort(out.groups.begin(), out.groups.end());
  return out;
}

namespace {

SelectionModel permute_instruments(const SelectionModel& m, const std::vector<int>& sigma) {
  SelectionModel out = m;
  for (std::size_t g = 0; g < m.groups.size(); ++g)
    for (int z = 0; z < m.instruments; ++z)
      out.groups[g][static_cast<std::size_t>(z)] =
          m.groups[g][static_cast<std::size_t>(sigma[static_cast<std::size_t>(z)])];
  return out;
}

SelectionModel relabel_treatments(const SelectionModel& m, const std::vector<int>& tau) {
  SelectionModel out = m;
  for (auto& g : out.groups)
    for (auto& v : g) v = tau[static_cast<std::size_t>(v)];
  return out;
}

// Instrument-canonical form: the column-sorted matrix minimizing the
// serialization over all instrument permutations.
SelectionModel instrument_canonical(const SelectionModel& m) {
  std::vector<int> sigma(static_cast<std::size_t>(m.instruments));
  std::iota(sigma.begin(), sigma.end(), 0);
  SelectionModel best;
  std::string best_key;
  do {
    SelectionModel cand = sorted_columns(permute_instruments(m, sigma));
    std::string key = serialize(cand);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace

std::string canonical_key(const SelectionModel& model, DedupMode mode) {
  std::vector<int> tau(static_cast<std::size_t>(model.treatments));
  std::iota(tau.begin(), tau.end(), 0);
  switch (mode) {
    case DedupMode::kInstruments:
      return serialize(instrument_canonical(model));
    case DedupMode::kTreatments: {
      std::string best;
      do {
        std::string key = serialize(sorted_columns(relabel_treatments(model, tau)));
        if (best.empty() || key < best) best = std::move(key);
      } while (std::next_permutation(tau.begin(), tau.end()));
      return best;
    }
    case DedupMode::kSequential: {
      // Treatment relabelings are applied to the instrument-canonical form
      // with its column order frozen, mirroring a two-pass organization.
      const SelectionModel base = instrument_canonical(model);
      std::string best;
      do {
        std::string key = serialize(relabel_treatments(base, tau));
        if (best.empty() || key < best) best = std::move(key);
      } while (std::next_permutation(tau.begin(), tau.end()));
      return best;
    }
    case DedupMode::kJoint: {
      std::string best;
      do {
        std::string key = canonical_key(relabel_treatments(model, tau), DedupMode::kInstruments);
        if (best.empty() || key < best) best = std::move(key);
      } while (std::next_permutation(tau.begin(), tau.end()));
      return best;
    }
  }
  throw std::invalid_argument("canonical_key: unknown mode");
}

}  // namespace oaid::space
