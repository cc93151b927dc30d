#include "profinite/completion.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace profinite {

namespace {

template <class Map>
Map without_zeros(Map m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

template <class Map>
Rational first_difference(const Map& x, const Map& y, Prime p, const IndexOrder& order) {
  std::set<IndexLabel> labels;
  for (const auto& kv : x) labels.insert(kv.first);
  for (const auto& kv : y) labels.insert(kv.first);
  std::optional<std::uint64_t> first;
  for (auto label : labels) {
    auto xi = x.find(label);
    auto yi = y.find(label);
    const Integer a = xi == x.end() ? Integer(0) : xi->second;
    const Integer b = yi == y.end() ? Integer(0) : yi->second;
    const auto j = order.position(label);
    if (a == b) continue;
    if (!first || j < *first) first = j;
  }
  if (!first) return Rational(0);
  return Rational(Integer(1), p.power(static_cast<int>(*first)));
}

}  // namespace

IntVector::IntVector(std::map<IndexLabel, Integer> entries) : entries_(without_zeros(std::move(entries))) {}

IntVector IntVector::from_dense(std::span<const Integer> values) {
  std::map<IndexLabel, Integer> entries;
  for (std::size_t i = 0; i < values.size(); ++i) entries.emplace(i + 1, values[i]);
  return IntVector(std::move(entries));
}

Integer IntVector::at(IndexLabel i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Integer(0) : it->second;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  auto entries = a.entries();
  for (const auto& [i, v] : b.entries()) entries[i] += v;
  return IntVector(std::move(entries));
}

IntVector operator-(const IntVector& a) {
  auto entries = a.entries();
  for (auto& kv : entries) kv.second = -kv.second;
  return IntVector(std::move(entries));
}

PadicVector::PadicVector(Prime p, int precision, std::map<IndexLabel, Integer> entries)
    : prime_(p), precision_(precision) {
  if (precision < 1) throw Error(Errc::PrecisionExceeded, "precision must be >= 1");
  const Integer m = p.power(precision);
  for (auto& [i, v] : entries) {
    Integer r = mod_floor(v, m);
    if (r != 0) entries_.emplace(i, std::move(r));
  }
}

Residue PadicVector::at(IndexLabel i) const {
  auto it = entries_.find(i);
  return Residue(prime_, precision_, it == entries_.end() ? Integer(0) : it->second);
}

PadicVector operator+(const PadicVector& a, const PadicVector& b) {
  if (a.prime() != b.prime() || a.precision() != b.precision()) {
    throw Error(Errc::LevelMismatch, "p-adic vectors at different precisions");
  }
  auto entries = a.entries();
  for (const auto& [i, v] : b.entries()) entries[i] += v;
  return PadicVector(a.prime(), a.precision(), std::move(entries));
}

PadicVector complete(std::span<const IntVector> sequence, Prime p, int s, std::size_t min_tail) {
  if (min_tail < 1) min_tail = 1;
  if (sequence.size() < min_tail) {
    throw Error(Errc::NotCauchy, "sequence is shorter than the required stable tail");
  }
  const auto tail = sequence.subspan(sequence.size() - min_tail);
  std::set<IndexLabel> labels;
  for (const auto& x : tail) {
    for (const auto& kv : x.entries()) labels.insert(kv.first);
  }
  const Integer m = p.power(s);
  std::map<IndexLabel, Integer> limit;
  for (auto label : labels) {
    const Integer value = mod_floor(tail.back().at(label), m);
    for (const auto& x : tail) {
      if (mod_floor(x.at(label), m) != value) {
        throw Error(Errc::NotCauchy, "coordinate " + std::to_string(label) + " has not stabilised modulo p^" +
                                         std::to_string(s));
      }
    }
    limit.emplace(label, value);
  }
  return PadicVector(p, s, std::move(limit));
}

PadicVector character(const IntVector& x, Prime p, int s) { return PadicVector(p, s, x.entries()); }

IntVector density_witness(const PadicVector& target) { return IntVector(target.entries()); }

IndexOrder IndexOrder::enumerated(std::vector<IndexLabel> labels) {
  std::map<IndexLabel, std::uint64_t> positions;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!positions.emplace(labels[i], i + 1).second) {
      throw Error(Errc::OrderUndefined, "label " + std::to_string(labels[i]) + " enumerated twice");
    }
  }
  return IndexOrder(std::move(positions));
}

std::uint64_t IndexOrder::position(IndexLabel label) const {
  if (!positions_) {
    if (label == 0) throw Error(Errc::OrderUndefined, "natural enumeration starts at label 1");
    return label;
  }
  auto it = positions_->find(label);
  if (it == positions_->end()) {
    throw Error(Errc::OrderUndefined, "label " + std::to_string(label) + " is not in the enumeration");
  }
  return it->second;
}

Rational baire_distance(const IntVector& x, const IntVector& y, Prime p, const IndexOrder& order) {
  return first_difference(x.entries(), y.entries(), p, order);
}

Rational baire_distance(const PadicVector& x, const PadicVector& y, const IndexOrder& order) {
  if (x.prime() != y.prime() || x.precision() != y.precision()) {
    throw Error(Errc::LevelMismatch, "p-adic vectors at different precisions");
  }
  return first_difference(x.entries(), y.entries(), x.prime(), order);
}

}  // namespace profinite
