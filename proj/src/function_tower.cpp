#include "profinite/function_tower.hpp"

#include <sstream>
#include <string>

namespace profinite {

namespace {

bool same_points(const LevelSet& a, const LevelSet& b) {
  return a.prime() == b.prime() && a.level() == b.level() && a.dim() == b.dim() && a.points() == b.points();
}

ClopenManifold without_base_point(const ClopenManifold& m) {
  return ClopenManifold(m.prime(), m.dim(), m.balls());
}

}  // namespace

LevelMap::LevelMap(LevelSet domain, LevelSet codomain, std::vector<std::size_t> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (domain_.level() != codomain_.level() || domain_.prime() != codomain_.prime()) {
    throw Error(Errc::LevelMismatch, "domain and codomain of a level map must share level and prime");
  }
  if (table_.size() != domain_.size()) throw Error(Errc::InvalidArgument, "level map table is not total");
  for (auto t : table_) {
    if (t >= codomain_.size()) throw Error(Errc::PointNotInManifold, "level map image outside the codomain");
  }
}

LevelMap LevelMap::identity(const LevelSet& domain) {
  std::vector<std::size_t> table(domain.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
  return LevelMap(domain, domain, std::move(table));
}

const ResidueVector& LevelMap::operator()(const ResidueVector& x) const {
  auto i = domain_.index_of(x);
  if (!i) throw Error(Errc::PointNotInManifold, "point outside the level map domain");
  return codomain_[table_[*i]];
}

LevelMap compose(const LevelMap& f, const LevelMap& g) {
  if (!same_points(g.codomain(), f.domain())) {
    throw Error(Errc::DomainMismatch, "codomain of the inner map is not the domain of the outer map");
  }
  std::vector<std::size_t> table(g.domain().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = f.table()[g.table()[i]];
  return LevelMap(g.domain(), f.codomain(), std::move(table));
}

bool commutes_with_projection(const LevelMap& fine, const LevelMap& coarse) {
  const int k = coarse.level();
  if (k > fine.level()) return false;
  for (std::size_t i = 0; i < fine.domain().size(); ++i) {
    const auto down = coarse.domain().index_of(reduce(fine.domain()[i], k));
    if (!down) return false;
    const auto& image = fine.codomain()[fine.table()[i]];
    if (!(reduce(image, k) == coarse.codomain()[coarse.table()[*down]])) return false;
  }
  return true;
}

MapTower::MapTower(std::vector<LevelMap> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(Errc::InvalidArgument, "a tower needs at least one level");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].level() != static_cast<int>(i) + 1) {
      throw Error(Errc::TowerIncompatible, "tower levels must run 1..K in order");
    }
  }
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      if (!commutes_with_projection(levels_[l], levels_[k])) {
        throw Error(Errc::TowerIncompatible, "level " + std::to_string(l + 1) +
                                                 " does not project onto level " + std::to_string(k + 1));
      }
    }
  }
}

MapTower MapTower::identity(const ClopenManifold& m, int depth) {
  std::vector<LevelMap> levels;
  for (int k = 1; k <= depth; ++k) levels.push_back(LevelMap::identity(discretize(m, k)));
  return MapTower(std::move(levels));
}

LevelMap project_function(const PointOracle& f, const ClopenManifold& domain, const ClopenManifold& codomain,
                          int k, std::optional<int> sample_level) {
  const int sample = sample_level.value_or(k + 1);
  if (sample < k) throw Error(Errc::InvalidArgument, "sample level must be at least the target level");
  LevelSet dom = discretize(domain, k);
  LevelSet cod = discretize(codomain, k);
  const LevelSet samples = discretize(without_base_point(domain), sample);

  std::vector<std::optional<std::size_t>> table(dom.size());
  std::vector<std::optional<ResidueVector>> witness(dom.size());
  for (const auto& y : samples.points()) {
    const auto input = lift_to_padic(y, sample);
    const auto output = f(input);
    if (static_cast<int>(output.size()) != codomain.dim()) {
      throw Error(Errc::InvalidArgument, "oracle returned a point of the wrong dimension");
    }
    const auto image = cod.index_of(project(output, k));
    if (!image) throw Error(Errc::PointNotInManifold, "oracle value lies outside the codomain");
    const auto slot = dom.index_of(reduce(y, k));
    if (!slot) throw Error(Errc::PointNotInManifold, "sample does not reduce into M_k");
    if (!table[*slot]) {
      table[*slot] = *image;
      witness[*slot] = y;
    } else if (*table[*slot] != *image) {
      std::ostringstream os;
      os << "samples " << *witness[*slot] << " and " << y << " agree modulo p^" << k
         << " but their images do not";
      throw Error(Errc::NotLevelCompatible, os.str());
    }
  }
  std::vector<std::size_t> out;
  out.reserve(table.size());
  for (const auto& t : table) out.push_back(t.value());
  return LevelMap(std::move(dom), std::move(cod), std::move(out));
}

MapTower project_tower(const PointOracle& f, const ClopenManifold& domain, const ClopenManifold& codomain,
                       int depth, int sample_offset) {
  std::vector<LevelMap> levels;
  for (int k = 1; k <= depth; ++k) levels.push_back(project_function(f, domain, codomain, k, k + sample_offset));
  return MapTower(std::move(levels));
}

MapTower compose_towers(const MapTower& f, const MapTower& g) {
  if (f.depth() != g.depth()) throw Error(Errc::DomainMismatch, "towers have different depths");
  std::vector<LevelMap> levels;
  for (int k = 1; k <= f.depth(); ++k) levels.push_back(compose(f.at(k), g.at(k)));
  return MapTower(std::move(levels));
}

int MahlerSeries::guard_precision() const {
  return precision + static_cast<int>(factorial_valuation(static_cast<std::uint64_t>(degree()), prime.value()));
}

MahlerSeries mahler_coefficients(const IntegerOracle& f, Prime p, int max_index, int precision) {
  if (max_index < 0) throw Error(Errc::InvalidArgument, "max index must be >= 0");
  if (precision < 1) throw Error(Errc::PrecisionExceeded, "precision must be >= 1");
  std::vector<Integer> values;
  for (int j = 0; j <= max_index; ++j) values.push_back(f(Integer(j)));
  // In-place forward differences: after pass m, values[m] holds Delta^m f(0).
  std::vector<PadicApprox> coeffs;
  coeffs.push_back(PadicApprox::from_integer(p, values[0], precision));
  for (int m = 1; m <= max_index; ++m) {
    for (int j = max_index; j >= m; --j) values[j] -= values[j - 1];
    coeffs.push_back(PadicApprox::from_integer(p, values[m], precision));
  }
  return MahlerSeries{p, precision, std::move(coeffs)};
}

MahlerSeries mahler_coefficients(const std::function<PadicApprox(const PadicApprox&)>& f, Prime p, int max_index,
                                 int precision) {
  // Enough digits to hold every sample point exactly.
  int input_precision = precision;
  while (p.power(input_precision) <= max_index) ++input_precision;
  return mahler_coefficients(
      [&](const Integer& n) {
        const PadicApprox y = f(PadicApprox::from_integer(p, n, input_precision));
        if (y.precision() < precision) {
          throw Error(Errc::PrecisionExceeded, "oracle answered with fewer digits than requested");
        }
        return y.truncate(precision).value();
      },
      p, max_index, precision);
}

PadicApprox mahler_eval(const MahlerSeries& s, const PadicApprox& x) {
  if (x.prime() != s.prime) throw Error(Errc::LevelMismatch, "argument over a different prime");
  const int guard = s.guard_precision();
  if (x.precision() < guard) {
    throw Error(Errc::PrecisionExceeded, "argument needs " + std::to_string(guard) + " digits, has " +
                                             std::to_string(x.precision()));
  }
  const Integer rep = x.truncate(guard).value();
  Integer sum = 0;
  for (int m = 0; m <= s.degree(); ++m) {
    sum += s.coefficients[static_cast<std::size_t>(m)].value() * binomial(rep, static_cast<unsigned>(m));
  }
  return PadicApprox::from_integer(s.prime, sum, s.precision);
}

LevelMap project_polynomial(std::span<const PadicApprox> coeffs, const ClopenManifold& m, int k) {
  if (m.dim() != 1) throw Error(Errc::InvalidArgument, "polynomial projection is one-dimensional");
  const Prime p = m.prime();
  std::vector<Residue> reduced;
  for (const auto& a : coeffs) reduced.push_back(project(a, k));
  LevelSet dom = discretize(m, k);
  LevelSet cod = full_level_set(p, k, 1);
  std::vector<std::size_t> table;
  table.reserve(dom.size());
  for (const auto& x : dom.points()) {
    const Residue xk = x[0];
    Residue acc(p, k, 0);
    for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) acc = acc * xk + *it;
    table.push_back(*cod.index_of(ResidueVector(p, k, {acc.value()})));
  }
  return LevelMap(std::move(dom), std::move(cod), std::move(table));
}

}  // namespace profinite
