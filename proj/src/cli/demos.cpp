#include <sstream>

#include "json_util.hpp"
#include "profinite/cli/report.hpp"
#include "profinite/completion.hpp"
#include "profinite/diff_profinite.hpp"
#include "profinite/grothendieck.hpp"
#include "profinite/rng.hpp"

namespace profinite::cli {

using nlohmann::json;
using profinite::to_string;

namespace {

constexpr std::size_t kMaxCayleyClasses = 40;
constexpr std::size_t kMaxShownTowerPoints = 64;
constexpr std::uint64_t kMaxTowerPoints = 20000;
constexpr int kSampleTowers = 4;

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

json manifold_json(const ClopenManifold& m) {
  json balls = json::array();
  for (const auto& b : m.balls()) {
    json center = json::array();
    for (const auto& c : b.center) center.push_back(to_string(c.value()));
    balls.push_back({{"center", center}, {"radius_exp", b.radius_exp}});
  }
  return {{"dim", m.dim()}, {"balls", balls}};
}

std::vector<IntVector> complete_sequence(const Scenario& s) {
  std::vector<IntVector> seq;
  for (const auto& v : s.complete.vectors) seq.push_back(IntVector::from_dense(v));
  return seq;
}

json padic_vector_json(const PadicVector& v) {
  json out = json::array();
  for (const auto& [i, r] : v.entries()) out.push_back({{"index", i}, {"residue", to_string(r)}});
  return out;
}

}  // namespace

json make_report(const Scenario& s, const std::string& command, json body) {
  return {{"artifact", kArtifactName},
          {"version", kArtifactVersion},
          {"command", command},
          {"scenario", to_json(s)},
          {"scenario_hash", scenario_hash(s)},
          {"result", std::move(body)}};
}

json diff_tower_body(const Scenario& s) {
  const auto m = build_manifold(s);
  json orders = json::array(), verified = json::array(), literal = json::array();
  for (int k = 1; k <= s.depth; ++k) {
    try {
      const auto g = group_order(m, k);
      orders.push_back(to_string(g.order));
      verified.push_back({{"level", k}, {"points", to_string(g.points)}, {"exponent", g.verified_exponent},
                          {"divides", g.verified_divides}});
      literal.push_back({{"level", k}, {"exponent", g.literal_exponent}, {"card_divides", g.literal_card_divides},
                         {"factorial_divides", g.literal_factorial_divides}});
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge) throw;
      orders.push_back(nullptr);
    }
  }
  json body{{"p", s.prime}, {"K", s.depth}, {"manifold", manifold_json(m)}, {"orders", orders},
            {"divisibility", {{"verified", verified}, {"literal", literal}}}};

  if (cardinality(m, std::max(s.depth, m.resolution())) <= kMaxTowerPoints) {
    Rng rng(derive_seed(s.seed, "diff-tower"));
    std::vector<PermTower> towers;
    for (int i = 0; i < kSampleTowers; ++i) towers.push_back(random_tower(m, s.depth, rng.next()));
    json distances = json::array();
    for (std::size_t i = 0; i < towers.size(); ++i) {
      for (std::size_t j = i + 1; j < towers.size(); ++j) {
        distances.push_back({{"pair", {i, j}}, {"distance", to_string(weak_distance(towers[i], towers[j]))}});
      }
    }
    body["sample_distances"] = distances;
    if (discretize(m, s.depth).size() <= kMaxShownTowerPoints) {
      json levels = json::array();
      for (const auto& l : towers.front().levels()) levels.push_back(level_map_json(l.as_map()));
      body["sample_tower"] = levels;
    }
  } else {
    body["sample_distances"] = nullptr;
  }
  return body;
}

json loop_table_body(const Scenario& s) {
  const auto n = build_codomain(s);
  const LevelCodomain nl(discretize(n, s.bounds.loop_level));
  const auto classes = enumerate_classes(s.bounds.domain_size, nl, s.bounds.max_support, s.bounds.max_classes);
  json class_list = json::array();
  for (const auto& c : classes) class_list.push_back(class_json(c));
  json cayley = nullptr;
  if (classes.size() <= kMaxCayleyClasses) {
    cayley = json::array();
    for (const auto& a : classes) {
      json row = json::array();
      for (const auto& b : classes) {
        const auto ab = wedge_compose(a, b);
        const auto it = std::find(classes.begin(), classes.end(), ab);
        row.push_back(it == classes.end() ? json(nullptr) : json(it - classes.begin()));
      }
      cayley.push_back(std::move(row));
    }
  }
  json ranks = json::array();
  for (const auto& nk : codomain_tower(n, 1, s.depth)) {
    const auto r = rank_report(nk);
    ranks.push_back({{"level", nk.level()}, {"codomain_size", r.codomain_size}, {"computed_rank", r.computed_rank},
                     {"claimed_rank", r.claimed_rank}});
  }
  return {{"level", s.bounds.loop_level},
          {"domain_size", s.bounds.domain_size},
          {"max_support", s.bounds.max_support},
          {"class_count", classes.size()},
          {"classes", class_list},
          {"cayley", cayley},
          {"ranks", ranks},
          {"trivial", nl.is_trivial()}};
}

json complete_body(const Scenario& s) {
  const Prime p(s.prime);
  const auto seq = complete_sequence(s);
  const auto limit = complete(seq, p, s.complete.precision);
  json characters = json::array();
  for (int j = 1; j <= s.complete.precision; ++j) {
    characters.push_back({{"precision", j}, {"value", padic_vector_json(complete(seq, p, j))}});
  }
  json witness = json::array();
  const auto witness_vector = density_witness(limit);
  for (const auto& [i, v] : witness_vector.entries()) witness.push_back({{"index", i}, {"value", to_string(v)}});
  return {{"p", s.prime},
          {"precision", s.complete.precision},
          {"terms", seq.size()},
          {"limit", padic_vector_json(limit)},
          {"characters", characters},
          {"witness", witness}};
}

json summary_body(const Scenario& s) {
  auto loops = loop_table_body(s);
  return {{"diff_tower", diff_tower_body(s)},
          {"ranks", loops["ranks"]},
          {"class_count", loops["class_count"]},
          {"complete", complete_body(s)}};
}

std::string diff_tower_csv(const json& body) {
  std::ostringstream out;
  out << "level,order,verified_exponent,literal_exponent\n";
  const auto& orders = body["orders"];
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out << i + 1 << "," << cell(orders[i]) << ",";
    const auto level = static_cast<int>(i) + 1;
    for (const char* key : {"verified", "literal"}) {
      for (const auto& row : body["divisibility"][key]) {
        if (row["level"] == level) out << row["exponent"].get<int>();
      }
      if (std::string(key) == "verified") out << ",";
    }
    out << "\n";
  }
  return out.str();
}

std::string loop_table_csv(const json& body) {
  std::ostringstream out;
  out << "class,values\n";
  const auto& classes = body["classes"];
  for (std::size_t i = 0; i < classes.size(); ++i) out << i << "," << csv_quote(classes[i].dump()) << "\n";
  out << "level,codomain_size,computed_rank,claimed_rank\n";
  for (const auto& r : body["ranks"]) {
    out << r["level"].get<int>() << "," << r["codomain_size"].get<std::size_t>() << ","
        << r["computed_rank"].get<std::size_t>() << "," << r["claimed_rank"].get<std::size_t>() << "\n";
  }
  return out.str();
}

std::string complete_csv(const json& body) {
  std::ostringstream out;
  out << "precision,index,residue\n";
  for (const auto& c : body["characters"]) {
    for (const auto& e : c["value"]) {
      out << c["precision"].get<int>() << "," << e["index"].get<std::uint64_t>() << ","
          << e["residue"].get<std::string>() << "\n";
    }
  }
  return out.str();
}

}  // namespace profinite::cli
