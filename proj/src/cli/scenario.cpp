#include "profinite/cli/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "profinite/rng.hpp"

namespace profinite::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ConfigInvalid, what); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) invalid(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) invalid("unknown key '" + key + "' in " + where);
  }
}

std::uint64_t get_u64(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (!s.empty() && s.size() <= 20 && s.find_first_not_of("0123456789") == std::string::npos) {
      try {
        return std::stoull(s);
      } catch (const std::out_of_range&) {
      }
    }
  }
  invalid(where + " must be a nonnegative integer");
}

int get_int(const json& v, const std::string& where, int lo, int hi) {
  const auto x = get_u64(v, where);
  if (x < static_cast<std::uint64_t>(lo) || x > static_cast<std::uint64_t>(hi)) {
    invalid(where + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

Integer get_integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
  }
  invalid(where + " must be an integer (number or decimal string)");
}

Digits get_digits(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) invalid(where + " must be a nonempty digit list");
  Digits d;
  for (std::size_t i = 0; i < v.size(); ++i) d.push_back(get_u64(v[i], where));
  return d;
}

std::vector<Digits> get_point(const json& v, int dim, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    invalid(where + " needs one digit list per coordinate (" + std::to_string(dim) + ")");
  }
  std::vector<Digits> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_digits(v[i], where));
  return out;
}

ManifoldConfig default_manifold(int depth) {
  ManifoldConfig m;
  m.balls.push_back(BallConfig{{Digits{0}}, 0});
  m.base_point = {Digits(static_cast<std::size_t>(depth + 1), 0)};
  return m;
}

// Absent base point: the first ball's centre, padded with zero digits to depth + 1.
std::vector<Digits> default_base_point(const ManifoldConfig& m, int depth) {
  std::vector<Digits> out;
  for (Digits d : m.balls.front().center) {
    const auto want = static_cast<std::size_t>(std::max(depth + 1, m.balls.front().radius_exp));
    if (d.size() < want) d.resize(want, 0);
    out.push_back(std::move(d));
  }
  return out;
}

ManifoldConfig parse_manifold(const json& obj, const std::string& where, int depth) {
  reject_unknown_keys(obj, {"dim", "balls", "base_point"}, where);
  ManifoldConfig m;
  if (obj.contains("dim")) m.dim = get_int(obj["dim"], where + ".dim", 1, 8);
  if (obj.contains("balls")) {
    const auto& balls = obj["balls"];
    if (!balls.is_array() || balls.empty()) invalid(where + ".balls must be a nonempty list");
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const std::string bw = where + ".balls[" + std::to_string(i) + "]";
      reject_unknown_keys(balls[i], {"center", "radius_exp"}, bw);
      if (!balls[i].contains("center")) invalid(bw + " needs a center");
      BallConfig b;
      b.center = get_point(balls[i]["center"], m.dim, bw + ".center");
      if (balls[i].contains("radius_exp")) b.radius_exp = get_int(balls[i]["radius_exp"], bw + ".radius_exp", 0, 64);
      m.balls.push_back(std::move(b));
    }
  } else {
    m.balls.push_back(BallConfig{std::vector<Digits>(static_cast<std::size_t>(m.dim), Digits{0}), 0});
  }
  if (obj.contains("base_point")) {
    m.base_point = get_point(obj["base_point"], m.dim, where + ".base_point");
  } else {
    m.base_point = default_base_point(m, depth);
  }
  return m;
}

ClopenManifold build(std::uint64_t p, const ManifoldConfig& cfg, int depth, const std::string& where) {
  try {
    const Prime prime(p);
    std::vector<Ball> balls;
    for (const auto& b : cfg.balls) {
      Ball ball;
      for (const auto& d : b.center) ball.center.emplace_back(prime, d);
      ball.radius_exp = b.radius_exp;
      balls.push_back(std::move(ball));
    }
    std::vector<PadicApprox> base;
    for (const auto& d : cfg.base_point) base.emplace_back(prime, d);
    ClopenManifold m(prime, cfg.dim, std::move(balls), std::move(base));
    if (m.max_level() < depth) {
      invalid(where + ".base_point needs at least depth = " + std::to_string(depth) + " digits");
    }
    return m;
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigInvalid) throw;
    invalid(where + ": " + e.what());
  }
}

json manifold_json(const ManifoldConfig& m) {
  json balls = json::array();
  for (const auto& b : m.balls) balls.push_back({{"center", b.center}, {"radius_exp", b.radius_exp}});
  return {{"dim", m.dim}, {"balls", balls}, {"base_point", m.base_point}};
}

}  // namespace

std::vector<std::vector<Integer>> geometric_fixture(std::uint64_t p, int precision) {
  std::vector<std::vector<Integer>> out;
  Integer sum = 0, pn = 1;
  for (int n = 0; n < precision + 3; ++n) {
    sum += Integer(p - 1) * pn;
    pn *= p;
    out.push_back({sum});
  }
  return out;
}

Scenario default_scenario() { return parse_scenario(json::object()); }

Scenario parse_scenario(const json& config) {
  reject_unknown_keys(config,
                      {"prime", "depth", "seed", "dim", "balls", "base_point", "codomain", "bounds", "complete",
                       "perm_tower"},
                      "config");
  Scenario s;
  if (config.contains("prime")) s.prime = get_u64(config["prime"], "prime");
  try {
    Prime check(s.prime);
  } catch (const Error& e) {
    invalid(std::string("prime: ") + e.what());
  }
  if (config.contains("depth")) s.depth = get_int(config["depth"], "depth", 1, 16);
  if (config.contains("seed")) s.seed = get_u64(config["seed"], "seed");

  json manifold = json::object();
  for (const char* key : {"dim", "balls", "base_point"}) {
    if (config.contains(key)) manifold[key] = config[key];
  }
  s.manifold = parse_manifold(manifold, "manifold", s.depth);
  s.codomain = config.contains("codomain") ? parse_manifold(config["codomain"], "codomain", s.depth)
                                           : default_manifold(s.depth);

  if (config.contains("bounds")) {
    const auto& b = config["bounds"];
    reject_unknown_keys(b, {"samples", "domain_size", "max_support", "max_classes", "max_perm_points", "loop_level"},
                        "bounds");
    if (b.contains("samples")) s.bounds.samples = static_cast<std::uint64_t>(get_int(b["samples"], "bounds.samples", 1, 100000));
    if (b.contains("domain_size")) s.bounds.domain_size = static_cast<std::size_t>(get_int(b["domain_size"], "bounds.domain_size", 1, 6));
    if (b.contains("max_support")) s.bounds.max_support = static_cast<std::size_t>(get_int(b["max_support"], "bounds.max_support", 0, 8));
    if (b.contains("max_classes")) {
      s.bounds.max_classes = static_cast<std::size_t>(get_int(b["max_classes"], "bounds.max_classes", 1, 1000000));
    }
    if (b.contains("max_perm_points")) {
      s.bounds.max_perm_points = static_cast<std::size_t>(get_int(b["max_perm_points"], "bounds.max_perm_points", 1, 8));
    }
    if (b.contains("loop_level")) s.bounds.loop_level = get_int(b["loop_level"], "bounds.loop_level", 1, s.depth);
  }

  bool vectors_given = false;
  if (config.contains("complete")) {
    const auto& c = config["complete"];
    reject_unknown_keys(c, {"precision", "vectors"}, "complete");
    if (c.contains("precision")) s.complete.precision = get_int(c["precision"], "complete.precision", 1, 64);
    if (c.contains("vectors")) {
      const auto& vs = c["vectors"];
      if (!vs.is_array() || vs.empty()) invalid("complete.vectors must be a nonempty list");
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "complete.vectors[" + std::to_string(i) + "]";
        if (!vs[i].is_array()) invalid(where + " must be a list of integers");
        std::vector<Integer> v;
        for (std::size_t j = 0; j < vs[i].size(); ++j) v.push_back(get_integer(vs[i][j], where));
        s.complete.vectors.push_back(std::move(v));
      }
      vectors_given = true;
    }
  }
  if (!vectors_given) s.complete.vectors = geometric_fixture(s.prime, s.complete.precision);

  if (config.contains("perm_tower")) {
    const auto& t = config["perm_tower"];
    if (!t.is_array() || t.empty()) invalid("perm_tower must be a nonempty list of image lists");
    std::vector<std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string where = "perm_tower[" + std::to_string(i) + "]";
      if (!t[i].is_array()) invalid(where + " must be a list of indices");
      std::vector<std::size_t> image;
      for (std::size_t j = 0; j < t[i].size(); ++j) image.push_back(static_cast<std::size_t>(get_u64(t[i][j], where)));
      levels.push_back(std::move(image));
    }
    if (static_cast<int>(levels.size()) > s.depth) invalid("perm_tower is deeper than depth");
    s.perm_tower = std::move(levels);
  }

  // Geometry is validated here so that every later failure is an invariant failure.
  build_manifold(s);
  build_codomain(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config file " + path);
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_scenario(config);
}

json to_json(const Scenario& s) {
  json vectors = json::array();
  for (const auto& v : s.complete.vectors) {
    json row = json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    vectors.push_back(std::move(row));
  }
  json out{
      {"prime", s.prime},
      {"depth", s.depth},
      {"seed", std::to_string(s.seed)},
      {"manifold", manifold_json(s.manifold)},
      {"codomain", manifold_json(s.codomain)},
      {"bounds",
       {{"samples", s.bounds.samples},
        {"domain_size", s.bounds.domain_size},
        {"max_support", s.bounds.max_support},
        {"max_classes", s.bounds.max_classes},
        {"max_perm_points", s.bounds.max_perm_points},
        {"loop_level", s.bounds.loop_level}}},
      {"complete", {{"precision", s.complete.precision}, {"vectors", vectors}}},
  };
  if (s.perm_tower) out["perm_tower"] = *s.perm_tower;
  return out;
}

std::string scenario_hash(const Scenario& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(s).dump())));
  return buf;
}

ClopenManifold build_manifold(const Scenario& s) { return build(s.prime, s.manifold, s.depth, "manifold"); }

ClopenManifold build_codomain(const Scenario& s) { return build(s.prime, s.codomain, s.depth, "codomain"); }

}  // namespace profinite::cli
