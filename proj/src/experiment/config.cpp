// Copyright 2026 The qdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qdesign/experiment.hpp"

namespace qdesign {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config " + (path.empty() ? std::string("root") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Object accessor that rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_, "expected an object");
    for (const auto& [k, v] : j.items()) {
      (void)v;
      if (!allowed.count(k)) fail(join(path_, k), "unknown key");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<int> int_list(const std::string& key) const {
    std::vector<int> out;
    if (!has(key)) return out;
    const json& v = j_.at(key);
    if (v.is_number_integer()) return {v.get<int>()};
    if (!v.is_array()) fail(path(key), "expected an integer or a list of integers");
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(path(key), "expected a list of integers");
      out.push_back(x.get<int>());
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

int positive_int(const Section& s, const std::string& key, std::int64_t fallback, std::int64_t max = 1 << 30) {
  const std::int64_t v = s.integer(key, fallback);
  if (v < 1 || v > max) fail(s.path(key), "must lie in [1, " + std::to_string(max) + "]");
  return static_cast<int>(v);
}

template <class Fn>
void wrap(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.rfind("config ", 0) == 0) throw;
    fail(path, what);
  }
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    fail("model", "needs a string 'kind' (ising, fermi_hubbard, bose_hubbard or cue)");
  }
  const std::string kind = j.at("kind").get<std::string>();
  ModelSpec spec;
  if (kind == "ising") {
    const Section s(j, "model", {"kind", "L", "J", "alpha", "axis", "omega", "delta"});
    IsingParams p;
    p.J = s.number("J", p.J);
    p.alpha = s.number("alpha", p.alpha);
    p.omega = s.number("omega", p.omega);
    p.delta = s.number("delta", p.delta);
    const std::string axis = s.string("axis", "z");
    if (axis == "z") {
      p.axis = SpinAxis::kZ;
    } else if (axis == "x") {
      p.axis = SpinAxis::kX;
    } else {
      fail(s.path("axis"), "expected \"x\" or \"z\"");
    }
    const int L = positive_int(s, "L", 4, 20);
    spec.model = QuenchModel{Lattice::chain(L), p};
  } else if (kind == "fermi_hubbard") {
    const Section s(j, "model", {"kind", "Lx", "Ly", "t", "U", "delta", "spin_ratio"});
    FermiHubbardParams p;
    p.t = s.number("t", p.t);
    p.U = s.number("U", p.U);
    p.delta = s.number("delta", p.delta);
    p.spin_ratio = s.number("spin_ratio", p.spin_ratio);
    spec.model = QuenchModel{Lattice::rectangle(positive_int(s, "Lx", 2, 16), positive_int(s, "Ly", 3, 16)), p};
  } else if (kind == "bose_hubbard") {
    const Section s(j, "model", {"kind", "L", "N", "J", "U", "delta"});
    BoseHubbardParams p;
    p.J = s.number("J", p.J);
    p.U = s.number("U", p.U);
    p.delta = s.number("delta", p.delta);
    const std::int64_t n = s.integer("N", 2);
    if (n < 0 || n > 64) fail(s.path("N"), "must lie in [0, 64]");
    p.particles = static_cast<int>(n);
    spec.model = QuenchModel{Lattice::chain(positive_int(s, "L", 4, 64)), p};
  } else if (kind == "cue") {
    const Section s(j, "model", {"kind", "dim", "L"});
    spec.source = UnitarySource::kCue;
    if (s.has("dim") == s.has("L")) fail("model", "a cue model needs exactly one of 'dim' or 'L'");
    if (s.has("dim")) {
      spec.cue_dim = static_cast<std::size_t>(positive_int(s, "dim", 1, 1 << 14));
    } else {
      IsingParams p;  // basis only; omega != 0 keeps one 2^L block
      spec.model = QuenchModel{Lattice::chain(positive_int(s, "L", 1, 14)), p};
    }
  } else {
    fail("model.kind", "unknown model '" + kind + "'");
  }
  if (spec.model) wrap("model", [&] { spec.model->validate(); });
  return spec;
}

QuenchSchedule parse_schedule(const json& j) {
  const Section s(j, "schedule", {"eta", "T", "mode", "t_max"});
  QuenchSchedule q;
  q.eta = positive_int(s, "eta", 1, 100000);
  q.T = s.number("T", 1.0);
  wrap("schedule.mode", [&] { q.mode = parse_schedule_mode(s.string("mode", "fresh")); });
  q.t_max = s.number("t_max", 2.0 * q.T);
  wrap("schedule", [&] { q.validate(); });
  return q;
}

const std::set<std::string> kStateNames = {
    "antiferromagnetic", "ghz", "all_up", "basis", "psi11", "psi20", "psi22", "fock",
    "bh_ground", "random", "maximally_mixed", "flat", "pure"};

StateSpec parse_state(const json& j) {
  const Section s(j, "state", {"name", "occupation", "rank"});
  StateSpec st;
  st.name = s.string("name", st.name);
  if (!kStateNames.count(st.name)) fail(s.path("name"), "unknown test state '" + st.name + "'");
  st.occupation = s.int_list("occupation");
  if ((st.name == "basis" || st.name == "fock") && st.occupation.empty()) {
    fail(s.path("occupation"), "required for state '" + st.name + "'");
  }
  st.rank = static_cast<std::size_t>(positive_int(s, "rank", 1));
  return st;
}

MeasurementSpec parse_measurement(const json& j) {
  const Section s(j, "measurement", {"n_unitaries", "shots", "orders", "group_size"});
  MeasurementSpec m;
  m.n_unitaries = static_cast<std::size_t>(positive_int(s, "n_unitaries", 100, 10000000));
  if (s.has("shots")) {
    const json& v = s.raw("shots");
    if (v.is_string() && v.get<std::string>() == "inf") {
      m.shots = std::nullopt;
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 1) {
      m.shots = v.get<std::int64_t>();
    } else {
      fail(s.path("shots"), "expected a positive integer or \"inf\"");
    }
  }
  if (s.has("orders")) m.orders = s.int_list("orders");
  if (m.orders.empty()) fail(s.path("orders"), "needs at least one order");
  for (int n : m.orders) {
    if (n < 1 || n > 8) fail(s.path("orders"), "orders must lie in [1, 8]");
  }
  m.group_size = static_cast<std::size_t>(positive_int(s, "group_size", 1));
  return m;
}

ImperfectionSpec parse_imperfections(const json& j) {
  const Section s(j, "imperfections", {"channel", "fidelity", "jitter", "jitter_max_dim"});
  ImperfectionSpec im;
  if (s.has("channel")) {
    const Section c(s.raw("channel"), s.path("channel"), {"kind", "p"});
    ChannelSpec spec;
    wrap(c.path("kind"), [&] { spec.kind = parse_channel_kind(c.string("kind", "dephasing")); });
    spec.p = c.number("p", 0.0);
    wrap(s.path("channel"), [&] { spec.validate(); });
    im.channel = spec;
  }
  if (s.has("fidelity")) {
    const Section f(s.raw("fidelity"), s.path("fidelity"), {"p"});
    FidelitySpec spec{f.number("p", 0.0)};
    wrap(s.path("fidelity"), [&] { spec.validate(); });
    im.fidelity = spec;
  }
  im.jitter = s.number("jitter", 0.0);
  if (!(im.jitter >= 0.0)) fail(s.path("jitter"), "must be >= 0");
  im.jitter_max_dim = static_cast<std::size_t>(positive_int(s, "jitter_max_dim", 1024, 1 << 14));
  return im;
}

ExperimentConfig parse_point(const json& doc) {
  const Section root(doc, "", {"seed", "output", "threads", "model", "schedule", "state", "measurement",
                               "repetitions", "imperfections", "chaos", "sweep"});
  ExperimentConfig cfg;
  if (!doc.contains("model")) fail("model", "required");
  cfg.model = parse_model(doc.at("model"));
  cfg.schedule = parse_schedule(doc.value("schedule", json::object()));
  cfg.state = parse_state(doc.value("state", json::object()));
  cfg.measurement = parse_measurement(doc.value("measurement", json::object()));
  cfg.repetitions = positive_int(root, "repetitions", 1, 100000);
  cfg.imperfections = parse_imperfections(doc.value("imperfections", json::object()));
  const json chaos_doc = doc.value("chaos", json::object());
  const Section chaos(chaos_doc, "chaos", {"baselines", "histogram"});
  cfg.chaos.baselines = chaos.boolean("baselines", true);
  cfg.chaos.histogram = chaos.boolean("histogram", false);
  for (int n : cfg.measurement.orders) {
    if (cfg.measurement.shots && *cfg.measurement.shots < n) {
      fail("measurement.shots", "must be at least the largest Renyi order");
    }
  }
  return cfg;
}

void assign_path(json& doc, const std::string& dotted, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) fail("sweep", "malformed key '" + dotted + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    if (!node->is_object()) fail("sweep." + dotted, "path runs through a non-object value");
    start = dot + 1;
  }
}

}  // namespace

ExperimentPlan parse_plan(const std::string& json_text, std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "expected a JSON object");
  ExperimentPlan plan;
  if (seed_override) {
    doc["seed"] = *seed_override;
  } else if (!doc.contains("seed") || !doc.at("seed").is_number_unsigned()) {
    fail("seed", "required non-negative integer (or pass --seed)");
  }
  plan.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) fail("output", "expected a string");
    plan.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_integer() || doc.at("threads").get<std::int64_t>() < 1) {
      fail("threads", "expected a positive integer");
    }
    plan.threads = doc.at("threads").get<unsigned>();
  }
  plan.canonical = doc.dump();
  plan.hash = fnv1a64(plan.canonical);

  json base = doc;
  base.erase("sweep");
  std::vector<std::vector<json>> values;
  if (doc.contains("sweep")) {
    const json& sweep = doc.at("sweep");
    if (!sweep.is_object()) fail("sweep", "expected an object of dotted key -> list of values");
    for (const auto& [key, list] : sweep.items()) {
      if (key == "seed" || key == "sweep" || key == "output" || key == "threads" || key.rfind("sweep.", 0) == 0) {
        fail("sweep." + key, "cannot be swept");
      }
      if (!list.is_array() || list.empty()) fail("sweep." + key, "expected a non-empty list");
      plan.sweep_keys.push_back(key);
      values.emplace_back(list.begin(), list.end());
    }
  }
  // Cartesian product in key order, last key fastest.
  std::vector<std::size_t> idx(values.size(), 0);
  while (true) {
    GridPoint gp;
    json point = base;
    for (std::size_t k = 0; k < values.size(); ++k) {
      assign_path(point, plan.sweep_keys[k], values[k][idx[k]]);
      const json& v = values[k][idx[k]];
      gp.assignments.emplace_back(plan.sweep_keys[k], v.is_string() ? v.get<std::string>() : v.dump());
    }
    gp.config = parse_point(point);
    gp.config.seed = plan.seed;
    plan.points.push_back(std::move(gp));
    std::size_t k = values.size();
    while (k > 0) {
      --k;
      if (++idx[k] < values[k].size()) break;
      idx[k] = 0;
      if (k == 0) return plan;
    }
    if (values.empty()) return plan;
  }
}

ExperimentPlan load_plan(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_plan(ss.str(), seed_override);
}

}  // namespace qdesign
