#include "lupi/serialize.hpp"

#include <json.hpp>

namespace lupi {

namespace {

using nlohmann::json;

json probs_json(const Strategy& s) { return std::vector<double>(s.probs().begin(), s.probs().end()); }

template <class T>
json optional_list(const std::vector<std::optional<T>>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

}  // namespace

const char* to_string(RootStatus s) { return s == RootStatus::kRealRoot ? "real-root" : "no-real-root"; }

std::string to_json(const NESolution& s) {
  json doc;
  doc["n"] = s.strategy.n();
  doc["strategy"] = probs_json(s.strategy);
  doc["c_ne"] = s.c_ne;
  doc["residual"] = s.residual;
  doc["iterations"] = s.iterations;
  doc["converged"] = s.converged;
  return doc.dump(2);
}

std::string to_json(const SequentialResult& r) {
  json doc;
  doc["c0"] = r.c0;
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"i", e.i},
                       {"p_i", e.p ? json(*e.p) : json(nullptr)},
                       {"status", to_string(e.status)},
                       {"residual", e.residual}});
  }
  doc["entries"] = entries;
  doc["prefix_sum"] = r.prefix_sum;
  return doc.dump(2);
}

std::string to_json(const C0Interval& c) {
  json doc{{"lower", c.lower}, {"upper", c.upper}, {"depth", c.depth}};
  return doc.dump(2);
}

std::string to_json(const SimulationStats& s) {
  json doc;
  doc["rounds"] = s.rounds;
  doc["choice_counts"] = s.choice_counts;
  doc["win_counts"] = s.win_counts;
  doc["est_ci"] = optional_list(s.est_ci);
  doc["std_err"] = optional_list(s.std_err);
  doc["win_rate"] = s.win_rate;
  doc["win_rate_std_err"] = s.win_rate_std_err;
  doc["seed"] = s.seed;
  doc["shard_count"] = s.shard_count;
  doc["generator"] = s.generator;
  return doc.dump(2);
}

std::string to_json(const CneResult& r) {
  json doc;
  doc["c_ne"] = r.c_ne;
  doc["strategy"] = probs_json(r.strategy);
  doc["sum_deviation"] = r.sum_deviation;
  doc["iterations"] = r.iterations;
  return doc.dump(2);
}

std::string to_json(const BestSymmetricResult& r) {
  json doc;
  doc["strategy"] = probs_json(r.strategy);
  doc["w"] = r.w;
  doc["iterations"] = r.iterations;
  doc["converged"] = r.converged;
  doc["starts"] = r.starts;
  return doc.dump(2);
}

std::string to_json(const PayoffReport& r) {
  json doc;
  doc["w"] = r.w;
  doc["per_number"] = r.per_number.values;
  return doc.dump(2);
}

}  // namespace lupi
