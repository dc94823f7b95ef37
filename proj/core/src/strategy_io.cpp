#include "lupi/strategy_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lupi/errors.hpp"

namespace lupi {

namespace {

Strategy checked(int n, std::vector<double> probs) {
  if (n < 1) throw ValidationError("strategy n must be positive");
  if (static_cast<int>(probs.size()) != n) {
    throw ValidationError("strategy declares n=" + std::to_string(n) + " but lists " +
                          std::to_string(probs.size()) + " probabilities");
  }
  return Strategy(std::move(probs));
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Strategy parse_strategy_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n)) throw ValidationError("strategy text: missing n");
  if (n < 1 || n > 1'000'000) throw ValidationError("strategy text: bad n");
  std::vector<double> probs;
  double v = 0.0;
  while (in >> v) probs.push_back(v);
  if (!in.eof()) throw ValidationError("strategy text: non-numeric probability");
  return checked(static_cast<int>(n), std::move(probs));
}

Strategy parse_strategy_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("strategy json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("probs")) {
    throw ValidationError("strategy json: expected {\"n\": int, \"probs\": [...]}");
  }
  if (!doc["n"].is_number_integer() || !doc["probs"].is_array()) {
    throw ValidationError("strategy json: wrong field types");
  }
  std::vector<double> probs;
  for (const auto& v : doc["probs"]) {
    if (!v.is_number()) throw ValidationError("strategy json: non-numeric probability");
    probs.push_back(v.get<double>());
  }
  return checked(doc["n"].get<int>(), std::move(probs));
}

Strategy parse_strategy(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_strategy_json(text) : parse_strategy_text(text);
  }
  throw ValidationError("strategy: empty input");
}

Strategy read_strategy_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open strategy file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_strategy(buf.str());
}

std::string format_strategy_text(const Strategy& s) {
  std::string out = std::to_string(s.n()) + "\n";
  for (int i = 1; i <= s.n(); ++i) {
    if (i > 1) out += ' ';
    out += format_double(s.prob(i));
  }
  out += '\n';
  return out;
}

std::string format_strategy_json(const Strategy& s) {
  nlohmann::json doc;
  doc["n"] = s.n();
  doc["probs"] = std::vector<double>(s.probs().begin(), s.probs().end());
  return doc.dump();
}

}  // namespace lupi
