#include "drg/families.hpp"

#include <charconv>
#include <map>
#include <set>

namespace drg {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw BadParam("family parameter " + key + "='" + value + "' is not an integer");
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  try {
    std::string t = trim(text);
    if (t.empty()) throw BadParam("empty coefficient");
    return Rational(t);
  } catch (const std::exception&) {
    throw BadParam("coefficient '" + text + "' is not a rational number");
  }
}

std::vector<RecurrenceCoeffs> parse_custom(const std::string& body) {
  std::string s = trim(body);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw BadParam("custom recurrence must look like custom:[1,0,0;1/4,1/2,1/4;0,0,1]");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<RecurrenceCoeffs> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    std::string triple = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::vector<Rational> parts;
    std::size_t p = 0;
    while (p <= triple.size()) {
      std::size_t q = triple.find(',', p);
      parts.push_back(parse_rational(triple.substr(p, q == std::string::npos ? std::string::npos : q - p)));
      if (q == std::string::npos) break;
      p = q + 1;
    }
    if (parts.size() != 3) throw BadParam("custom recurrence triple '" + triple + "' needs three entries");
    out.push_back({parts[0], parts[1], parts[2]});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

FamilySpec parse_family(const std::string& text_in) {
  const std::string text = trim(text_in);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "octahedron") {
    if (!body.empty()) throw BadParam("octahedron takes no parameters");
    return FamilySpec::octahedron();
  }
  if (kind == "custom") {
    FamilySpec s;
    s.kind = FamilyKind::CustomRecurrence;
    s.custom = parse_custom(body);
    s.validate();
    return s;
  }

  static const std::map<std::string, std::set<std::string>> keys{
      {"complete", {"N"}},           {"hamming", {"D", "N"}}, {"johnson", {"v", "D"}},
      {"qjohnson", {"q", "v", "D"}}, {"gamma", {"a", "b"}},
  };
  auto it = keys.find(kind);
  if (it == keys.end()) throw BadParam("unknown family kind '" + kind + "'");

  std::map<std::string, int> values;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find(',', start);
    std::string item = trim(body.substr(start, end == std::string::npos ? std::string::npos : end - start));
    auto eq = item.find('=');
    if (eq == std::string::npos) throw BadParam("family parameter '" + item + "' must be key=value");
    std::string key = trim(item.substr(0, eq));
    if (!it->second.count(key)) throw BadParam("unknown key '" + key + "' for family " + kind);
    if (values.count(key)) throw BadParam("duplicate key '" + key + "'");
    values[key] = parse_int(key, trim(item.substr(eq + 1)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  for (const auto& k : it->second) {
    if (!values.count(k)) throw BadParam("missing key '" + k + "' for family " + kind);
  }

  if (kind == "complete") return FamilySpec::complete(values["N"]);
  if (kind == "hamming") return FamilySpec::hamming(values["D"], values["N"]);
  if (kind == "johnson") return FamilySpec::johnson(values["v"], values["D"]);
  if (kind == "qjohnson") return FamilySpec::q_johnson(values["q"], values["v"], values["D"]);
  return FamilySpec::gamma(values["a"], values["b"]);
}

}  // namespace drg
