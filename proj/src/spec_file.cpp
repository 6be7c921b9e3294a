#include "regprod/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

#include "regprod/error.hpp"

namespace regprod {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

const std::map<std::string, std::set<std::string>>& keys_by_kind() {
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"lucas_u", {"name", "kind", "P", "Q"}},
      {"lucas_v", {"name", "kind", "P", "Q"}},
      {"geometric", {"name", "kind", "growth_ratio", "amplitude"}},
      {"table", {"name", "kind", "growth_ratio", "amplitude", "correction_K", "correction_rho", "terms"}},
  };
  return kKeys;
}

bool is_known_key(const std::string& key) {
  for (const auto& [kind, keys] : keys_by_kind()) {
    if (keys.contains(key)) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& message) const { throw SpecFileError(source_, line, message); }

  void read(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string content = trim(raw);
      if (content.empty()) continue;
      const auto eq = content.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value'");
      const std::string key = trim(std::string_view(content).substr(0, eq));
      const std::string value = trim(std::string_view(content).substr(eq + 1));
      if (key.empty()) fail(line, "missing key before '='");
      if (!is_known_key(key)) fail(line, "unknown key '" + key + "'");
      if (entries_.contains(key)) fail(line, "duplicate key '" + key + "' (first on line " +
                                               std::to_string(entries_[key].line) + ")");
      if (value.empty()) fail(line, "empty value for '" + key + "'");
      entries_[key] = Entry{value, line};
    }
    last_line_ = line;
  }

  const Entry& require(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) fail(last_line_, "missing required key '" + key + "'");
    return it->second;
  }

  long integer(const std::string& key) const {
    const Entry& e = require(key);
    static const std::regex kInteger(R"([+-]?[0-9]+)");
    if (!std::regex_match(e.value, kInteger)) fail(e.line, key + ": not an integer: '" + e.value + "'");
    const char* begin = e.value.data() + (e.value.front() == '+' ? 1 : 0);
    long out = 0;
    const auto [ptr, ec] = std::from_chars(begin, e.value.data() + e.value.size(), out);
    constexpr long kLimit = 1L << 30;
    if (ec != std::errc() || out > kLimit || out < -kLimit) fail(e.line, key + ": integer out of range");
    return out;
  }

  // Syntax-checked decimal literal.
  const std::string& decimal(const std::string& key) const {
    const Entry& e = require(key);
    try {
      BigReal::parse(e.value, Precision::from_digits(30));
    } catch (const std::invalid_argument&) {
      fail(e.line, key + ": not a decimal number: '" + e.value + "'");
    }
    return e.value;
  }

  BigReal number(const std::string& key) const { return BigReal::parse(decimal(key), Precision::from_digits(60)); }

  SequenceSpec build() const {
    const Entry& kind = require("kind");
    const auto allowed = keys_by_kind().find(kind.value);
    if (allowed == keys_by_kind().end()) {
      fail(kind.line, "unknown kind '" + kind.value + "' (expected lucas_u, lucas_v, geometric or table)");
    }
    for (const auto& [key, entry] : entries_) {
      if (!allowed->second.contains(key)) fail(entry.line, "key '" + key + "' is not valid for kind " + kind.value);
    }
    const Entry& name = require("name");
    static const std::regex kIdentifier(R"([A-Za-z_][A-Za-z0-9_-]*)");
    if (!std::regex_match(name.value, kIdentifier)) fail(name.line, "name must be an identifier");

    if (kind.value == "lucas_u" || kind.value == "lucas_v") {
      const long p = integer("P");
      const long q = integer("Q");
      try {
        return SequenceSpec::lucas(name.value,
                                   LucasParams{p, q, kind.value == "lucas_u" ? LucasVariant::kU : LucasVariant::kV});
      } catch (const Error& e) {
        fail(require("P").line, e.what());
      }
    }

    const std::string& growth = decimal("growth_ratio");
    if (!(number("growth_ratio") > 1L)) fail(require("growth_ratio").line, "growth_ratio must exceed 1 (r <= 1)");
    const std::string& amplitude = decimal("amplitude");
    if (!(number("amplitude") > 0L)) fail(require("amplitude").line, "amplitude must be positive");
    if (kind.value == "geometric") return SequenceSpec::geometric(name.value, growth, amplitude);

    const std::string& k = decimal("correction_K");
    if (!(number("correction_K") > 0L)) fail(require("correction_K").line, "correction_K must be positive");
    const std::string& rho = decimal("correction_rho");
    const BigReal rho_value = number("correction_rho");
    if (!(rho_value > 0L && rho_value < 1L)) fail(require("correction_rho").line, "correction_rho must lie in (0, 1)");

    const Entry& terms_entry = require("terms");
    std::vector<std::string> terms;
    std::istringstream words(terms_entry.value);
    for (std::string word; words >> word;) {
      try {
        BigReal::parse(word, Precision::from_digits(30));
      } catch (const std::invalid_argument&) {
        fail(terms_entry.line, "terms: entry " + std::to_string(terms.size() + 1) + " is not a decimal number: '" +
                                   word + "'");
      }
      terms.push_back(word);
    }
    if (terms.size() < 8) {
      fail(terms_entry.line, "table needs at least 8 terms, got " + std::to_string(terms.size()));
    }
    try {
      return SequenceSpec::table(name.value, std::move(terms), growth, amplitude, k, rho);
    } catch (const Error& e) {
      fail(terms_entry.line, e.what());
    }
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
  int last_line_ = 0;
};

}  // namespace

SpecFileError::SpecFileError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

SequenceSpec parse_spec_text(std::string_view text, const std::string& source) {
  Parser parser(source);
  parser.read(text);
  return parser.build();
}

SequenceSpec parse_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecFileError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str(), path.string());
}

}  // namespace regprod
