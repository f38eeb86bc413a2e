#include "roadrules/corpus.hpp"

#include <cstdint>
#include <stdexcept>

#include "embedded_data.hpp"
#include "roadrules/rulefile.hpp"

namespace roadrules {

std::vector<std::string> corpus_names() { return {"uk_highway_sample"}; }

std::string_view corpus_text(std::string_view name) {
  if (name == "uk_highway_sample") return detail::kUkHighwaySampleRules;
  throw std::invalid_argument("unknown corpus: '" + std::string(name) + "'");
}

RuleBase load_named_corpus(std::string_view name) {
  return parse_rulefile(corpus_text(name),
                        "<embedded:" + std::string(name) + ">");
}

std::string corpus_digest(const RuleBase& rb) {
  // FNV-1a, 64 bit: stable across platforms, unlike std::hash.
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : serialize_rulebase(rb)) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

}  // namespace roadrules
