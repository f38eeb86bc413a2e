#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roadrules/rules.hpp"

namespace roadrules {

/// Names of the corpora compiled into the library.
std::vector<std::string> corpus_names();

/// Raw rule-file text of an embedded corpus.
/// Throws std::invalid_argument for an unknown name.
std::string_view corpus_text(std::string_view name);

/// Parses and returns an embedded corpus. Currently shipped:
/// "uk_highway_sample", a ~30-rule motor-vehicle subset of the UK Highway
/// Code. Throws std::invalid_argument for an unknown name.
RuleBase load_named_corpus(std::string_view name);

/// FNV-1a 64-bit digest of the canonical serialization, as 16 lowercase hex
/// digits. Identifies the corpus in trace headers.
std::string corpus_digest(const RuleBase& rb);

}  // namespace roadrules
