#include "roadrules/rulefile.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace roadrules {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

Atom parse_atom(std::string_view text, int line) {
  if (!Atom::valid_name(text)) {
    throw ParseError(line, "malformed atom: '" + std::string(text) + "'");
  }
  return Atom(std::string(text));
}

AtomSet parse_atom_csv(std::string_view section, int line) {
  AtomSet atoms;
  section = trim(section);
  if (section.empty()) return atoms;
  for (std::string_view item : split(section, ',')) {
    atoms.insert(parse_atom(trim(item), line));
  }
  return atoms;
}

std::set<ActionPair> parse_action_csv(std::string_view section, int line) {
  std::set<ActionPair> pairs;
  section = trim(section);
  if (section.empty()) {
    throw ParseError(line, "empty action list");
  }
  for (std::string_view item : split(section, ',')) {
    auto words = tokens(item);
    if (words.size() != 2) {
      throw ParseError(line, "expected '<label> <action>', got '" +
                                 std::string(trim(item)) + "'");
    }
    auto label = parse_label(words[0]);
    if (!label) {
      throw ParseError(line,
                       "unknown label keyword: '" + std::string(words[0]) +
                           "' (expected 'must' or 'should')");
    }
    pairs.insert(ActionPair{*label, parse_atom(words[1], line)});
  }
  return pairs;
}

struct PendingRule {
  Rule rule;
  LineSpan span;
};

}  // namespace

ParseError::ParseError(int line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line),
      reason_(reason) {}

RuleBase parse_rulefile(std::string_view text, std::string path) {
  RuleBase::Builder builder;
  std::vector<PendingRule> pending;
  std::set<ContextId> declared;
  RuleSource source;
  source.path = std::move(path);

  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    auto head = tokens(line);
    if (head.empty()) {
      throw ParseError(line_no, "missing keyword");
    }
    std::string_view keyword = head[0];

    if (keyword == "contexts") {
      if (head.size() < 2) {
        throw ParseError(line_no, "contexts declaration names no context");
      }
      for (std::size_t i = 1; i < head.size(); ++i) {
        if (!Atom::valid_name(head[i])) {
          throw ParseError(line_no, "malformed context id: '" +
                                        std::string(head[i]) + "'");
        }
        ContextId context{std::string(head[i])};
        declared.insert(context);
        builder.declare_context(std::move(context));
      }
    } else if (keyword == "vocab") {
      for (std::size_t i = 1; i < head.size(); ++i) {
        builder.declare_vocabulary(parse_atom(head[i], line_no));
      }
    } else if (keyword == "exclusive") {
      if (head.size() != 3) {
        throw ParseError(line_no, "exclusive expects exactly two atoms");
      }
      builder.declare_exclusion(parse_atom(head[1], line_no),
                                parse_atom(head[2], line_no));
    } else if (keyword == "rule") {
      auto sections = split(line, '|');
      if (sections.size() != 4) {
        throw ParseError(
            line_no,
            "rule stanza needs 4 '|'-separated sections, found " +
                std::to_string(sections.size()));
      }
      auto header = tokens(sections[0]);
      if (header.size() != 3) {
        throw ParseError(line_no, "rule header must be 'rule <name> <context>'");
      }
      if (!Atom::valid_name(header[1])) {
        throw ParseError(line_no,
                         "malformed rule name: '" + std::string(header[1]) + "'");
      }
      if (!Atom::valid_name(header[2])) {
        throw ParseError(line_no, "malformed context id: '" +
                                      std::string(header[2]) + "'");
      }
      std::string name(header[1]);
      if (std::any_of(pending.begin(), pending.end(),
                      [&](const PendingRule& p) {
                        return p.rule.name() == name;
                      })) {
        throw ParseError(line_no, "duplicate rule name: '" + name + "'");
      }
      Situation trigger(ContextId(std::string(header[2])),
                        parse_atom_csv(sections[1], line_no),
                        parse_atom_csv(sections[2], line_no));
      pending.push_back(
          PendingRule{Rule(std::move(name), std::move(trigger),
                           parse_action_csv(sections[3], line_no)),
                      LineSpan{line_no, line_no}});
    } else {
      throw ParseError(line_no,
                       "unknown keyword: '" + std::string(keyword) + "'");
    }
  }

  // Contexts may be declared anywhere in the file, so rule contexts are
  // validated only after the full pass.
  for (PendingRule& p : pending) {
    source.spans.emplace(p.rule.name(), p.span);
    if (declared.count(p.rule.context()) == 0) {
      throw ParseError(p.span.first, "undeclared context: '" +
                                         p.rule.context().name() +
                                         "' in rule '" + p.rule.name() + "'");
    }
    builder.add_rule(std::move(p.rule));
  }
  builder.source(std::move(source));
  return std::move(builder).build();
}

std::string serialize_rulebase(const RuleBase& rb) {
  std::ostringstream out;

  if (!rb.contexts().empty()) {
    out << "contexts";
    for (const ContextId& context : rb.contexts()) out << ' ' << context.name();
    out << '\n';
  }
  if (!rb.vocabulary().empty()) {
    out << "vocab";
    for (const Atom& atom : rb.vocabulary()) out << ' ' << atom.name();
    out << '\n';
  }
  for (const auto& [a, b] : rb.exclusions()) {
    out << "exclusive " << a.name() << ' ' << b.name() << '\n';
  }
  for (const Rule& rule : rb.rules()) {
    out << "rule " << rule.name() << ' ' << rule.context().name();
    for (const AtomSet* atoms : {&rule.beliefs(), &rule.intentions()}) {
      out << " |";
      bool first = true;
      for (const Atom& atom : *atoms) {
        out << (first ? " " : ", ") << atom.name();
        first = false;
      }
    }
    out << " |";
    bool first = true;
    for (const ActionPair& pair : rule.action_pairs()) {
      out << (first ? " " : ", ") << to_string(pair.label) << ' '
          << pair.action.name();
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace roadrules
