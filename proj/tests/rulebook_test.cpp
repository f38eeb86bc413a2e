#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "roadrules/consistency.hpp"
#include "roadrules/corpus.hpp"
#include "roadrules/engine.hpp"
#include "roadrules/rulefile.hpp"
#include "support/oracle.hpp"

namespace roadrules {
namespace {

int error_line(const char* text) {
  try {
    parse_rulefile(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseRulefile, ReadsTheDocumentedStanza) {
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule r226a standard | visibilitySeriouslyReduced | | "
      "must headlights_on, should fog_lights_on\n");
  ASSERT_EQ(rb.size(), 1u);
  const Rule* r = rb.find("r226a");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->context().name(), "standard");
  EXPECT_EQ(r->beliefs(), AtomSet{Atom("visibilitySeriouslyReduced")});
  EXPECT_TRUE(r->intentions().empty());
  std::set<ActionPair> expected{{Label::must, Atom("headlights_on")},
                                {Label::should, Atom("fog_lights_on")}};
  EXPECT_EQ(r->action_pairs(), expected);
}

TEST(ParseRulefile, ContextsOnlyFileYieldsEmptyRuleBase) {
  RuleBase rb = parse_rulefile("contexts standard emergency\n");
  EXPECT_TRUE(rb.empty());
  EXPECT_EQ(rb.contexts().size(), 2u);
}

TEST(ParseRulefile, RejectsUnknownLabelKeyword) {
  const char* text =
      "contexts standard\n"
      "rule r1 standard | a | | shall stop\n";
  try {
    parse_rulefile(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(e.reason().find("shall"), std::string::npos);
  }
}

TEST(ParseRulefile, RejectsDuplicateRuleName) {
  EXPECT_EQ(error_line("contexts standard\n"
                       "rule r1 standard | a | | must x\n"
                       "rule r1 standard | b | | must y\n"),
            3);
}

TEST(ParseRulefile, RejectsUndeclaredContext) {
  EXPECT_EQ(error_line("contexts standard\n"
                       "rule r1 motorway | a | | must x\n"),
            2);
}

TEST(ParseRulefile, RejectsMalformedAtom) {
  EXPECT_EQ(error_line("contexts standard\n"
                       "rule r1 standard | Bad-Atom | | must x\n"),
            2);
}

TEST(ParseRulefile, RejectsEmptyActionList) {
  EXPECT_EQ(error_line("contexts standard\n"
                       "rule r1 standard | a | |\n"),
            2);
}

TEST(ParseRulefile, RejectsMalformedStanzaShape) {
  EXPECT_EQ(error_line("contexts standard\nrule r1 standard | a | must x\n"),
            2);
  EXPECT_EQ(error_line("wibble foo\n"), 1);
}

TEST(ParseRulefile, ContextDeclarationMayFollowItsUse) {
  RuleBase rb = parse_rulefile(
      "rule r1 standard | a | | must x\n"
      "contexts standard\n");
  EXPECT_EQ(rb.size(), 1u);
}

TEST(ParseRulefile, StanzaOrderDoesNotMatter) {
  std::string_view corpus = corpus_text("uk_highway_sample");
  RuleBase original = parse_rulefile(corpus);

  std::vector<std::string> lines;
  std::istringstream in{std::string(corpus)};
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  std::mt19937 rng(3);
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string shuffled;
  for (const std::string& l : lines) shuffled += l + "\n";

  EXPECT_EQ(parse_rulefile(shuffled), original);
}

TEST(ParseRulefile, RecordsLineSpansForEveryRule) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  for (const Rule& r : rb.rules()) {
    ASSERT_TRUE(rb.source().spans.count(r.name()) == 1) << r.name();
    EXPECT_GT(rb.source().spans.at(r.name()).first, 0);
  }
}

TEST(SerializeRulebase, RoundTripsTheShippedCorpus) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  EXPECT_EQ(parse_rulefile(serialize_rulebase(rb)), rb);
}

TEST(SerializeRulebase, ListsRulesInAscendingNameOrder) {
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule zz standard | a | | must x\n"
      "rule aa standard | b | | must y\n");
  std::string text = serialize_rulebase(rb);
  EXPECT_LT(text.find("rule aa"), text.find("rule zz"));
}

TEST(SerializeRulebase, SerializeParseSerializeIsAFixedPoint) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  std::string once = serialize_rulebase(rb);
  std::string twice = serialize_rulebase(parse_rulefile(once));
  EXPECT_EQ(once, twice);
}

TEST(CheckConsistency, FindsMustNegationPairWithWitness) {
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule ra standard | a | | must stop\n"
      "rule rb standard | b | | must not_stop\n");
  ConsistencyReport report = check_consistency(rb);
  ASSERT_EQ(report.conflicts.size(), 1u);
  const Conflict& c = report.conflicts[0];
  EXPECT_EQ(c.rule_a, "ra");
  EXPECT_EQ(c.rule_b, "rb");
  EXPECT_EQ(c.witness.beliefs(), (AtomSet{Atom("a"), Atom("b")}));
  // The witness triggers both rules.
  EXPECT_TRUE(testing::oracle_applicable(c.witness, *rb.find("ra")));
  EXPECT_TRUE(testing::oracle_applicable(c.witness, *rb.find("rb")));
}

TEST(CheckConsistency, OppositeLampActionsConflictOnlyWhenDeclaredExclusive) {
  const char* base =
      "contexts standard\n"
      "rule ra standard | a | | must fog_lights_on\n"
      "rule rb standard | b | | must fog_lights_off\n";
  EXPECT_TRUE(check_consistency(parse_rulefile(base)).clean());

  std::string declared = std::string(base) +
                         "exclusive fog_lights_on fog_lights_off\n";
  ConsistencyReport report = check_consistency(parse_rulefile(declared));
  ASSERT_EQ(report.conflicts.size(), 1u);
  EXPECT_EQ(report.conflicts[0].atom_a.name(), "fog_lights_on");
}

TEST(CheckConsistency, DifferentContextsNeverConflict) {
  RuleBase rb = parse_rulefile(
      "contexts standard emergency\n"
      "rule ra standard | a | | must stop\n"
      "rule rb emergency | b | | must not_stop\n");
  EXPECT_TRUE(check_consistency(rb).clean());
}

TEST(CheckConsistency, ShouldStrengthDoesNotConflict) {
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule ra standard | a | | should stop\n"
      "rule rb standard | b | | must not_stop\n");
  EXPECT_TRUE(check_consistency(rb).clean());
}

TEST(CheckConsistency, ReportsExactDuplicates) {
  RuleBase rb = parse_rulefile(
      "contexts standard\n"
      "rule ra standard | a | | must x\n"
      "rule rb standard | a | | must x\n"
      "rule rc standard | b | | must x\n");
  ConsistencyReport report = check_consistency(rb);
  ASSERT_EQ(report.duplicates.size(), 1u);
  EXPECT_EQ(report.duplicates[0].rule_a, "ra");
  EXPECT_EQ(report.duplicates[0].rule_b, "rb");
}

TEST(CheckConsistency, SymmetricAndNoSelfConflicts) {
  // The same pair of rules under swapped stanza order yields the same
  // finding; a rule is never reported against itself.
  const char* forward =
      "contexts standard\n"
      "rule ra standard | a | | must stop\n"
      "rule rb standard | b | | must not_stop\n";
  const char* backward =
      "contexts standard\n"
      "rule rb standard | b | | must not_stop\n"
      "rule ra standard | a | | must stop\n";
  ConsistencyReport r1 = check_consistency(parse_rulefile(forward));
  ConsistencyReport r2 = check_consistency(parse_rulefile(backward));
  ASSERT_EQ(r1.conflicts.size(), 1u);
  EXPECT_EQ(r1.conflicts, r2.conflicts);
  EXPECT_NE(r1.conflicts[0].rule_a, r1.conflicts[0].rule_b);
}

TEST(LoadNamedCorpus, ShipsTheHighwayCodeSample) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  EXPECT_GE(rb.size(), 25u);
  for (const char* name : {"r226a", "r226b", "r236a", "r236b", "r109a",
                           "r144", "r162", "r163", "r180"}) {
    EXPECT_NE(rb.find(name), nullptr) << name;
  }
}

TEST(LoadNamedCorpus, LoadsAreEqual) {
  EXPECT_EQ(load_named_corpus("uk_highway_sample"),
            load_named_corpus("uk_highway_sample"));
}

TEST(LoadNamedCorpus, UnknownNameThrows) {
  EXPECT_THROW(load_named_corpus("de_stvo"), std::invalid_argument);
}

TEST(ShippedCorpus, EveryRuleHasKnownContextAndActions) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  for (const Rule& r : rb.rules()) {
    EXPECT_TRUE(r.context() == ContextId("standard") ||
                r.context() == ContextId("emergency"))
        << r.name();
    EXPECT_FALSE(r.action_pairs().empty()) << r.name();
  }
}

TEST(ShippedCorpus, HasNoMustConflicts) {
  ConsistencyReport report =
      check_consistency(load_named_corpus("uk_highway_sample"));
  EXPECT_TRUE(report.clean());
}

TEST(ShippedCorpus, ReproducesRedLightStopQuery) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  Situation s(ContextId("standard"), AtomSet{Atom("lightRed")},
              AtomSet{Atom("approachingTrafficLight")});
  std::vector<ActionPair> expected{{Label::must, Atom("stop_at_white_line")}};
  EXPECT_EQ(recommended(s, rb), expected);
}

TEST(ShippedCorpus, FileOnDiskMatchesTheEmbeddedText) {
  std::ifstream in(std::string(ROADRULES_SOURCE_DIR) +
                       "/corpora/uk_highway_sample.rules",
                   std::ios::binary);
  ASSERT_TRUE(in.is_open());
  std::ostringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), corpus_text("uk_highway_sample"));
}

TEST(ShippedCorpus, EmergencyContextRuleIsQueryable) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  Situation s(ContextId("emergency"), AtomSet{Atom("vehicleBrokenDown")}, {});
  std::vector<ActionPair> expected{
      {Label::must, Atom("hazard_lights_on")},
      {Label::should, Atom("move_off_carriageway")}};
  EXPECT_EQ(recommended(s, rb), expected);
  // The same beliefs in the standard context trigger nothing.
  Situation standard(ContextId("standard"), AtomSet{Atom("vehicleBrokenDown")},
                     {});
  EXPECT_TRUE(recommended(standard, rb).empty());
}

TEST(ShippedCorpus, BenchQueryAtomsAllInVocabulary) {
  RuleBase rb = load_named_corpus("uk_highway_sample");
  Situation s(
      ContextId("standard"),
      AtomSet{Atom("vehicleSafe"), Atom("headlightsOff"),
              Atom("allChildrenUsingChildSeatAsRequired"),
              Atom("canReadNumberPlate"), Atom("exitClear"),
              Atom("dualCarriageWay"),
              Atom("vehicleDoesntFitsInCentralReservation"),
              Atom("roadAheadClear"), Atom("fuel"), Atom("driving"),
              Atom("completeOvertakeBeforeSolidWhiteLine"),
              Atom("routePlanned"), Atom("lightRed"),
              Atom("allPassengersWearingSeatBeltsAsRequired"),
              Atom("sidelightsOff")},
      AtomSet{Atom("approachingTrafficLight")});
  EXPECT_TRUE(advise(s, rb).unknown_atoms.empty());
}

}  // namespace
}  // namespace roadrules
