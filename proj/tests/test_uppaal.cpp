#include <gtest/gtest.h>

#include "adlv/fuzz.hpp"
#include "adlv/parser.hpp"
#include "adlv/transform.hpp"
#include "adlv/uppaal.hpp"
#include "support/criteria.hpp"
#include "support/fixture.hpp"

using namespace adlv;

namespace {

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Uppaal, ToyDocument) {
  const auto out = export_xml(fixture::toy_responder(5));
  const std::string& x = out.xml;
  EXPECT_TRUE(out.warnings.empty());
  EXPECT_EQ(x.rfind("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<!DOCTYPE nta", 0), 0u);
  EXPECT_FALSE(contains(x, "<!-- adlv"));
  EXPECT_TRUE(contains(x, "broadcast chan req;"));
  EXPECT_TRUE(contains(x, "<name>Resp</name>"));
  EXPECT_TRUE(contains(x, "<declaration>clock y;"));
  EXPECT_TRUE(contains(x, "<label kind=\"invariant\" x=\"180\" y=\"15\">y &lt;= 5</label>"));
  EXPECT_TRUE(contains(x, "<label kind=\"guard\""));
  EXPECT_TRUE(contains(x, ">y &gt;= 5</label>"));
  EXPECT_TRUE(contains(x, ">resp!</label>"));
  EXPECT_TRUE(contains(x, ">req?</label>"));
  EXPECT_TRUE(contains(x, ">y = 0</label>"));
  EXPECT_TRUE(contains(x, "<system>system Req, Resp;</system>") || contains(x, "system Req, Resp;"));
  EXPECT_TRUE(contains(export_xml(fixture::toy_responder(5), "9.9").xml, "<!-- adlv 9.9 -->"));
}

TEST(Uppaal, FixtureTemplatesAndInstances) {
  const std::string x = export_xml(fixture::ssu_network()).xml;
  EXPECT_TRUE(contains(x, "<name>SteeringWheel</name>"));
  EXPECT_TRUE(contains(x, "C1 = SteeringWheel();"));
  EXPECT_TRUE(contains(x, "<committed/>"));
  EXPECT_TRUE(contains(x, "// alias: TimeTriggerOut"));
  EXPECT_TRUE(contains(x, "&amp;&amp;"));
  EXPECT_TRUE(contains(x, "// final: Done"));
}

TEST(Uppaal, ReservedNamesAreRenamed) {
  EXPECT_TRUE(is_uppaal_reserved("system"));
  EXPECT_TRUE(is_uppaal_reserved("chan"));
  EXPECT_FALSE(is_uppaal_reserved("Sense"));
  Network n = fixture::toy_responder(5);
  n.globals.push_back({"process", DataType::int_range(0, 2), 0, {}});
  n.automata[0].edges[0].updates = {{"process", make_int(1), {}}};
  const auto out = export_xml(n);
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_EQ(out.warnings[0].rule, "EXPORT-RESERVED");
  EXPECT_EQ(out.warnings[0].severity, Severity::Warning);
  EXPECT_TRUE(contains(out.xml, "int[0,2] process_v = 0;"));
  EXPECT_TRUE(contains(out.xml, "process_v = 1"));
  n.globals.push_back({"process_v", DataType::boolean(), 0, {}});
  EXPECT_THROW(export_xml(n), ExportError);
}

TEST(Uppaal, Queries) {
  const auto qs = parse_queries(R"(A[] not deadlock
A[] C1.x <= 3 imply not P.L
E<> P.L and v == 2
P.A or P.B --> P.C
response P.A => P.B within 7
response P.A => P.B within inf
)");
  const std::string q = export_queries(qs);
  EXPECT_TRUE(contains(q, "A[] not deadlock\n"));
  EXPECT_TRUE(contains(q, "A[] "));
  EXPECT_TRUE(contains(q, "E<> "));
  EXPECT_TRUE(contains(q, "(P.A or P.B) --> P.C\n"));
  EXPECT_TRUE(contains(q, "A[] !Obs.error\n"));
  EXPECT_TRUE(contains(q, "Obs.Run --> Obs.Init\n"));
  EXPECT_TRUE(contains(q, "//"));
}

TEST(Uppaal, ImportRestoresTheNetwork) {
  for (const Network& n : {fixture::toy_responder(5), fixture::ssu_network()}) {
    const Network back = import_xml(export_xml(n).xml);
    EXPECT_TRUE(isomorphic(back, n));
    EXPECT_EQ(export_xml(back).xml, export_xml(n).xml);
  }
  Network ssu = fixture::ssu_network();
  const Network back = import_xml(export_xml(ssu).xml);
  EXPECT_EQ(back.automata[0].final_exec, ssu.automata[0].final_exec);
  EXPECT_EQ(back.aliases, ssu.aliases);
  ssu.automata[2].edges[0].resets.clear();
  EXPECT_FALSE(isomorphic(back, ssu));
}

TEST(Uppaal, RandomNetworksRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Network n = random_network(seed);
    EXPECT_TRUE(isomorphic(import_xml(export_xml(n).xml), n)) << seed;
  }
}

TEST(Uppaal, FuzzedModelsRoundTrip) {
  const auto o = criteria::determinism_and_round_trip(20);
  EXPECT_TRUE(o.pass) << o.detail;
}

TEST(Uppaal, ObserverNetworkRoundTrips) {
  const Network n = attach_observer(fixture::ssu_network(),
                                    parse_queries("response C1.RTurn => C6.Run within 30").at(0));
  EXPECT_TRUE(isomorphic(import_xml(export_xml(n).xml), n));
}

TEST(Uppaal, EmptyNetwork) {
  const std::string x = export_xml(Network{}).xml;
  EXPECT_TRUE(contains(x, "<nta>"));
  EXPECT_TRUE(isomorphic(import_xml(x), Network{}));
}

TEST(Uppaal, MalformedInputIsRejected) {
  EXPECT_THROW(import_xml("<nta><template>"), ImportError);
  EXPECT_THROW(import_xml("not xml at all"), ImportError);
}
