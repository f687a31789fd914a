#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "zxmw.h"

using nlohmann::json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { zxmw_string_free(p); }
  json parsed() const { return json::parse(std::string(p)); }
};

struct Sys {
  zxmw_system* p = nullptr;
  ~Sys() { zxmw_system_free(p); }
};

struct Graph {
  zxmw_graph* p = nullptr;
  ~Graph() { zxmw_graph_free(p); }
};

}  // namespace

TEST_CASE("invalid arguments set an error message and return the invalid code") {
  Sys s;
  CHECK(zxmw_system_string("no-arrow-here", &s.p) == ZXMW_ERR_INVALID);
  CHECK(std::strlen(zxmw_last_error()) > 0);
  CHECK(zxmw_system_string("1->01", nullptr) == ZXMW_ERR_INVALID);
  Sys zx;
  CHECK(zxmw_system_zx(2, 2, "no-such-family", &zx.p) == ZXMW_ERR_INVALID);
}

TEST_CASE("string system evolves and exports consistent artifacts") {
  Sys s;
  REQUIRE(zxmw_system_string("1->01,0->10", &s.p) == ZXMW_OK);
  const char* inits[] = {"1"};
  Graph g;
  REQUIRE(zxmw_evolve(s.p, inits, 1, 4, 0, 0, 0, 0, 0, &g.p) == ZXMW_OK);
  long states = 0, events = 0;
  CHECK(zxmw_graph_state_count(g.p, &states) == ZXMW_OK);
  CHECK(zxmw_graph_event_count(g.p, &events) == ZXMW_OK);
  CHECK(states > 1);
  CHECK(events > 0);

  Str mj;
  REQUIRE(zxmw_graph_multiway_json(g.p, &mj.p) == ZXMW_OK);
  json j = mj.parsed();
  CHECK(j["states"].size() == std::size_t(states));
  CHECK(j["events"].size() == std::size_t(events));

  Str dot;
  REQUIRE(zxmw_graph_multiway_dot(g.p, &dot.p) == ZXMW_OK);
  CHECK(std::string(dot.p).find("digraph") != std::string::npos);

  Str cj;
  REQUIRE(zxmw_graph_causal_json(g.p, 1, &cj.p) == ZXMW_OK);
  CHECK(cj.parsed()["edges"].is_array());

  Str bj;
  REQUIRE(zxmw_graph_branchial_json(g.p, -1, &bj.p) == ZXMW_OK);
  CHECK(bj.parsed()["states"].is_array());
}

TEST_CASE("resource caps surface as the dedicated error code") {
  Sys s;
  REQUIRE(zxmw_system_string("1->01,0->10", &s.p) == ZXMW_OK);
  const char* inits[] = {"1"};
  Graph g;
  CHECK(zxmw_evolve(s.p, inits, 1, 9, 0, 4, 0, 0, 0, &g.p) == ZXMW_ERR_CAP);
}

TEST_CASE("worker count does not change exported bytes") {
  std::string first;
  for (int workers : {1, 4, 8}) {
    Sys s;
    REQUIRE(zxmw_system_set("{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}", &s.p) == ZXMW_OK);
    const char* inits[] = {"{{0,1},{2,1}}"};
    Graph g;
    REQUIRE(zxmw_evolve(s.p, inits, 1, 3, 0, 0, 0, workers, 0, &g.p) == ZXMW_OK);
    Str mj;
    REQUIRE(zxmw_graph_multiway_json(g.p, &mj.p) == ZXMW_OK);
    if (first.empty())
      first = mj.p;
    else
      CHECK(first == std::string(mj.p));
  }
}

TEST_CASE("turing and term systems are reachable through the same surface") {
  Sys tm;
  REQUIRE(zxmw_system_tm(2, 2, 0, &tm.p) == ZXMW_OK);
  const char* tmi[] = {"q1@0:0"};
  Graph g;
  REQUIRE(zxmw_evolve(tm.p, tmi, 1, 2, 1, 0, 0, 0, 0, &g.p) == ZXMW_OK);
  long states = 0;
  CHECK(zxmw_graph_state_count(g.p, &states) == ZXMW_OK);
  CHECK(states > 1);

  Sys term;
  REQUIRE(zxmw_system_term("g[x_,g[y_,z_]]:>g[g[x_,y_],z_]", &term.p) == ZXMW_OK);
  const char* ti[] = {"g[a,g[b,g[c,d]]]"};
  Graph tg;
  REQUIRE(zxmw_evolve(term.p, ti, 1, 6, 1, 0, 0, 0, 0, &tg.p) == ZXMW_OK);
  long tstates = 0;
  CHECK(zxmw_graph_state_count(tg.p, &tstates) == ZXMW_OK);
  CHECK(tstates == 5);
}

TEST_CASE("semantics JSON carries the matrix with exact entries") {
  Str out;
  REQUIRE(zxmw_semantics_json("Z[a,1,1,0]*W[i1,a]*W[a,o1]", &out.p) == ZXMW_OK);
  json j = out.parsed();
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  CHECK(j["entries"][0][0] == 1.0);
  CHECK(j["entries"][1][0] == 0.0);
  CHECK(j.contains("exact"));
  Str bad;
  CHECK(zxmw_semantics_json("Z[a,1,2,0]", &bad.p) == ZXMW_ERR_INVALID);
}

TEST_CASE("rules JSON enumerates within bounds") {
  Str out;
  REQUIRE(zxmw_rules_json(1, 1, &out.p) == ZXMW_OK);
  json j = out.parsed();
  CHECK(j["rules"].size() == 36);
  for (const auto& r : j["rules"]) {
    CHECK(r.contains("id"));
    CHECK(r.contains("family"));
    CHECK(r.contains("lhs"));
    CHECK(r.contains("rhs"));
  }
}

TEST_CASE("zx family filter restricts the rule set") {
  Sys all;
  REQUIRE(zxmw_system_zx(1, 1, nullptr, &all.p) == ZXMW_OK);
  Sys ident;
  REQUIRE(zxmw_system_zx(1, 1, "identity", &ident.p) == ZXMW_OK);
  const char* inits[] = {"W[i1,o1]"};
  Graph ga, gi;
  REQUIRE(zxmw_evolve(all.p, inits, 1, 1, 1, 0, 0, 0, 0, &ga.p) == ZXMW_OK);
  REQUIRE(zxmw_evolve(ident.p, inits, 1, 1, 1, 0, 0, 0, 0, &gi.p) == ZXMW_OK);
  long na = 0, ni = 0;
  CHECK(zxmw_graph_state_count(ga.p, &na) == ZXMW_OK);
  CHECK(zxmw_graph_state_count(gi.p, &ni) == ZXMW_OK);
  CHECK(ni > 1);
  CHECK(na >= ni);
}

TEST_CASE("monoidal experiment endpoint reports a full pass on tier 1") {
  Str out;
  int all_pass = 0;
  REQUIRE(zxmw_experiment_monoidal_json(1, 0, 2, 0, &out.p, &all_pass) == ZXMW_OK);
  CHECK(all_pass == 1);
  json j = out.parsed();
  CHECK(j["instances"] == 23);
  CHECK(j["results"].size() == 23);
  for (const auto& row : j["results"]) CHECK(row["pass"] == true);
}

TEST_CASE("quantum endpoint is faithful") {
  Str out;
  int faithful = 0;
  REQUIRE(zxmw_quantum_root_not_json(8, &out.p, &faithful) == ZXMW_OK);
  CHECK(faithful == 1);
  json j = out.parsed();
  CHECK(j["slices"].size() == 9);
}

TEST_CASE("check endpoint verdicts") {
  Sys set;
  REQUIRE(zxmw_system_set("{{x,y}}->{{x,y},{y,z}}", &set.p) == ZXMW_OK);
  const char* si[] = {"{{0,0}}"};
  Str out;
  int verdict = -2;
  REQUIRE(zxmw_check_json(set.p, si, 1, "confluence", 3, 0, &out.p, &verdict) == ZXMW_OK);
  CHECK(verdict == 1);

  Sys str;
  REQUIRE(zxmw_system_string("1->01,0->10", &str.p) == ZXMW_OK);
  const char* sti[] = {"1"};
  Str out2;
  int v2 = -2;
  REQUIRE(zxmw_check_json(str.p, sti, 1, "complete-consistent", 10, 4, &out2.p, &v2) ==
          ZXMW_OK);
  CHECK(v2 == 0);  // consistent but incomplete

  Str out3;
  int v3 = -2;
  CHECK(zxmw_check_json(set.p, si, 1, "no-such-check", 3, 0, &out3.p, &v3) ==
        ZXMW_ERR_INVALID);
}

TEST_CASE("completion endpoint merges the two-spider components") {
  Sys zx;
  REQUIRE(zxmw_system_zx(2, 2, "identity", &zx.p) == ZXMW_OK);
  const char* inits[] = {"X[x1,0,1,0]*Z[z1,1,2,0]*W[x1,z1]*W[z1,o1]*W[z1,o2]",
                         "Z[z1,0,1,0]*X[x1,1,2,0]*W[z1,x1]*W[x1,o1]*W[x1,o2]"};
  Str out;
  int connected = 0;
  REQUIRE(zxmw_complete_json(zx.p, inits, 2, 2, 8, 0, &out.p, &connected) == ZXMW_OK);
  CHECK(connected == 1);
  json j = out.parsed();
  CHECK(j["components_before"] == 2);
  CHECK(j["components_after"] == 1);
  CHECK(j["added_rules"].size() == 1);
}
