#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>

#include "sncvf/linkdb.hpp"

using namespace snc;

namespace {

// Three-node line A -> B -> C plus a longer detour A -> D -> E -> C.
const char* kLine = R"({
  "nodes": [
    {"id": "A", "lat": 45.0, "lon": 9.1, "role": "source"},
    {"id": "B", "lat": 45.1, "lon": 9.2, "role": "relay"},
    {"id": "C", "lat": 45.2, "lon": 9.3, "role": "sink"},
    {"id": "D", "lat": 45.0, "lon": 9.4, "role": "relay"},
    {"id": "E", "lat": 45.0, "lon": 9.5, "role": "relay"}
  ],
  "links": [
    {"src": "A", "dst": "B", "delta": 0.10, "samples": 1000, "updated_at": "2026-01-01T00:00:00Z"},
    {"src": "B", "dst": "C", "delta": 0.15, "samples": 1000, "updated_at": "2026-01-01T00:00:00Z"},
    {"src": "A", "dst": "D", "delta": 0.01, "samples": 1000, "updated_at": "2026-01-01T00:00:00Z"},
    {"src": "D", "dst": "E", "delta": 0.01, "samples": 1000, "updated_at": "2026-01-01T00:00:00Z"},
    {"src": "E", "dst": "C", "delta": 0.01, "samples": 1000, "updated_at": "2026-01-01T00:00:00Z"}
  ]
})";

}  // namespace

TEST_CASE("ingest round trip") {
    LinkDb db = LinkDb::ingest(kLine);
    CHECK(db.nodes().size() == 5);
    CHECK(db.links().size() == 5);
    const GeoLink* ab = db.find_link("A", "B");
    REQUIRE(ab != nullptr);
    CHECK(ab->delta == doctest::Approx(0.10));
    CHECK(ab->samples == 1000);

    LinkDb again = LinkDb::ingest(db.to_json());
    CHECK(again.nodes().size() == 5);
    REQUIRE(again.find_link("B", "C") != nullptr);
    CHECK(again.find_link("B", "C")->delta == doctest::Approx(0.15));
    CHECK(again.nodes().at("A").role == GeoRole::Source);
    CHECK(again.nodes().at("C").role == GeoRole::Sink);
}

TEST_CASE("ingest rejects dangling and invalid entries") {
    // Link referencing an unknown node: error names the entry.
    const char* dangling = R"({
      "nodes": [{"id": "A", "lat": 0, "lon": 0, "role": "source"}],
      "links": [{"src": "A", "dst": "Z", "delta": 0.1}]
    })";
    CHECK_THROWS_WITH_AS(LinkDb::ingest(dangling),
                         doctest::Contains("links[0]"), std::invalid_argument);

    const char* bad_delta = R"({
      "nodes": [{"id": "A", "lat": 0, "lon": 0, "role": "source"},
                {"id": "B", "lat": 0, "lon": 1, "role": "sink"}],
      "links": [{"src": "A", "dst": "B", "delta": 1.5}]
    })";
    CHECK_THROWS_AS(LinkDb::ingest(bad_delta), std::invalid_argument);

    const char* dup_node = R"({
      "nodes": [{"id": "A", "lat": 0, "lon": 0, "role": "source"},
                {"id": "A", "lat": 0, "lon": 1, "role": "sink"}],
      "links": []
    })";
    CHECK_THROWS_AS(LinkDb::ingest(dup_node), std::invalid_argument);

    CHECK_THROWS_AS(LinkDb::ingest("not json"), std::invalid_argument);
}

TEST_CASE("EWMA update") {
    LinkDb db = LinkDb::ingest(kLine);
    LinkObservation obs{"A", "B", 1000, 500, "2026-01-02T00:00:00Z"};
    double updated = db.update_stats(obs, 0.2);
    // 0.8*0.10 + 0.2*0.5 = 0.18
    CHECK(updated == doctest::Approx(0.18));
    const GeoLink* ab = db.find_link("A", "B");
    CHECK(ab->delta == doctest::Approx(0.18));
    CHECK(ab->samples == 1001);
    CHECK(ab->updated_at == "2026-01-02T00:00:00Z");

    CHECK_THROWS_AS(db.update_stats({"A", "Z", 10, 1, ""}), std::invalid_argument);
    CHECK_THROWS_AS(db.update_stats({"A", "B", 0, 0, ""}), std::invalid_argument);
    CHECK_THROWS_AS(db.update_stats({"A", "B", 10, 11, ""}), std::invalid_argument);
}

TEST_CASE("shortest path extraction with profile in path order") {
    LinkDb db = LinkDb::ingest(kLine);
    auto path = db.extract_path("A", "C");
    REQUIRE(path.has_value());
    CHECK(path->chain == std::vector<std::string>{"A", "B", "C"});
    REQUIRE(path->profile.deltas.size() == 2);
    CHECK(path->profile.deltas[0] == doctest::Approx(0.10));
    CHECK(path->profile.deltas[1] == doctest::Approx(0.15));

    // No reverse edges: disconnected in that direction.
    CHECK_FALSE(db.extract_path("C", "A").has_value());
    CHECK_THROWS_AS(db.extract_path("A", "Z"), std::invalid_argument);

    // Trivial path: source equals sink.
    auto self = db.extract_path("A", "A");
    REQUIRE(self.has_value());
    CHECK(self->chain == std::vector<std::string>{"A"});
    CHECK(self->profile.deltas.empty());
}

TEST_CASE("equal-hop tie broken lexicographically") {
    LinkDb db = LinkDb::ingest(kLine);
    // Add A -> F -> C, same hop count as A -> B -> C but "B" < "F".
    db.add_node({"F", 45.3, 9.6, GeoRole::Relay, true});
    db.add_link({"A", "F", 0.01, 10, ""});
    db.add_link({"F", "C", 0.01, 10, ""});
    auto path = db.extract_path("A", "C");
    REQUIRE(path.has_value());
    CHECK(path->chain == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("persist and load") {
    LinkDb db = LinkDb::ingest(kLine);
    const std::string tmp = "linkdb_roundtrip.json";
    db.persist(tmp);
    LinkDb loaded = LinkDb::load_file(tmp);
    CHECK(loaded.to_json() == db.to_json());
    std::remove(tmp.c_str());
    CHECK_THROWS_AS(LinkDb::load_file("does_not_exist.json"), std::runtime_error);
}
