#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sncvf/analytics.hpp"

namespace snc {

enum class GeoRole { Source, Relay, Sink };

struct GeoNode {
    std::string id;
    double lat = 0, lon = 0;
    GeoRole role = GeoRole::Relay;
    bool nc_capable = true;
};

struct GeoLink {
    std::string src, dst;
    double delta = 0;
    uint64_t samples = 0;
    std::string updated_at;  // ISO-8601
};

struct LinkObservation {
    std::string src, dst;
    uint64_t sent = 0;
    uint64_t lost = 0;
    std::string timestamp;
};

struct PathExtract {
    std::vector<std::string> chain;  // node ids, source..sink
    PathProfile profile;             // per-link deltas in path order
};

/// Geo-tagged link-statistics store. Single-writer/multi-reader contract:
/// callers serialize updates; reads see consistent state.
class LinkDb {
public:
    LinkDb() = default;

    /// Parse + validate a topology JSON document (schema in README).
    /// Referential or range errors name the offending entry.
    static LinkDb ingest(const std::string& json_text);
    static LinkDb load_file(const std::string& path);

    void add_node(const GeoNode& node);
    void add_link(const GeoLink& link);

    /// EWMA update of the link's erasure estimate:
    /// delta <- (1-alpha)*delta + alpha*(lost/sent).
    double update_stats(const LinkObservation& obs, double alpha = 0.2);

    /// Minimum-hop directed path; ties broken by lexicographically
    /// smallest node chain. Empty optional when disconnected.
    std::optional<PathExtract> extract_path(const std::string& source,
                                            const std::string& sink) const;

    std::string to_json() const;
    void persist(const std::string& path) const;

    const std::map<std::string, GeoNode>& nodes() const { return nodes_; }
    const std::map<std::pair<std::string, std::string>, GeoLink>& links() const { return links_; }

    const GeoLink* find_link(const std::string& src, const std::string& dst) const;

private:
    std::map<std::string, GeoNode> nodes_;
    std::map<std::pair<std::string, std::string>, GeoLink> links_;
};

}  // namespace snc
