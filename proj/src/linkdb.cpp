#include "sncvf/linkdb.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace snc {

using nlohmann::json;

namespace {

GeoRole parse_role(const std::string& s) {
    if (s == "source") return GeoRole::Source;
    if (s == "relay") return GeoRole::Relay;
    if (s == "sink") return GeoRole::Sink;
    throw std::invalid_argument("topology: unknown node role '" + s + "'");
}

const char* role_name(GeoRole r) {
    switch (r) {
        case GeoRole::Source: return "source";
        case GeoRole::Relay: return "relay";
        default: return "sink";
    }
}

}  // namespace

void LinkDb::add_node(const GeoNode& node) {
    if (node.id.empty()) throw std::invalid_argument("topology: empty node id");
    if (!(node.lat >= -90.0 && node.lat <= 90.0))
        throw std::invalid_argument("topology: node '" + node.id + "' latitude out of range");
    if (!(node.lon >= -180.0 && node.lon <= 180.0))
        throw std::invalid_argument("topology: node '" + node.id + "' longitude out of range");
    if (!nodes_.emplace(node.id, node).second)
        throw std::invalid_argument("topology: duplicate node id '" + node.id + "'");
}

void LinkDb::add_link(const GeoLink& link) {
    if (link.src == link.dst)
        throw std::invalid_argument("topology: self-loop on node '" + link.src + "'");
    for (const auto* end : {&link.src, &link.dst})
        if (!nodes_.count(*end))
            throw std::invalid_argument("topology: link references unknown node '" + *end + "'");
    if (!(link.delta >= 0.0 && link.delta <= 1.0))
        throw std::invalid_argument("topology: link " + link.src + "->" + link.dst +
                                    " delta out of [0,1]");
    if (!links_.emplace(std::make_pair(link.src, link.dst), link).second)
        throw std::invalid_argument("topology: duplicate link " + link.src + "->" + link.dst);
}

LinkDb LinkDb::ingest(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("topology: ") + e.what());
    }
    LinkDb db;
    size_t idx = 0;
    for (const auto& jn : doc.value("nodes", json::array())) {
        GeoNode node;
        try {
            node.id = jn.at("id").get<std::string>();
            node.lat = jn.at("lat").get<double>();
            node.lon = jn.at("lon").get<double>();
            node.role = parse_role(jn.value("role", "relay"));
            node.nc_capable = jn.value("nc_capable", true);
        } catch (const json::exception& e) {
            throw std::invalid_argument("topology: nodes[" + std::to_string(idx) + "]: " +
                                        e.what());
        }
        try {
            db.add_node(node);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("nodes[" + std::to_string(idx) + "]: " + e.what());
        }
        ++idx;
    }
    idx = 0;
    for (const auto& jl : doc.value("links", json::array())) {
        GeoLink link;
        try {
            link.src = jl.at("src").get<std::string>();
            link.dst = jl.at("dst").get<std::string>();
            link.delta = jl.at("delta").get<double>();
            link.samples = jl.value("samples", 0ull);
            link.updated_at = jl.value("updated_at", "");
        } catch (const json::exception& e) {
            throw std::invalid_argument("topology: links[" + std::to_string(idx) + "]: " +
                                        e.what());
        }
        try {
            db.add_link(link);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("links[" + std::to_string(idx) + "]: " + e.what());
        }
        ++idx;
    }
    return db;
}

LinkDb LinkDb::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("topology: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest(buf.str());
}

double LinkDb::update_stats(const LinkObservation& obs, double alpha) {
    if (obs.lost > obs.sent || obs.sent == 0)
        throw std::invalid_argument("observation: need 0 <= lost <= sent, sent > 0");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("observation: smoothing alpha must lie in (0,1]");
    auto it = links_.find(std::make_pair(obs.src, obs.dst));
    if (it == links_.end())
        throw std::invalid_argument("observation: unknown link " + obs.src + "->" + obs.dst);
    GeoLink& link = it->second;
    const double ratio = static_cast<double>(obs.lost) / static_cast<double>(obs.sent);
    link.delta = (1.0 - alpha) * link.delta + alpha * ratio;
    link.samples += 1;
    if (!obs.timestamp.empty()) link.updated_at = obs.timestamp;
    return link.delta;
}

const GeoLink* LinkDb::find_link(const std::string& src, const std::string& dst) const {
    auto it = links_.find(std::make_pair(src, dst));
    return it == links_.end() ? nullptr : &it->second;
}

std::optional<PathExtract> LinkDb::extract_path(const std::string& source,
                                                const std::string& sink) const {
    if (!nodes_.count(source) || !nodes_.count(sink))
        throw std::invalid_argument("extract_path: unknown endpoint");
    // Forward and reverse adjacency (ids sorted by map order).
    std::map<std::string, std::vector<std::string>> fwd, rev;
    for (const auto& [key, link] : links_) {
        fwd[key.first].push_back(key.second);
        rev[key.second].push_back(key.first);
    }
    auto bfs = [&](const std::string& origin,
                   const std::map<std::string, std::vector<std::string>>& adj) {
        std::map<std::string, int> dist;
        dist[origin] = 0;
        std::deque<std::string> queue{origin};
        while (!queue.empty()) {
            std::string u = queue.front();
            queue.pop_front();
            auto it = adj.find(u);
            if (it == adj.end()) continue;
            for (const auto& v : it->second)
                if (!dist.count(v)) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        return dist;
    };
    std::map<std::string, int> dist_s = bfs(source, fwd);
    if (!dist_s.count(sink)) return std::nullopt;
    std::map<std::string, int> dist_t = bfs(sink, rev);
    const int total = dist_s[sink];

    // Walk forward, at each step taking the lexicographically smallest
    // successor that stays on a shortest path; this yields the smallest
    // chain overall.
    PathExtract out;
    out.chain.push_back(source);
    std::string cur = source;
    while (cur != sink) {
        const int d = dist_s[cur];
        std::string next;
        for (const auto& v : fwd[cur]) {
            auto is = dist_s.find(v);
            auto it = dist_t.find(v);
            if (is == dist_s.end() || it == dist_t.end()) continue;
            if (is->second != d + 1 || is->second + it->second != total) continue;
            if (next.empty() || v < next) next = v;
        }
        const GeoLink* link = find_link(cur, next);
        out.profile.deltas.push_back(link->delta);
        out.profile.labels.push_back(cur + "->" + next);
        out.chain.push_back(next);
        cur = next;
    }
    return out;
}

std::string LinkDb::to_json() const {
    json doc;
    doc["nodes"] = json::array();
    for (const auto& [id, node] : nodes_) {
        doc["nodes"].push_back({{"id", node.id},
                                {"lat", node.lat},
                                {"lon", node.lon},
                                {"role", role_name(node.role)},
                                {"nc_capable", node.nc_capable}});
    }
    doc["links"] = json::array();
    for (const auto& [key, link] : links_) {
        doc["links"].push_back({{"src", link.src},
                                {"dst", link.dst},
                                {"delta", link.delta},
                                {"samples", link.samples},
                                {"updated_at", link.updated_at}});
    }
    return doc.dump(2) + "\n";
}

void LinkDb::persist(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("persist: cannot write " + path);
    out << to_json();
}

}  // namespace snc
