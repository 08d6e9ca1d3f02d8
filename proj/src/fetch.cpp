#include <string>

#include "httplib.h"
#include "orbitsr/errors.hpp"
#include "orbitsr/ingest.hpp"

namespace orbitsr::ingest {

namespace {

// "http://host:port/path" -> (host_and_port, path)
void split_endpoint(const std::string& endpoint, std::string& base,
                    std::string& path) {
    std::string rest = endpoint;
    const std::string scheme = "http://";
    if (rest.rfind(scheme, 0) != 0)
        throw TransportError("fetch_horizons: only http:// endpoints supported: " +
                             endpoint);
    const size_t slash = rest.find('/', scheme.size());
    if (slash == std::string::npos) {
        base = rest;
        path = "/";
    } else {
        base = rest.substr(0, slash);
        path = rest.substr(slash);
    }
}

}  // namespace

std::string fetch_horizons(const HorizonsQuery& query,
                           const std::string& endpoint) {
    if (query.start_epoch_s >= query.stop_epoch_s)
        throw ValidationError("fetch_horizons: start must precede stop");
    if (query.step_minutes < 1)
        throw ValidationError("fetch_horizons: step_minutes must be >= 1");

    std::string base, path;
    split_endpoint(endpoint, base, path);

    httplib::Params params{
        {"format", "text"},
        {"COMMAND", "'" + query.target + "'"},
        {"OBJ_DATA", "'NO'"},
        {"MAKE_EPHEM", "'YES'"},
        {"EPHEM_TYPE", "'OBSERVER'"},
        {"CENTER", "'" + query.center + "'"},
        {"START_TIME", "'" + format_calendar_date(query.start_epoch_s) + "'"},
        {"STOP_TIME", "'" + format_calendar_date(query.stop_epoch_s) + "'"},
        {"STEP_SIZE", "'" + std::to_string(query.step_minutes) + "m'"},
        {"ANG_FORMAT", "'HMS'"},
        {"CSV_FORMAT", "'YES'"},
    };
    if (!query.quantities.empty()) {
        std::string q;
        for (const auto& code : query.quantities) {
            if (!q.empty()) q += ",";
            q += code;
        }
        params.emplace("QUANTITIES", "'" + q + "'");
    }

    httplib::Client client(base);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    auto res = client.Get(path, params, httplib::Headers{});
    if (!res)
        throw TransportError("fetch_horizons: request to " + endpoint +
                             " failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw TransportError("fetch_horizons: HTTP status " +
                             std::to_string(res->status) + " from " + endpoint);
    if (res->body.empty())
        throw TransportError("fetch_horizons: empty response body from " +
                             endpoint);
    return res->body;
}

}  // namespace orbitsr::ingest
