#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace orbitsr {

// One timestamped geocentric observation.
// Epochs are seconds since J2000 (2000-01-01 12:00:00 UTC).
struct EphemerisRecord {
    double epoch_s = 0.0;
    double ra = 0.0;     // right ascension, radians in [0, 2*pi)
    double dec = 0.0;    // declination, radians in [-pi/2, pi/2]
    double delta = 0.0;  // geocentric distance, AU, > 0
};

// Query parameters for the Horizons ephemeris API.
struct HorizonsQuery {
    std::string target;       // e.g. "301" (Moon)
    std::string center;       // e.g. "500@399" (geocentric)
    double start_epoch_s = 0.0;
    double stop_epoch_s = 0.0;
    int step_minutes = 60;
    std::vector<std::string> quantities;  // column codes, e.g. {"1", "20"}
};

namespace ingest {

// Sexagesimal time angle (hours, minutes, seconds) to radians in [0, 2*pi).
double hms_to_radians(int h, int m, double s);

// Signed sexagesimal arc angle to radians; |d| limited to 90 degrees.
double dms_to_radians(int sign, int d, int m, double s);

// Format an RA angle back to "HH MM SS.sssssss".
std::string format_hms(double ra_rad);

// Format a declination back to "+DD MM SS.ssssss".
std::string format_dms(double dec_rad);

// Calendar date helpers (UTC, proleptic Gregorian).
double calendar_to_epoch_s(int year, int month, int day, int hour, int minute,
                           double second);
// Parses Horizons calendar dates like "2024-Jan-01 00:00" as well as
// ISO-style "2024-01-01 00:00:00".
double parse_calendar_date(const std::string& text);
std::string format_calendar_date(double epoch_s);

// Parse a Horizons result body: comma-separated data lines between the
// $$SOE / $$EOE sentinels. Extra columns are ignored.
std::vector<EphemerisRecord> parse_horizons_text(const std::string& raw);

// Column mapping for load_csv. Angle columns may be decimal radians or
// sexagesimal text; the flag declares which.
struct CsvMapping {
    std::string epoch = "epoch_s";
    std::string ra = "ra_rad";
    std::string dec = "dec_rad";
    std::string delta = "delta_au";
    bool sexagesimal_angles = false;
    bool calendar_epochs = false;
};

std::vector<EphemerisRecord> load_csv(const std::filesystem::path& path,
                                      const CsvMapping& mapping = {});

// Toolkit CSV writer/reader: header `epoch_s,ra_rad,dec_rad,delta_au`,
// leading `#` comment lines allowed, >= 12 significant digits.
void write_csv(const std::filesystem::path& path,
               const std::vector<EphemerisRecord>& records,
               const std::vector<std::string>& header_comments = {});
std::string serialize_csv(const std::vector<EphemerisRecord>& records,
                          const std::vector<std::string>& header_comments = {});

// Validates invariants (ranges, strict epoch monotonicity) and throws
// ValidationError on violation.
void validate_records(const std::vector<EphemerisRecord>& records);

// Fetch raw ephemeris text from a Horizons-compatible endpoint.
// Returns the response body verbatim; no parsing.
std::string fetch_horizons(const HorizonsQuery& query,
                           const std::string& endpoint);

}  // namespace ingest
}  // namespace orbitsr
