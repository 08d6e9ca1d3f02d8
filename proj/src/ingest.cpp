#include "orbitsr/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbitsr/errors.hpp"
#include "orbitsr/kepler.hpp"

namespace orbitsr::ingest {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

// days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm)
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

const std::array<const char*, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

int month_from_name(const std::string& name) {
    for (int i = 0; i < 12; ++i)
        if (name == kMonthNames[i]) return i + 1;
    return -1;
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

// "06 02 16.18" or "06:02:16.18" -> (h, m, s); also "-05 12 01.1"
bool parse_sexagesimal(const std::string& text, int& sign, int& a, int& b,
                       double& s) {
    std::string t = trim(text);
    if (t.empty()) return false;
    sign = 1;
    if (t[0] == '+' || t[0] == '-') {
        sign = (t[0] == '-') ? -1 : 1;
        t = trim(t.substr(1));
    }
    std::replace(t.begin(), t.end(), ':', ' ');
    std::stringstream ss(t);
    std::string fa, fb, fs, extra;
    if (!(ss >> fa >> fb >> fs)) return false;
    if (ss >> extra) return false;
    double da, db;
    if (!parse_double(fa, da) || !parse_double(fb, db) || !parse_double(fs, s))
        return false;
    if (da != std::floor(da) || db != std::floor(db)) return false;
    a = static_cast<int>(da);
    b = static_cast<int>(db);
    return true;
}

}  // namespace

double hms_to_radians(int h, int m, double s) {
    if (h < 0 || h >= 24)
        throw ValidationError("hms_to_radians: hours out of [0, 24): " +
                              std::to_string(h));
    if (m < 0 || m >= 60)
        throw ValidationError("hms_to_radians: minutes out of [0, 60): " +
                              std::to_string(m));
    if (s < 0.0 || s >= 60.0)
        throw ValidationError("hms_to_radians: seconds out of [0, 60): " +
                              std::to_string(s));
    const double hours = h + m / 60.0 + s / 3600.0;
    return kepler::wrap_two_pi(hours * 15.0 * kPi / 180.0);
}

double dms_to_radians(int sign, int d, int m, double s) {
    if (sign != 1 && sign != -1)
        throw ValidationError("dms_to_radians: sign must be +1 or -1");
    if (d < 0 || d > 90)
        throw ValidationError("dms_to_radians: degrees out of [0, 90]: " +
                              std::to_string(d));
    if (m < 0 || m >= 60)
        throw ValidationError("dms_to_radians: minutes out of [0, 60): " +
                              std::to_string(m));
    if (s < 0.0 || s >= 60.0)
        throw ValidationError("dms_to_radians: seconds out of [0, 60): " +
                              std::to_string(s));
    const double deg = d + m / 60.0 + s / 3600.0;
    if (deg > 90.0)
        throw ValidationError("dms_to_radians: magnitude exceeds 90 degrees");
    return sign * deg * kPi / 180.0;
}

std::string format_hms(double ra_rad) {
    double hours = kepler::wrap_two_pi(ra_rad) * 180.0 / kPi / 15.0;
    int h = static_cast<int>(hours);
    double rem = (hours - h) * 60.0;
    int m = static_cast<int>(rem);
    double s = (rem - m) * 60.0;
    // carry rounding at the seconds boundary
    if (s >= 59.99999995) {
        s = 0.0;
        if (++m == 60) {
            m = 0;
            if (++h == 24) h = 0;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%02d %02d %010.7f", h, m, s);
    return buf;
}

std::string format_dms(double dec_rad) {
    const int sign = dec_rad < 0 ? -1 : 1;
    double deg = std::abs(dec_rad) * 180.0 / kPi;
    int d = static_cast<int>(deg);
    double rem = (deg - d) * 60.0;
    int m = static_cast<int>(rem);
    double s = (rem - m) * 60.0;
    if (s >= 59.9999995) {
        s = 0.0;
        if (++m == 60) {
            m = 0;
            ++d;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%c%02d %02d %09.6f", sign < 0 ? '-' : '+',
                  d, m, s);
    return buf;
}

double calendar_to_epoch_s(int year, int month, int day, int hour, int minute,
                           double second) {
    const int64_t days = days_from_civil(year, month, day) -
                         days_from_civil(2000, 1, 1);
    return static_cast<double>(days) * 86400.0 + hour * 3600.0 + minute * 60.0 +
           second - 43200.0;  // J2000 is 2000-01-01 12:00:00 UTC
}

double parse_calendar_date(const std::string& text) {
    std::string t = trim(text);
    // accept "2024-Jan-01 00:00[:00[.000]]" and "2024-01-01 00:00[:00]"
    const size_t sp = t.find(' ');
    if (sp == std::string::npos)
        throw FormatError("parse_calendar_date: missing time part in '" + t + "'");
    const std::string date = t.substr(0, sp);
    const std::string time = trim(t.substr(sp + 1));
    auto dparts = split(date, '-');
    if (dparts.size() != 3)
        throw FormatError("parse_calendar_date: bad date '" + date + "'");
    int year, month, day;
    try {
        year = std::stoi(dparts[0]);
        month = month_from_name(dparts[1]);
        if (month < 0) month = std::stoi(dparts[1]);
        day = std::stoi(dparts[2]);
    } catch (const std::exception&) {
        throw FormatError("parse_calendar_date: bad date '" + date + "'");
    }
    if (month < 1 || month > 12 || day < 1 || day > 31)
        throw FormatError("parse_calendar_date: bad date '" + date + "'");
    auto tparts = split(time, ':');
    if (tparts.size() < 2 || tparts.size() > 3)
        throw FormatError("parse_calendar_date: bad time '" + time + "'");
    int hour, minute;
    double second = 0.0;
    try {
        hour = std::stoi(tparts[0]);
        minute = std::stoi(tparts[1]);
        if (tparts.size() == 3) second = std::stod(tparts[2]);
    } catch (const std::exception&) {
        throw FormatError("parse_calendar_date: bad time '" + time + "'");
    }
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0.0 ||
        second >= 60.0)
        throw FormatError("parse_calendar_date: bad time '" + time + "'");
    return calendar_to_epoch_s(year, month, day, hour, minute, second);
}

std::string format_calendar_date(double epoch_s) {
    double t = epoch_s + 43200.0;
    int64_t days = static_cast<int64_t>(std::floor(t / 86400.0));
    double sod = t - static_cast<double>(days) * 86400.0;
    int sec = static_cast<int>(std::llround(sod));
    if (sec >= 86400) {
        sec -= 86400;
        ++days;
    }
    int y, m, d;
    civil_from_days(days + days_from_civil(2000, 1, 1), y, m, d);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%s-%02d %02d:%02d:%02d", y,
                  kMonthNames[m - 1], d, sec / 3600, (sec / 60) % 60, sec % 60);
    return buf;
}

void validate_records(const std::vector<EphemerisRecord>& records) {
    const double two_pi = 2.0 * kPi;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.ra < 0.0 || r.ra >= two_pi)
            throw ValidationError("record " + std::to_string(i) +
                                  ": ra out of [0, 2*pi)");
        if (r.dec < -kPi / 2 || r.dec > kPi / 2)
            throw ValidationError("record " + std::to_string(i) +
                                  ": dec out of [-pi/2, pi/2]");
        if (!(r.delta > 0.0))
            throw ValidationError("record " + std::to_string(i) +
                                  ": delta must be positive");
        if (i > 0) {
            if (r.epoch_s == records[i - 1].epoch_s)
                throw ValidationError("duplicate epoch at record " +
                                      std::to_string(i));
            if (r.epoch_s < records[i - 1].epoch_s)
                throw ValidationError("epochs not strictly increasing at record " +
                                      std::to_string(i));
        }
    }
}

namespace {

// Extract (ra, dec, delta) from the comma-separated fields after the date.
// Horizons inserts flag columns (blank or letters) and may append extra
// quantities; those are skipped.
bool extract_angles(const std::vector<std::string>& fields, size_t from,
                    double& ra, double& dec, double& delta) {
    int stage = 0;  // 0: want RA, 1: want DEC, 2: want delta
    for (size_t i = from; i < fields.size(); ++i) {
        int sign, a, b;
        double s, val;
        if (stage == 0) {
            if (parse_sexagesimal(fields[i], sign, a, b, s) && sign == 1) {
                ra = hms_to_radians(a, b, s);
                stage = 1;
            }
        } else if (stage == 1) {
            if (parse_sexagesimal(fields[i], sign, a, b, s)) {
                dec = dms_to_radians(sign, a, b, s);
                stage = 2;
            }
        } else {
            if (parse_double(fields[i], val)) {
                delta = val;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

std::vector<EphemerisRecord> parse_horizons_text(const std::string& raw) {
    const size_t soe = raw.find("$$SOE");
    const size_t eoe = raw.find("$$EOE");
    if (soe == std::string::npos || eoe == std::string::npos || eoe < soe)
        throw FormatError("parse_horizons_text: missing $$SOE/$$EOE sentinels");

    // line number of the data block start, for diagnostics
    size_t line_no = 1 + static_cast<size_t>(std::count(raw.begin(),
                                                        raw.begin() + soe, '\n'));
    std::stringstream block(raw.substr(soe + 5, eoe - soe - 5));
    std::string line;
    std::vector<EphemerisRecord> records;
    while (std::getline(block, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        auto fields = split(t, ',');
        if (fields.size() < 4)
            throw FormatError("parse_horizons_text: malformed line " +
                              std::to_string(line_no));
        EphemerisRecord rec;
        try {
            rec.epoch_s = parse_calendar_date(fields[0]);
            if (!extract_angles(fields, 1, rec.ra, rec.dec, rec.delta))
                throw FormatError("missing RA/DEC/delta columns");
        } catch (const Error& e) {
            throw FormatError("parse_horizons_text: line " +
                              std::to_string(line_no) + ": " + e.what());
        }
        records.push_back(rec);
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const auto& a, const auto& b) {
                         return a.epoch_s < b.epoch_s;
                     });
    validate_records(records);
    return records;
}

std::vector<EphemerisRecord> load_csv(const std::filesystem::path& path,
                                      const CsvMapping& mapping) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("load_csv: cannot open " + path.string());
    std::string line;
    std::vector<std::string> header;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = split(t, ',');
        break;
    }
    if (header.empty())
        throw FormatError("load_csv: no header row in " + path.string());
    for (auto& h : header) h = trim(h);

    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ConfigError("load_csv: unknown column '" + name + "' in " +
                              path.string());
        return static_cast<size_t>(it - header.begin());
    };
    const size_t ci_epoch = column(mapping.epoch);
    const size_t ci_ra = column(mapping.ra);
    const size_t ci_dec = column(mapping.dec);
    const size_t ci_delta = column(mapping.delta);

    auto cell_error = [&](size_t row, const std::string& col) {
        return FormatError("load_csv: unparseable cell at row " +
                           std::to_string(row) + ", column '" + col + "'");
    };

    std::vector<EphemerisRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split(t, ',');
        if (fields.size() < header.size())
            throw FormatError("load_csv: short row at line " +
                              std::to_string(line_no));
        EphemerisRecord rec;
        if (mapping.calendar_epochs) {
            try {
                rec.epoch_s = parse_calendar_date(fields[ci_epoch]);
            } catch (const Error&) {
                throw cell_error(line_no, mapping.epoch);
            }
        } else if (!parse_double(fields[ci_epoch], rec.epoch_s)) {
            throw cell_error(line_no, mapping.epoch);
        }
        if (mapping.sexagesimal_angles) {
            int sign, a, b;
            double s;
            if (!parse_sexagesimal(fields[ci_ra], sign, a, b, s) || sign != 1)
                throw cell_error(line_no, mapping.ra);
            rec.ra = hms_to_radians(a, b, s);
            if (!parse_sexagesimal(fields[ci_dec], sign, a, b, s))
                throw cell_error(line_no, mapping.dec);
            rec.dec = dms_to_radians(sign, a, b, s);
        } else {
            if (!parse_double(fields[ci_ra], rec.ra))
                throw cell_error(line_no, mapping.ra);
            if (!parse_double(fields[ci_dec], rec.dec))
                throw cell_error(line_no, mapping.dec);
        }
        if (!parse_double(fields[ci_delta], rec.delta))
            throw cell_error(line_no, mapping.delta);
        records.push_back(rec);
    }
    validate_records(records);
    return records;
}

std::string serialize_csv(const std::vector<EphemerisRecord>& records,
                          const std::vector<std::string>& header_comments) {
    std::string out;
    for (const auto& c : header_comments) out += "# " + c + "\n";
    out += "epoch_s,ra_rad,dec_rad,delta_au\n";
    char buf[160];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%.15g,%.15g\n", r.epoch_s,
                      r.ra, r.dec, r.delta);
        out += buf;
    }
    return out;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<EphemerisRecord>& records,
               const std::vector<std::string>& header_comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("write_csv: cannot open " + path.string());
    out << serialize_csv(records, header_comments);
}

}  // namespace orbitsr::ingest
