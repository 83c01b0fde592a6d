#pragma once

// File formats: state files (uncoupled amplitudes in), star record files
// and trajectory tables (JSON/CSV out). Writers are hand-rolled so the
// bytes are deterministic; numbers carry 17 significant digits, enough
// to round-trip doubles exactly.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstar/mixedspin.hpp"
#include "mstar/sweep.hpp"

namespace mstar {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StarRecordEntry {
    SetLabel set = SetLabel::upper;
    double theta = 0.0;
    double phi = 0.0;
    int multiplicity = 1;
};

struct StarRecordFile {
    int two_s = 1;
    std::optional<double> t;
    std::optional<double> varphi;
    std::optional<double> delta;
    std::vector<StarRecordEntry> stars;
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_optional(const std::optional<double>& v) {
    return v ? fmt_double(*v) : "null";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

inline SetLabel parse_set_label(const std::string& name) {
    if (name == "upper") return SetLabel::upper;
    if (name == "lower") return SetLabel::lower;
    if (name == "pseudo") return SetLabel::pseudo;
    throw parse_error("unknown star set label: " + name);
}

}  // namespace detail

/// Parses a state file {"two_s": N, "d_down": [[re,im],...], "d_up": [...]}.
/// Norm deviations up to the file tolerance are renormalized silently;
/// larger ones renormalize with a warning on stderr. A zero vector is an
/// invalid state.
inline MixedSpinState load_state_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("state file parse error: ") + e.what());
    }
    try {
        const int two_s = doc.at("two_s").get<int>();
        if (two_s < 1) {
            throw parse_error("two_s must be >= 1");
        }
        auto read_amps = [&doc, two_s](const char* key) {
            const auto& arr = doc.at(key);
            if (!arr.is_array() || static_cast<int>(arr.size()) != two_s + 1) {
                throw parse_error(std::string(key) + " must be an array of length two_s+1");
            }
            ComplexVector v(two_s + 1);
            for (int i = 0; i <= two_s; ++i) {
                const auto& pair = arr.at(i);
                if (!pair.is_array() || pair.size() != 2) {
                    throw parse_error(std::string(key) + " entries must be [re, im] pairs");
                }
                v[i] = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
            return v;
        };
        MixedSpinState state(two_s, read_amps("d_down"), read_amps("d_up"));
        const double norm = state.norm();
        if (norm < 1e-150) {
            throw invalid_state_error("zero state");
        }
        if (std::abs(norm - 1.0) > 1e-8) {
            std::cerr << "warning: state norm " << norm << " deviates from 1; renormalizing\n";
        }
        state.d_down /= norm;
        state.d_up /= norm;
        return state;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("state file schema error: ") + e.what());
    }
}

inline std::string serialize_state_file(const MixedSpinState& state) {
    std::ostringstream out;
    auto amps = [](const ComplexVector& v) {
        std::ostringstream row;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            row << (i == 0 ? "[" : ", [") << detail::fmt_double(v[i].real()) << ", "
                << detail::fmt_double(v[i].imag()) << "]";
        }
        return row.str();
    };
    out << "{\n";
    out << "  \"two_s\": " << state.twice_s << ",\n";
    out << "  \"d_down\": [" << amps(state.d_down) << "],\n";
    out << "  \"d_up\": [" << amps(state.d_up) << "]\n";
    out << "}\n";
    return out.str();
}

inline void save_state_file(const std::string& path, const MixedSpinState& state) {
    detail::write_file(path, serialize_state_file(state));
}

inline std::string serialize_star_records(const StarRecordFile& rec) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"metadata\": {\"two_s\": " << rec.two_s << ", \"t\": " << detail::fmt_optional(rec.t)
        << ", \"varphi\": " << detail::fmt_optional(rec.varphi)
        << ", \"delta\": " << detail::fmt_optional(rec.delta) << "},\n";
    out << "  \"stars\": [";
    for (std::size_t i = 0; i < rec.stars.size(); ++i) {
        const StarRecordEntry& e = rec.stars[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"set\": \"" << set_label_name(e.set)
            << "\", \"theta\": " << detail::fmt_double(e.theta)
            << ", \"phi\": " << detail::fmt_double(e.phi)
            << ", \"multiplicity\": " << e.multiplicity << "}";
    }
    out << (rec.stars.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

inline void save_star_records(const std::string& path, const StarRecordFile& rec) {
    detail::write_file(path, serialize_star_records(rec));
}

inline StarRecordFile parse_star_records(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("star file parse error: ") + e.what());
    }
    try {
        StarRecordFile rec;
        const auto& meta = doc.at("metadata");
        rec.two_s = meta.at("two_s").get<int>();
        auto opt = [&meta](const char* key) -> std::optional<double> {
            if (!meta.contains(key) || meta.at(key).is_null()) return std::nullopt;
            return meta.at(key).get<double>();
        };
        rec.t = opt("t");
        rec.varphi = opt("varphi");
        rec.delta = opt("delta");
        for (const auto& item : doc.at("stars")) {
            StarRecordEntry e;
            e.set = detail::parse_set_label(item.at("set").get<std::string>());
            e.theta = item.at("theta").get<double>();
            e.phi = item.at("phi").get<double>();
            e.multiplicity = item.at("multiplicity").get<int>();
            rec.stars.push_back(e);
        }
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("star file schema error: ") + e.what());
    }
}

inline StarRecordFile load_star_records(const std::string& path) {
    return parse_star_records(detail::read_file(path));
}

/// Builds the star record table from a full representation, ordered
/// upper, lower, pseudo with each set in canonical star order.
inline StarRecordFile star_records_from_representation(int two_s, const FullRepresentation& rep) {
    StarRecordFile rec;
    rec.two_s = two_s;
    if (rep.upper_stars) {
        for (const Star& s : rep.upper_stars->stars) {
            rec.stars.push_back({SetLabel::upper, s.theta, s.phi, s.multiplicity});
        }
    }
    if (rep.lower_stars) {
        for (const Star& s : rep.lower_stars->stars) {
            rec.stars.push_back({SetLabel::lower, s.theta, s.phi, s.multiplicity});
        }
    }
    rec.stars.push_back(
        {SetLabel::pseudo, rep.pseudo_star.theta, rep.pseudo_star.phi, rep.pseudo_star.multiplicity});
    return rec;
}

inline const char* kTrajectoryCsvHeader = "t,varphi,delta,set,star_index,theta,phi";

inline std::string serialize_trajectory_csv(const std::vector<TrajectoryRecord>& records) {
    std::ostringstream out;
    out << kTrajectoryCsvHeader << "\n";
    for (const TrajectoryRecord& r : records) {
        out << detail::fmt_double(r.t) << ',' << detail::fmt_double(r.varphi) << ','
            << detail::fmt_double(r.delta) << ',' << set_label_name(r.set) << ',' << r.star_index
            << ',' << detail::fmt_double(r.theta) << ',' << detail::fmt_double(r.phi) << "\n";
    }
    return out.str();
}

inline std::string serialize_trajectory_json(const std::vector<TrajectoryRecord>& records) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TrajectoryRecord& r = records[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "  {\"t\": " << detail::fmt_double(r.t)
            << ", \"varphi\": " << detail::fmt_double(r.varphi)
            << ", \"delta\": " << detail::fmt_double(r.delta) << ", \"set\": \""
            << set_label_name(r.set) << "\", \"star_index\": " << r.star_index
            << ", \"theta\": " << detail::fmt_double(r.theta)
            << ", \"phi\": " << detail::fmt_double(r.phi) << "}";
    }
    out << (records.empty() ? "]\n" : "\n]\n");
    return out.str();
}

inline std::vector<TrajectoryRecord> parse_trajectory_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("trajectory parse error: ") + e.what());
    }
    try {
        std::vector<TrajectoryRecord> records;
        for (const auto& item : doc) {
            TrajectoryRecord r;
            r.t = item.at("t").get<double>();
            r.varphi = item.at("varphi").get<double>();
            r.delta = item.at("delta").get<double>();
            r.set = detail::parse_set_label(item.at("set").get<std::string>());
            r.star_index = item.at("star_index").get<int>();
            r.theta = item.at("theta").get<double>();
            r.phi = item.at("phi").get<double>();
            records.push_back(r);
        }
        return records;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("trajectory schema error: ") + e.what());
    }
}

inline std::vector<TrajectoryRecord> parse_trajectory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryCsvHeader) {
        throw parse_error("trajectory CSV must start with header " +
                          std::string(kTrajectoryCsvHeader));
    }
    std::vector<TrajectoryRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 7) {
            throw parse_error("trajectory CSV row must have 7 fields");
        }
        try {
            TrajectoryRecord r;
            r.t = std::stod(fields[0]);
            r.varphi = std::stod(fields[1]);
            r.delta = std::stod(fields[2]);
            r.set = detail::parse_set_label(fields[3]);
            r.star_index = std::stoi(fields[4]);
            r.theta = std::stod(fields[5]);
            r.phi = std::stod(fields[6]);
            records.push_back(r);
        } catch (const std::logic_error&) {
            throw parse_error("trajectory CSV has a malformed numeric field");
        }
    }
    return records;
}

}  // namespace mstar
