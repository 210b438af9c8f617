#include "nemfilm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nemfilm {

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_profile_csv(std::ostream& os, const ProfileCurve& p) {
    os << "x,rho\n";
    for (int i = 0; i < p.grid().n_nodes(); ++i)
        os << format_sig(p.grid().node(i)) << ',' << format_sig(p.value(i)) << '\n';
}

ProfileCurve read_profile_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,rho")
        throw std::invalid_argument("read_profile_csv: expected header 'x,rho'");
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("read_profile_csv: malformed row '" + line + "'");
        size_t pos1 = 0, pos2 = 0;
        double x = std::stod(line.substr(0, comma), &pos1);
        double v = std::stod(line.substr(comma + 1), &pos2);
        if (pos1 != comma || pos2 != line.size() - comma - 1)
            throw std::invalid_argument("read_profile_csv: malformed row '" + line + "'");
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 3) throw std::invalid_argument("read_profile_csv: needs at least 3 rows");
    int n_cells = static_cast<int>(xs.size()) - 1;
    double h = xs.back();
    if (std::abs(xs.front() + h) > 1e-9 * h)
        throw std::invalid_argument("read_profile_csv: domain must be symmetric [-h, h]");
    double dx = 2.0 * h / n_cells;
    for (size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (-h + i * dx)) > 1e-9 * h)
            throw std::invalid_argument("read_profile_csv: nodes must be uniform");
    return ProfileCurve(Grid(h, n_cells), std::move(vs));
}

void write_trajectory_csv(std::ostream& os, const ShootingSolution& sol) {
    os << "x,rho,rho_prime,first_integral_residual\n";
    auto row = [&](double x, double rho, double rp) {
        double res = first_integral_residual(rho, rp, sol.params.c, sol.apex);
        os << format_sig(x) << ',' << format_sig(rho) << ',' << format_sig(rp) << ','
           << format_sig(res) << '\n';
    };
    for (size_t i = sol.samples.size(); i-- > 1;) {
        const TrajectorySample& s = sol.samples[i];
        row(-s.x, s.rho, -s.rho_prime);
    }
    for (const TrajectorySample& s : sol.samples) row(s.x, s.rho, s.rho_prime);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
    os << "c,apex,sup_dist,energy_area,energy_nematic\n";
    for (const SweepEntry& e : entries) {
        if (!e.ok) {
            os << format_sig(e.c) << ",failed,failed,failed,failed\n";
            continue;
        }
        os << format_sig(e.c) << ',' << format_sig(e.apex) << ',' << format_sig(e.sup_dist)
           << ',' << format_sig(e.energy.area) << ',' << format_sig(e.energy.nematic) << '\n';
    }
}

void write_curvature_csv(std::ostream& os, const std::vector<CurvatureSample>& samples) {
    os << "x,K,H\n";
    for (const CurvatureSample& s : samples)
        os << format_sig(s.x) << ',' << format_sig(s.gauss) << ',' << format_sig(s.mean) << '\n';
}

namespace {
std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}
}  // namespace

JsonWriter& JsonWriter::raw_field(const std::string& key, const std::string& json) {
    if (!body_.empty()) body_ += ",\n  ";
    body_ += '"' + json_escape(key) + "\": " + json;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    return raw_field(key, format_sig(value));
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
    return raw_field(key, std::to_string(value));
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
    return raw_field(key, value ? "true" : "false");
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    return raw_field(key, '"' + json_escape(value) + '"');
}

std::string JsonWriter::str() const { return "{\n  " + body_ + "\n}\n"; }

std::string energy_json(const EnergyBreakdown& e) {
    return JsonWriter()
        .field("area", e.area)
        .field("nematic", e.nematic)
        .field("total", e.total)
        .field("c", e.c)
        .str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nemfilm
