#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nemfilm/elsolver.hpp"
#include "nemfilm/energy.hpp"
#include "nemfilm/geometry.hpp"
#include "nemfilm/minimizer.hpp"
#include "nemfilm/profile.hpp"

namespace nemfilm {

// All file output goes through these helpers: numbers at 12 significant
// digits, '.' decimal separator, '\n' line endings. Identical inputs give
// byte-identical files.

std::string format_sig(double v);  // %.12g

void write_profile_csv(std::ostream& os, const ProfileCurve& p);  // header x,rho
ProfileCurve read_profile_csv(std::istream& is);

// header x,rho,rho_prime,first_integral_residual; one row per trajectory
// sample of the even extension
void write_trajectory_csv(std::ostream& os, const ShootingSolution& sol);

// header c,apex,sup_dist,energy_area,energy_nematic
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);

// header x,K,H
void write_curvature_csv(std::ostream& os, const std::vector<CurvatureSample>& samples);

// Minimal ordered JSON writer (insertion order preserved, numbers via
// format_sig).
class JsonWriter {
  public:
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, int value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, const char* value) {
        return field(key, std::string(value));
    }
    JsonWriter& raw_field(const std::string& key, const std::string& json);
    std::string str() const;

  private:
    std::string body_;
};

std::string energy_json(const EnergyBreakdown& e);  // {area, nematic, total, c}

// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace nemfilm
