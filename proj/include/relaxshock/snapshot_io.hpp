#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "relaxshock/fields.hpp"
#include "relaxshock/shock_profile.hpp"

namespace relaxshock {

/// Columnar snapshot: a header line naming the columns, a second text line
/// of scalars, then each column as little-endian float64 over physical cells
/// (xi1 fastest).
struct Snapshot {
  std::vector<std::string> columns;
  std::string info;  // second header line, verbatim
  std::vector<std::vector<double>> data;
};

void write_field_snapshot(const std::filesystem::path& path, const FieldState& s, double X,
                          double Xdot);
void write_profile_snapshot(const std::filesystem::path& path, const ProfileTable& p);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Round-trippable decimal rendering (17 significant digits).
std::string format_double(double x);

}  // namespace relaxshock
