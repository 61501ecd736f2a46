#include "relaxshock/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "relaxshock/errors.hpp"

namespace relaxshock {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_le(std::ofstream& out, const std::vector<double>& col) {
  std::vector<unsigned char> bytes(col.size() * 8);
  for (std::size_t n = 0; n < col.size(); ++n) {
    const auto bits = std::bit_cast<std::uint64_t>(col[n]);
    for (int b = 0; b < 8; ++b) bytes[8 * n + b] = static_cast<unsigned char>(bits >> (8 * b));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void write_columns(const std::filesystem::path& path, const std::string& header,
                   const std::string& info, const std::vector<std::vector<double>>& cols) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << header << '\n' << info << '\n';
  for (const auto& c : cols) write_le(out, c);
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace

void write_field_snapshot(const std::filesystem::path& path, const FieldState& s, double X,
                          double Xdot) {
  const Grid& g = s.grid;
  std::vector<std::vector<double>> cols(3 + kFieldCount);
  for (auto& c : cols) c.reserve(g.cells());
  for (std::size_t k = 0; k < g.n3; ++k) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (std::size_t i = 0; i < g.n1; ++i) {
        const auto ii = static_cast<std::ptrdiff_t>(i);
        cols[0].push_back(g.xi1(ii));
        cols[1].push_back(g.xi2(j));
        cols[2].push_back(g.xi3(k));
        const std::size_t c = g.index(ii, j, k);
        for (std::size_t q = 0; q < kFieldCount; ++q) cols[3 + q].push_back(s.f[q][c]);
      }
    }
  }
  std::string header = "xi1 xi2 xi3";
  for (auto name : kFieldNames) header += " " + std::string(name);
  write_columns(path, header, format_double(s.t) + " " + format_double(X) + " " +
                                  format_double(Xdot),
                cols);
}

void write_profile_snapshot(const std::filesystem::path& path, const ProfileTable& p) {
  const ShockData& s = p.shock;
  const GasModel& m = p.model;
  std::ostringstream info;
  info << "gamma=" << format_double(m.gamma) << " mu=" << format_double(m.mu)
       << " lambda=" << format_double(m.lambda) << " tau=" << format_double(m.tau)
       << " v_minus=" << format_double(s.v_minus) << " v_plus=" << format_double(s.v_plus)
       << " u1_minus=" << format_double(s.u1_minus) << " u1_plus=" << format_double(s.u1_plus)
       << " sigma=" << format_double(s.sigma) << " sigma_star=" << format_double(s.sigma_star)
       << " delta=" << format_double(s.delta) << " tail_eps=" << format_double(p.tail_eps)
       << " n=" << p.size();
  write_columns(path, "xi1 v u1 pi11 pi2", info.str(), {p.xi, p.v_s, p.u1_s, p.pi11_s, p.pi2_s});
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  Snapshot snap;
  std::string header;
  std::getline(in, header);
  std::getline(in, snap.info);
  std::istringstream hs(header);
  for (std::string name; hs >> name;) snap.columns.push_back(name);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const std::size_t ncol = snap.columns.size();
  if (ncol == 0 || bytes.size() % (8 * ncol) != 0) {
    throw ConfigError("malformed snapshot " + path.string());
  }
  const std::size_t rows = bytes.size() / (8 * ncol);
  snap.data.assign(ncol, std::vector<double>(rows));
  for (std::size_t c = 0; c < ncol; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::uint64_t bits = 0;
      const unsigned char* b = bytes.data() + 8 * (c * rows + r);
      for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
      snap.data[c][r] = std::bit_cast<double>(bits);
    }
  }
  return snap;
}

}  // namespace relaxshock
