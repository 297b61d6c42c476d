#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "patchbound/config.hpp"
#include "patchbound/errors.hpp"
#include "patchbound/harness.hpp"

namespace patchbound {

namespace {

void put(std::ostream& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out << buf;
}

}  // namespace

void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    put(out, r.param);
    out << ',' << r.n_free << ',';
    for (double v : {r.lambda_exact, r.lambda_new, r.lambda_gm, r.lambda_khx, r.omega_min,
                     r.k_min}) {
      put(out, v);
      out << ',';
    }
    out << r.m_const << ',';
    put(out, r.h_const);
    out << ',';
    put(out, r.seconds);
    out << '\n';
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(out, rows);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("CSV header mismatch");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 11) throw IoError("CSV row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    try {
      r.param = parse_double(f[0]);
      r.n_free = parse_long(f[1]);
      r.lambda_exact = parse_double(f[2]);
      r.lambda_new = parse_double(f[3]);
      r.lambda_gm = parse_double(f[4]);
      r.lambda_khx = parse_double(f[5]);
      r.omega_min = parse_double(f[6]);
      r.k_min = parse_double(f[7]);
      r.m_const = parse_int(f[8]);
      r.h_const = parse_double(f[9]);
      r.seconds = parse_double(f[10]);
    } catch (const InvalidArgument& e) {
      throw IoError(std::string("CSV row: ") + e.what());
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace patchbound
