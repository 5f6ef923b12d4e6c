#pragma once
// File formats for the CLI: JSON state files with separate real/imaginary
// arrays, and CSV emission for scans and dynamics sweeps. Numbers in CSV are
// printed as plain decimals with 12 significant digits so identical inputs
// produce byte-identical files.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entgeo/boundary.hpp"
#include "entgeo/matlib.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo::io {

/// Thrown for filesystem-level failures (CLI exit code 1); content problems
/// throw std::invalid_argument (exit code 2).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kScanCsvHeader = "q,negativity,random_robustness,w_phi,w_psi,p_c";
inline constexpr std::string_view kEvolveCsvHeader = "t,q,negativity,f_psi_plus,f_phi_plus";

/// Plain-decimal rendering with `digits` significant digits, no exponent
/// notation, trailing zeros trimmed.
inline std::string format_significant(double x, int digits = 12) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);

  const std::string s(buf);
  const auto epos = s.find('e');
  std::string mantissa = s.substr(0, epos);
  const int exponent = std::stoi(s.substr(epos + 1));

  bool negative = false;
  if (mantissa.front() == '-') {
    negative = true;
    mantissa.erase(0, 1);
  }
  mantissa.erase(1, 1);  // drop the decimal point: bare digit string
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();

  std::string out;
  if (exponent >= 0) {
    const auto e = static_cast<std::size_t>(exponent);
    if (e + 1 >= mantissa.size()) {
      out = mantissa + std::string(e + 1 - mantissa.size(), '0');
    } else {
      out = mantissa.substr(0, e + 1) + "." + mantissa.substr(e + 1);
    }
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-exponent) - 1, '0') + mantissa;
  }
  if (out.find_first_not_of("0.") == std::string::npos) return "0";
  return negative ? "-" + out : out;
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<double>> re(n, std::vector<double>(n));
  std::vector<std::vector<double>> im(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      re[i][j] = m.at(i, j).real();
      im[i][j] = m.at(i, j).imag();
    }
  return nlohmann::json{{"re", re}, {"im", im}};
}

/// Parses {"dims":[...], "re":[[...]], "im":[[...]]} into a validated state.
inline DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("state file: expected object with dims, re, im");

  std::vector<std::size_t> dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw std::invalid_argument("state file: dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  std::size_t dim = 1;
  for (std::size_t d : dims) dim *= d;
  if (dims.empty() || dim < 1) throw std::invalid_argument("state file: empty dims");

  const auto parse_part = [dim](const nlohmann::json& part, const char* name) {
    if (!part.is_array() || part.size() != dim)
      throw std::invalid_argument(std::string("state file: ") + name + " must be a " +
                                  std::to_string(dim) + "x" + std::to_string(dim) + " array");
    std::vector<std::vector<double>> rows;
    for (const auto& row : part) {
      if (!row.is_array() || row.size() != dim)
        throw std::invalid_argument(std::string("state file: ragged row in ") + name);
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw std::invalid_argument(std::string("state file: non-numeric entry in ") + name);
        const double x = v.get<double>();
        if (!std::isfinite(x))
          throw std::invalid_argument(std::string("state file: non-finite entry in ") + name);
        r.push_back(x);
      }
      rows.push_back(std::move(r));
    }
    return rows;
  };

  const auto re = parse_part(j.at("re"), "re");
  const auto im = parse_part(j.at("im"), "im");

  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) m.at(i, k) = Complex(re[i][k], im[i][k]);
  return DensityMatrix(std::move(m), dims);  // validation may throw invalid_argument
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json j = matrix_to_json(rho.matrix());
  j["dims"] = rho.dims();
  return j;
}

inline std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::string out{kScanCsvHeader};
  out += '\n';
  for (const ScanRecord& r : records) {
    out += format_significant(r.q) + "," + format_significant(r.negativity) + "," +
           format_significant(r.robustness) + "," + format_significant(r.w_phi) + "," +
           format_significant(r.w_psi) + "," + format_significant(r.p_c) + "\n";
  }
  return out;
}

inline nlohmann::json scan_to_json(const std::vector<ScanRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ScanRecord& r : records)
    arr.push_back({{"q", r.q},
                   {"negativity", r.negativity},
                   {"random_robustness", r.robustness},
                   {"w_phi", r.w_phi},
                   {"w_psi", r.w_psi},
                   {"p_c", r.p_c}});
  return arr;
}

/// One row of a dynamics sweep.
struct EvolveRecord {
  double t;
  double q;
  double negativity;
  double f_psi_plus;
  double f_phi_plus;
};

inline std::string evolve_to_csv(const std::vector<EvolveRecord>& records) {
  std::string out{kEvolveCsvHeader};
  out += '\n';
  for (const EvolveRecord& r : records) {
    out += format_significant(r.t) + "," + format_significant(r.q) + "," +
           format_significant(r.negativity) + "," + format_significant(r.f_psi_plus) + "," +
           format_significant(r.f_phi_plus) + "\n";
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return os.str();
}

/// Write-temp-rename so readers never observe a partial file.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw IoError("write failure: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("cannot rename " + tmp + " to " + path);
}

}  // namespace entgeo::io
