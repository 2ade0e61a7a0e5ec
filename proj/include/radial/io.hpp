#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radial/problem.hpp"

namespace radial {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// LP JSON: {"A": [[...]], "b": [...], "c": [...], "e": [...]?, "diam": x}
// ---------------------------------------------------------------------------

namespace detail {
inline LpInstance lp_from_json_impl(const json& j);
}

/// Translates nlohmann type errors into ParseError so callers see one
/// failure vocabulary.
inline LpInstance lp_from_json(const json& j) {
  try {
    return detail::lp_from_json_impl(j);
  } catch (const json::exception& err) {
    throw ParseError(std::string("invalid LP JSON: ") + err.what());
  }
}

namespace detail {
inline LpInstance lp_from_json_impl(const json& j) {
  if (!j.is_object()) throw ParseError("LP JSON root must be an object");
  for (const char* key : {"A", "b", "c"})
    if (!j.contains(key)) throw ParseError(std::string("LP JSON missing required key \"") + key + "\"");

  const auto& rows = j.at("A");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"A\" must be a nonempty array of rows");
  const size_t n = rows.front().size();
  MatrixXd a(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("\"A\" rows must have equal length");
    for (size_t k = 0; k < n; ++k) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
  }

  const auto vec = [&](const char* key) {
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    VectorXd v(arr.size());
    for (size_t k = 0; k < arr.size(); ++k) v[static_cast<Eigen::Index>(k)] = arr[k].get<double>();
    return v;
  };

  LpInstance lp;
  lp.a = std::move(a);
  lp.b = vec("b");
  lp.c = vec("c");
  lp.e = j.contains("e") ? vec("e") : VectorXd::Ones(static_cast<Eigen::Index>(n));
  lp.diam = j.value("diam", 0.0);
  return lp;
}
}  // namespace detail

inline LpInstance parse_lp_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  return lp_from_json(j);
}

inline json lp_to_json(const LpInstance& lp) {
  json j;
  j["A"] = json::array();
  for (int i = 0; i < lp.m(); ++i) {
    json row = json::array();
    for (int k = 0; k < lp.n(); ++k) row.push_back(lp.a(i, k));
    j["A"].push_back(std::move(row));
  }
  j["b"] = std::vector<double>(lp.b.begin(), lp.b.end());
  j["c"] = std::vector<double>(lp.c.begin(), lp.c.end());
  j["e"] = std::vector<double>(lp.e.begin(), lp.e.end());
  j["diam"] = lp.diam;
  return j;
}

inline void write_lp_json(const LpInstance& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << lp_to_json(lp).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// SDPA sparse format (.dat-s). Field order: m, nblocks, block sizes, the
// vector b, then entry quintuples "matno blkno i j value" with 1-based upper
// triangle indices. Matrix slot 0 holds the objective C directly and the
// vector line holds b; block-diagonal structure is flattened into one dense
// symmetric matrix, negative block sizes marking diagonal blocks.
// A sidecar JSON next to the file ("<file>.json") may supply "diam" and an
// optional dense "E".
// ---------------------------------------------------------------------------

namespace detail {
inline bool sdpa_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;
    return ch == '*' || ch == '"';
  }
  return true;  // blank lines are skipped like comments
}

// The b line and block-size line may carry {}, (), and commas.
inline std::string strip_punctuation(std::string line) {
  for (char& ch : line)
    if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
  return line;
}

struct SdpaLineReader {
  std::istream& in;
  long line_number = 0;

  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_number;
      if (!sdpa_comment(line)) return line;
    }
    return std::nullopt;
  }

  std::string require(const char* what) {
    auto line = next();
    if (!line) throw ParseError(std::string("unexpected end of file, expected ") + what, line_number);
    return *line;
  }
};
}  // namespace detail

struct SdpaData {
  std::vector<SymMatrix> a;
  VectorXd b;
  SymMatrix c;
};

inline SdpaData parse_sdpa(std::istream& in) {
  detail::SdpaLineReader reader{in};

  const auto read_int = [&](const std::string& line, const char* what) {
    std::istringstream ss(line);
    long v = 0;
    if (!(ss >> v)) throw ParseError(std::string("cannot read ") + what, reader.line_number);
    return v;
  };

  const long m = read_int(reader.require("the number of constraint matrices"), "the number of constraint matrices");
  if (m < 1) throw ParseError("number of constraint matrices must be positive", reader.line_number);
  const long nblocks = read_int(reader.require("the number of blocks"), "the number of blocks");
  if (nblocks < 1) throw ParseError("number of blocks must be positive", reader.line_number);

  std::vector<long> block_sizes;
  {
    std::istringstream ss(detail::strip_punctuation(reader.require("the block sizes")));
    long s = 0;
    while (ss >> s) block_sizes.push_back(s);
    if (static_cast<long>(block_sizes.size()) != nblocks)
      throw ParseError("block size line does not list every block", reader.line_number);
  }
  std::vector<long> offsets(block_sizes.size());
  long n = 0;
  for (size_t i = 0; i < block_sizes.size(); ++i) {
    if (block_sizes[i] == 0) throw ParseError("zero block size", reader.line_number);
    offsets[i] = n;
    n += std::abs(block_sizes[i]);
  }

  VectorXd b(m);
  {
    std::istringstream ss(detail::strip_punctuation(reader.require("the right-hand side vector")));
    for (long i = 0; i < m; ++i)
      if (!(ss >> b[i])) throw ParseError("right-hand side vector is too short", reader.line_number);
  }

  std::vector<MatrixXd> mats(static_cast<size_t>(m) + 1, MatrixXd::Zero(n, n));
  while (auto line = reader.next()) {
    std::istringstream ss(detail::strip_punctuation(*line));
    long matno = 0, blkno = 0, i = 0, j = 0;
    double value = 0.0;
    if (!(ss >> matno >> blkno >> i >> j >> value))
      throw ParseError("entry line must read: matno blkno i j value", reader.line_number);
    if (matno < 0 || matno > m) throw ParseError("matrix number out of range", reader.line_number);
    if (blkno < 1 || blkno > nblocks) throw ParseError("block number out of range", reader.line_number);
    const long size = std::abs(block_sizes[static_cast<size_t>(blkno - 1)]);
    if (i < 1 || j < 1 || i > size || j > size) throw ParseError("entry indices out of range", reader.line_number);
    if (block_sizes[static_cast<size_t>(blkno - 1)] < 0 && i != j)
      throw ParseError("diagonal block admits only diagonal entries", reader.line_number);
    const long r = offsets[static_cast<size_t>(blkno - 1)] + i - 1;
    const long c = offsets[static_cast<size_t>(blkno - 1)] + j - 1;
    mats[static_cast<size_t>(matno)](r, c) = value;
    mats[static_cast<size_t>(matno)](c, r) = value;
  }

  SdpaData data;
  data.c = SymMatrix(mats[0]);
  data.a.reserve(static_cast<size_t>(m));
  for (long k = 1; k <= m; ++k) data.a.emplace_back(mats[static_cast<size_t>(k)]);
  data.b = std::move(b);
  return data;
}

inline SdpaData parse_sdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_sdpa(in);
}

/// Reads a .dat-s file plus its sidecar "<path>.json" (if present) carrying
/// diam and an optional dense anchor E.
inline SdpInstance load_sdp_instance(const std::string& path) {
  SdpaData data = parse_sdpa(path);
  SdpInstance sdp(std::move(data.a), std::move(data.b), std::move(data.c), 0.0);

  const std::string sidecar = path + ".json";
  if (std::filesystem::exists(sidecar)) {
    std::ifstream in(sidecar);
    try {
      json j;
      in >> j;
      sdp.diam = j.value("diam", 0.0);
      if (j.contains("E")) {
        const auto& rows = j.at("E");
        const int n = sdp.n();
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
          throw ParseError("sidecar E must be a dense " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        MatrixXd e(n, n);
        for (int r = 0; r < n; ++r) {
          if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != n)
            throw ParseError("sidecar E must be square");
          for (int c = 0; c < n; ++c) e(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>();
        }
        sdp.e = SymMatrix::symmetrize(e);
      }
    } catch (const json::exception& err) {
      throw ParseError(std::string("invalid sidecar JSON: ") + err.what());
    }
  }
  return sdp;
}

inline void write_sdpa(const SdpInstance& sdp, const std::string& path, bool with_sidecar = true) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  out << sdp.m() << "\n" << 1 << "\n" << sdp.n() << "\n";
  for (int i = 0; i < sdp.m(); ++i) out << (i ? " " : "") << sdp.b[i];
  out << "\n";
  const auto emit = [&](int matno, const MatrixXd& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i; j < m.cols(); ++j)
        if (m(i, j) != 0.0) out << matno << " 1 " << i + 1 << " " << j + 1 << " " << m(i, j) << "\n";
  };
  emit(0, sdp.c.mat());
  for (int k = 0; k < sdp.m(); ++k) emit(k + 1, sdp.a[static_cast<size_t>(k)].mat());

  if (with_sidecar) {
    json j;
    j["diam"] = sdp.diam;
    const int n = sdp.n();
    if (max_abs(sdp.e.mat() - MatrixXd::Identity(n, n)) != 0.0) {
      json rows = json::array();
      for (int r = 0; r < n; ++r) {
        json row = json::array();
        for (int c = 0; c < n; ++c) row.push_back(sdp.e(r, c));
        rows.push_back(std::move(row));
      }
      j["E"] = std::move(rows);
    }
    std::ofstream side(path + ".json");
    if (!side) throw Error("cannot write " + path + ".json");
    side << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Input binding
// ---------------------------------------------------------------------------

/// FNV-1a over raw bytes; reports carry it so traces bind to their inputs.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string input_hash_hex(const std::string& path) {
  std::string bytes = read_file_bytes(path);
  const std::string sidecar = path + ".json";
  if (std::filesystem::exists(sidecar)) bytes += read_file_bytes(sidecar);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

}  // namespace radial
