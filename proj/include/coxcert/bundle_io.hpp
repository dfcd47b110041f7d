#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxcert/pipeline.hpp"

namespace coxcert {

// Bundle file is malformed (JSON error, missing key, bad shape). Maps to the
// usage/format exit code, unlike a certificate failure.
struct BundleFormatError : std::runtime_error {
  explicit BundleFormatError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

using Json = nlohmann::ordered_json;

// All big integers travel as decimal strings: entries grow quadratically in
// the translation power and must never be squeezed through 64-bit numbers.
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_string(x));
  return out;
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw BundleFormatError(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw BundleFormatError(where + ": rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw BundleFormatError(where + ": ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_string()) throw BundleFormatError(where + ": entries must be decimal strings");
      try {
        m.at(i, c) = rational_from_string(j[i][c].get<std::string>());
      } catch (const std::exception& e) {
        throw BundleFormatError(where + "[" + std::to_string(i) + "][" + std::to_string(c) +
                                "]: " + e.what());
      }
    }
  }
  return m;
}

inline Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw BundleFormatError(where + ": expected a non-empty array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw BundleFormatError(where + ": entries must be decimal strings");
    try {
      v.push_back(rational_from_string(j[i].get<std::string>()));
    } catch (const std::exception& e) {
      throw BundleFormatError(where + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return v;
}

inline std::vector<std::string> split_word(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline std::string serialize_bundle(const CertificateBundle& b) {
  using detail::Json;
  Json j;
  j["schema"] = b.schema;
  j["n"] = b.n;
  j["variant"] = b.variant;
  j["form"] = Json{{"dim", b.form.rows()}, {"entries", detail::matrix_to_json(b.form)}};
  Json gens = Json::array();
  for (const auto& g : b.generators)
    gens.push_back(Json{{"name", g.name},
                        {"word", word_to_string(g.word)},
                        {"matrix", detail::matrix_to_json(g.matrix)}});
  j["generators"] = std::move(gens);
  if (b.translation)
    j["translation"] = Json{{"p", detail::vec_to_json(b.translation->p)},
                            {"v", detail::vec_to_json(b.translation->v)},
                            {"k", b.translation->k},
                            {"matrix", detail::matrix_to_json(b.translation->matrix)}};
  else
    j["translation"] = nullptr;
  Json certs = Json::array();
  for (const auto& c : b.certificates)
    certs.push_back(Json{{"id", c.id}, {"status", c.pass ? "pass" : "fail"}, {"evidence", c.evidence}});
  j["certificates"] = std::move(certs);
  j["deviations"] = b.deviations;
  return j.dump(2) + "\n";
}

inline CertificateBundle parse_bundle(const std::string& text) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BundleFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw BundleFormatError("top level: expected an object");
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw BundleFormatError(std::string("missing key '") + key + "'");
    return j[key];
  };

  CertificateBundle b;
  if (!need("schema").is_number_integer() || j["schema"].get<int>() != 1)
    throw BundleFormatError("schema: expected the integer 1");
  b.schema = 1;
  if (!need("n").is_number_unsigned()) throw BundleFormatError("n: expected a nonnegative integer");
  b.n = j["n"].get<std::size_t>();
  if (!need("variant").is_string()) throw BundleFormatError("variant: expected a string");
  b.variant = j["variant"].get<std::string>();
  if (b.variant != "polygon-2n" && b.variant != "polygon-2n-2" && b.variant != "even-prime" &&
      b.variant != "odd-projected")
    throw BundleFormatError("variant: unknown value '" + b.variant + "'");

  const Json& form = need("form");
  if (!form.is_object() || !form.contains("dim") || !form.contains("entries"))
    throw BundleFormatError("form: expected {dim, entries}");
  b.form = detail::matrix_from_json(form["entries"], "form.entries");
  if (!form["dim"].is_number_unsigned() || form["dim"].get<std::size_t>() != b.form.rows() ||
      b.form.rows() != b.form.cols())
    throw BundleFormatError("form.dim: inconsistent with entries");

  const Json& gens = need("generators");
  if (!gens.is_array()) throw BundleFormatError("generators: expected an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Json& g = gens[i];
    const std::string where = "generators[" + std::to_string(i) + "]";
    if (!g.is_object() || !g.contains("name") || !g.contains("word") || !g.contains("matrix"))
      throw BundleFormatError(where + ": expected {name, word, matrix}");
    if (!g["name"].is_string() || !g["word"].is_string())
      throw BundleFormatError(where + ": name and word must be strings");
    b.generators.push_back(GroupElement{g["name"].get<std::string>(),
                                        detail::split_word(g["word"].get<std::string>()),
                                        detail::matrix_from_json(g["matrix"], where + ".matrix")});
  }

  const Json& tr = need("translation");
  if (!tr.is_null()) {
    if (!tr.is_object() || !tr.contains("p") || !tr.contains("v") || !tr.contains("k") ||
        !tr.contains("matrix"))
      throw BundleFormatError("translation: expected null or {p, v, k, matrix}");
    if (!tr["k"].is_number_integer()) throw BundleFormatError("translation.k: expected an integer");
    b.translation = TranslationRecord{detail::vec_from_json(tr["p"], "translation.p"),
                                      detail::vec_from_json(tr["v"], "translation.v"),
                                      tr["k"].get<long>(),
                                      detail::matrix_from_json(tr["matrix"], "translation.matrix")};
  }

  const Json& certs = need("certificates");
  if (!certs.is_array()) throw BundleFormatError("certificates: expected an array");
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const Json& c = certs[i];
    const std::string where = "certificates[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("id") || !c.contains("status") || !c.contains("evidence"))
      throw BundleFormatError(where + ": expected {id, status, evidence}");
    const std::string status = c["status"].get<std::string>();
    if (status != "pass" && status != "fail")
      throw BundleFormatError(where + ".status: expected 'pass' or 'fail'");
    b.certificates.push_back(
        CertificateRecord{c["id"].get<std::string>(), status == "pass", c["evidence"].get<std::string>()});
  }

  const Json& dev = need("deviations");
  if (!dev.is_array()) throw BundleFormatError("deviations: expected an array of strings");
  for (const auto& s : dev) {
    if (!s.is_string()) throw BundleFormatError("deviations: expected an array of strings");
    b.deviations.push_back(s.get<std::string>());
  }
  return b;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleFormatError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Temp file + rename, so a crashed run never leaves a half-written bundle.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BundleFormatError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw BundleFormatError("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace coxcert
